#include "symfix/serialize.hpp"

#include <stdexcept>

namespace symfix::exalg {

Json multivector_to_json(const MultiVector& v) {
  Json terms = Json::array();
  for (const auto& [m, c] : v.terms()) {
    Json t;
    t["idx"] = tuple_indices(m);
    t["num"] = numerator_string(c);
    t["den"] = denominator_string(c);
    terms.push_back(std::move(t));
  }
  Json j;
  j["deg"] = v.degree();
  j["terms"] = std::move(terms);
  return j;
}

MultiVector multivector_from_json(const Json& j, int n) {
  if (!j.contains("deg") || !j.contains("terms")) {
    throw std::invalid_argument("multivector_from_json: need fields 'deg' and 'terms'");
  }
  MultiVector v(n, j.at("deg").get<int>());
  for (const auto& t : j.at("terms")) {
    auto indices = t.at("idx").get<std::vector<int>>();
    Scalar c = scalar_from_string(t.at("num").get<std::string>() + "/" +
                                  t.at("den").get<std::string>());
    v.add_term(mask_from_indices(indices, n), c);
  }
  return v;
}

Json scalar_to_json(const Scalar& s) { return Json(scalar_to_string(s)); }

Scalar scalar_from_json(const Json& j) {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  return scalar_from_string(j.get<std::string>());
}

Json qmat_to_json(const QMat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

QMat qmat_from_json(const Json& j) {
  std::vector<std::vector<Scalar>> rows;
  for (const auto& row : j) {
    std::vector<Scalar> r;
    for (const auto& entry : row) r.push_back(scalar_from_json(entry));
    rows.push_back(std::move(r));
  }
  return QMat::from_rows(rows);
}

}  // namespace symfix::exalg
