#include "symfix/instance.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace symfix::cli {

using exalg::QMat;

namespace {

epw::NodeSearchConfig search_from_json(const Json& j) {
  epw::NodeSearchConfig cfg;
  cfg.threads = 4;  // fixed default so reports do not depend on the machine
  if (j.is_null()) return cfg;
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("starts")) cfg.starts = j.at("starts").get<int>();
  if (j.contains("max_iterations")) cfg.max_iterations = j.at("max_iterations").get<int>();
  if (j.contains("residual_tol")) cfg.residual_tol = j.at("residual_tol").get<double>();
  if (j.contains("dedupe_tol")) cfg.dedupe_tol = j.at("dedupe_tol").get<double>();
  if (j.contains("max_charts")) cfg.max_charts = j.at("max_charts").get<int>();
  if (j.contains("branch_samples")) cfg.branch_samples = j.at("branch_samples").get<int>();
  if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
  return cfg;
}

Json search_to_json(const epw::NodeSearchConfig& cfg) {
  Json j;
  j["seed"] = cfg.seed;
  j["starts"] = cfg.starts;
  j["max_iterations"] = cfg.max_iterations;
  j["residual_tol"] = cfg.residual_tol;
  j["dedupe_tol"] = cfg.dedupe_tol;
  j["max_charts"] = cfg.max_charts;
  j["branch_samples"] = cfg.branch_samples;
  j["threads"] = cfg.threads;
  return j;
}

}  // namespace

Instance instance_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("instance: document must be an object");
  if (j.value("format", "") != std::string("symfix-instance"))
    throw std::invalid_argument("instance: field 'format' must be \"symfix-instance\"");
  if (j.value("version", 0) != 1)
    throw std::invalid_argument("instance: unsupported version (expected 1)");
  if (!j.contains("u") || !j.contains("phi"))
    throw std::invalid_argument("instance: fields 'u' and 'phi' are required");

  const Json& ju = j.at("u");
  std::string kind = ju.value("kind", "");
  std::optional<epw::SelfAdjointOp> u;
  if (kind == "spectral") {
    std::vector<Scalar> values;
    for (const auto& e : ju.at("eigenvalues")) values.push_back(exalg::scalar_from_json(e));
    QMat columns = exalg::qmat_from_json(ju.at("eigenvector_columns"));
    u = epw::SelfAdjointOp::from_spectral(values, columns);
  } else if (kind == "matrix") {
    u = epw::SelfAdjointOp::from_matrix(exalg::qmat_from_json(ju.at("matrix")));
  } else {
    throw std::invalid_argument("instance: u.kind must be \"spectral\" or \"matrix\"");
  }

  epw::SymmetricPhi phi = epw::SymmetricPhi::from_matrix(exalg::qmat_from_json(j.at("phi")));
  epw::NodeSearchConfig search =
      search_from_json(j.contains("node_search") ? j.at("node_search") : Json());
  return Instance{std::move(*u), std::move(phi), search};
}

Json instance_to_json(const Instance& inst) {
  Json j;
  j["format"] = "symfix-instance";
  j["version"] = 1;
  Json ju;
  const auto& ed = inst.u.eigen_data();
  if (ed.split_over_q && ed.components.size() == 6) {
    ju["kind"] = "spectral";
    Json values = Json::array();
    QMat columns(6, 6);
    for (int k = 0; k < 6; ++k) {
      const auto& comp = ed.components[static_cast<size_t>(k)];
      values.push_back(exalg::scalar_to_json(comp.value));
      std::vector<Scalar> col = epw::wedge2_to_coords(comp.space.at(0));
      for (int r = 0; r < 6; ++r) columns.at(r, k) = col[static_cast<size_t>(r)];
    }
    ju["eigenvalues"] = std::move(values);
    ju["eigenvector_columns"] = exalg::qmat_to_json(columns);
  } else {
    ju["kind"] = "matrix";
    ju["matrix"] = exalg::qmat_to_json(inst.u.matrix());
  }
  j["u"] = std::move(ju);
  j["phi"] = exalg::qmat_to_json(inst.phi.matrix());
  j["node_search"] = search_to_json(inst.search);
  return j;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("instance: cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::invalid_argument("instance: '" + path + "' is not valid JSON: " + e.what());
  }
  try {
    return instance_from_json(j);
  } catch (const std::exception& e) {
    throw std::invalid_argument("instance: '" + path + "': " + e.what());
  }
}

Instance bundled_instance() {
  epw::InvariantLagrangian ref = epw::reference_instance();
  epw::NodeSearchConfig search;
  search.threads = 4;
  return Instance{ref.u, ref.phi, search};
}

epw::InvariantLagrangian lagrangian_of(const Instance& inst) {
  return epw::assemble(inst.u, inst.phi);
}

}  // namespace symfix::cli
