#include "symfix/multivector.hpp"

#include <bit>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace symfix::exalg {

int tuple_degree(Mask m) { return std::popcount(m); }

std::vector<int> tuple_indices(Mask m) {
  std::vector<int> out;
  for (int i = 1; m != 0; ++i, m >>= 1) {
    if (m & 1u) out.push_back(i);
  }
  return out;
}

Mask mask_from_indices(const std::vector<int>& indices, int n) {
  Mask m = 0;
  int prev = 0;
  for (int i : indices) {
    if (i <= prev) throw std::invalid_argument("mask_from_indices: indices must be strictly increasing");
    if (i < 1 || i > n) throw std::invalid_argument("mask_from_indices: index out of range 1..n");
    m |= Mask{1} << (i - 1);
    prev = i;
  }
  return m;
}

bool tuple_lex_less(Mask a, Mask b) {
  while (a != 0 && b != 0) {
    Mask la = a & (~a + 1);
    Mask lb = b & (~b + 1);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

int wedge_sign(Mask a, Mask b) {
  if ((a & b) != 0) return 0;
  int inversions = 0;
  for (Mask t = b; t != 0; t &= t - 1) {
    Mask low = t & (~t + 1);
    // indices of a strictly above this element of b
    inversions += std::popcount(a & ~(low | (low - 1)));
  }
  return (inversions & 1) ? -1 : 1;
}

const std::vector<Mask>& degree_basis(int n, int k) {
  static std::map<std::pair<int, int>, std::vector<Mask>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<Mask> basis;
  if (n >= 0 && n <= kMaxAmbient && k >= 0) {
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
      if (std::popcount(m) == k) basis.push_back(m);
    }
    std::sort(basis.begin(), basis.end(), tuple_lex_less);
  }
  return cache.emplace(key, std::move(basis)).first->second;
}

MultiVector::MultiVector(int n, int degree) : n_(n), degree_(degree) {
  if (n < 0 || n > kMaxAmbient) throw std::invalid_argument("MultiVector: ambient dimension out of range");
  if (degree < 0 || degree > n) throw std::invalid_argument("MultiVector: degree outside 0..n");
}

MultiVector MultiVector::basis(int n, std::initializer_list<int> indices) {
  return basis(n, std::vector<int>(indices));
}

MultiVector MultiVector::basis(int n, const std::vector<int>& indices) {
  MultiVector v(n, static_cast<int>(indices.size()));
  v.terms_.emplace(mask_from_indices(indices, n), Scalar(1));
  return v;
}

MultiVector MultiVector::from_mask(int n, int degree, Mask m) {
  if (tuple_degree(m) != degree) throw std::invalid_argument("from_mask: degree mismatch");
  MultiVector v(n, degree);
  if (m >= (Mask{1} << n)) throw std::invalid_argument("from_mask: index out of range");
  v.terms_.emplace(m, Scalar(1));
  return v;
}

Scalar MultiVector::coefficient(Mask m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void MultiVector::add_term(Mask m, const Scalar& c) {
  if (c == 0) return;
  if (tuple_degree(m) != degree_) throw std::invalid_argument("add_term: tuple degree mismatch");
  if (m >= (Mask{1} << n_)) throw std::invalid_argument("add_term: index out of range");
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::vector<Scalar> MultiVector::coordinates() const {
  const auto& basis = degree_basis(n_, degree_);
  std::vector<Scalar> coords(basis.size(), Scalar(0));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto it = terms_.find(basis[i]);
    if (it != terms_.end()) coords[i] = it->second;
  }
  return coords;
}

MultiVector MultiVector::from_coordinates(int n, int degree, const std::vector<Scalar>& coords) {
  const auto& basis = degree_basis(n, degree);
  if (coords.size() != basis.size()) throw std::invalid_argument("from_coordinates: length mismatch");
  MultiVector v(n, degree);
  for (std::size_t i = 0; i < basis.size(); ++i) v.add_term(basis[i], coords[i]);
  return v;
}

MultiVector& MultiVector::operator+=(const MultiVector& rhs) {
  if (rhs.n_ != n_ || rhs.degree_ != degree_) throw std::invalid_argument("MultiVector +: shape mismatch");
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

MultiVector& MultiVector::operator-=(const MultiVector& rhs) {
  if (rhs.n_ != n_ || rhs.degree_ != degree_) throw std::invalid_argument("MultiVector -: shape mismatch");
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

MultiVector& MultiVector::operator*=(const Scalar& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

MultiVector MultiVector::operator-() const {
  MultiVector out(*this);
  for (auto& [m, v] : out.terms_) v = -v;
  return out;
}

bool MultiVector::operator==(const MultiVector& rhs) const {
  return n_ == rhs.n_ && degree_ == rhs.degree_ && terms_ == rhs.terms_;
}

std::string MultiVector::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << scalar_to_string(c) << "*e";
    for (int i : tuple_indices(m)) os << i;
  }
  return os.str();
}

MultiVector wedge(const MultiVector& a, const MultiVector& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("wedge: ambient mismatch");
  if (a.degree() + b.degree() > a.ambient()) {
    throw std::invalid_argument("wedge: degree overflow, deg a + deg b > n");
  }
  MultiVector out(a.ambient(), a.degree() + b.degree());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      int sign = wedge_sign(ma, mb);
      if (sign == 0) continue;
      Scalar term = ca * cb;
      out.add_term(ma | mb, sign > 0 ? term : Scalar(-term));
    }
  }
  return out;
}

Scalar symplectic_form(const MultiVector& a, const MultiVector& b) {
  if (a.ambient() != 6 || b.ambient() != 6) {
    throw std::invalid_argument("symplectic_form: defined on ∧³V with dim V = 6");
  }
  if (a.degree() != 3 || b.degree() != 3) {
    throw std::invalid_argument("symplectic_form: arguments must have degree 3");
  }
  const Mask volume = (Mask{1} << 6) - 1;
  Scalar value(0);
  for (const auto& [ma, ca] : a.terms()) {
    Mask complement = volume & ~ma;
    int sign = wedge_sign(ma, complement);
    auto it = b.terms().find(complement);
    if (it == b.terms().end()) continue;
    Scalar term = ca * it->second;
    value += sign > 0 ? term : Scalar(-term);
  }
  return value;
}

MultiVector contract_dual(Mask s, const MultiVector& a) {
  int j = tuple_degree(s);
  if (j > a.degree()) throw std::invalid_argument("contract_dual: dual degree exceeds argument degree");
  MultiVector out(a.ambient(), a.degree() - j);
  for (const auto& [m, c] : a.terms()) {
    if ((m & s) != s) continue;
    Mask rest = m & ~s;
    int sign = wedge_sign(s, rest);
    out.add_term(rest, sign > 0 ? c : Scalar(-c));
  }
  return out;
}

}  // namespace symfix::exalg
