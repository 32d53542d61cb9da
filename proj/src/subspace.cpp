#include "symfix/subspace.hpp"

#include <stdexcept>

namespace symfix::exalg {

Subspace::Subspace(int n, int degree) : n_(n), degree_(degree) {
  if (n < 0 || n > kMaxAmbient || degree < 0) throw std::invalid_argument("Subspace: bad shape");
}

Subspace Subspace::span(int n, int degree, const std::vector<MultiVector>& generators) {
  for (const auto& g : generators) {
    if (g.ambient() != n || g.degree() != degree) {
      throw std::invalid_argument("Subspace::span: generator shape mismatch");
    }
  }
  QMat m(static_cast<int>(generators.size()), static_cast<int>(degree_basis(n, degree).size()));
  for (int i = 0; i < m.rows(); ++i) {
    auto coords = generators[i].coordinates();
    for (int j = 0; j < m.cols(); ++j) m.at(i, j) = coords[j];
  }
  int rank = rref_in_place(m);
  Subspace s(n, degree);
  for (int i = 0; i < rank; ++i) {
    std::vector<Scalar> coords(m.cols());
    for (int j = 0; j < m.cols(); ++j) coords[j] = m.at(i, j);
    s.basis_.push_back(MultiVector::from_coordinates(n, degree, coords));
  }
  return s;
}

Subspace Subspace::span(const std::vector<MultiVector>& generators) {
  if (generators.empty()) throw std::invalid_argument("Subspace::span: empty generating set needs explicit shape");
  return span(generators[0].ambient(), generators[0].degree(), generators);
}

Subspace Subspace::full(int n, int degree) {
  std::vector<MultiVector> gens;
  for (Mask m : degree_basis(n, degree)) gens.push_back(MultiVector::from_mask(n, degree, m));
  return span(n, degree, gens);
}

bool Subspace::contains(const MultiVector& v) const {
  return coordinates_of(v).has_value();
}

std::optional<std::vector<Scalar>> Subspace::coordinates_of(const MultiVector& v) const {
  if (v.ambient() != n_ || v.degree() != degree_) {
    throw std::invalid_argument("Subspace::coordinates_of: shape mismatch");
  }
  // Reduce v against the echelon basis; the pivot coefficients it sheds are
  // exactly its coordinates.
  MultiVector rest = v;
  std::vector<Scalar> coords(basis_.size(), Scalar(0));
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    Mask pivot = basis_[i].terms().begin()->first;
    Scalar c = rest.coefficient(pivot);
    if (c == 0) continue;
    coords[i] = c;
    rest -= c * basis_[i];
  }
  if (!rest.is_zero()) return std::nullopt;
  return coords;
}

bool Subspace::operator==(const Subspace& rhs) const {
  return n_ == rhs.n_ && degree_ == rhs.degree_ && basis_ == rhs.basis_;
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient() || a.degree() != b.degree()) {
    throw std::invalid_argument("subspace_sum: shape mismatch");
  }
  std::vector<MultiVector> gens = a.basis();
  gens.insert(gens.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(a.ambient(), a.degree(), gens);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient() || a.degree() != b.degree()) {
    throw std::invalid_argument("intersect: shape mismatch");
  }
  // Zassenhaus: row reduce [A|A; B|0]; rows whose left half vanishes carry a
  // basis of the intersection in their right half.
  int d = static_cast<int>(degree_basis(a.ambient(), a.degree()).size());
  int rows = a.dim() + b.dim();
  QMat m(rows, 2 * d);
  for (int i = 0; i < a.dim(); ++i) {
    auto coords = a.basis()[i].coordinates();
    for (int j = 0; j < d; ++j) {
      m.at(i, j) = coords[j];
      m.at(i, d + j) = coords[j];
    }
  }
  for (int i = 0; i < b.dim(); ++i) {
    auto coords = b.basis()[i].coordinates();
    for (int j = 0; j < d; ++j) m.at(a.dim() + i, j) = coords[j];
  }
  std::vector<int> pivots;
  int rank = rref_in_place(m, &pivots);
  std::vector<MultiVector> gens;
  for (int i = 0; i < rank; ++i) {
    if (pivots[i] < d) continue;
    std::vector<Scalar> coords(d);
    for (int j = 0; j < d; ++j) coords[j] = m.at(i, d + j);
    gens.push_back(MultiVector::from_coordinates(a.ambient(), a.degree(), coords));
  }
  return Subspace::span(a.ambient(), a.degree(), gens);
}

LinearMap::LinearMap(std::vector<MultiVector> domain_basis, std::vector<MultiVector> images)
    : domain_(std::move(domain_basis)), images_(std::move(images)) {
  if (domain_.empty()) throw std::invalid_argument("LinearMap: empty domain basis");
  if (domain_.size() != images_.size()) {
    throw std::invalid_argument("LinearMap: domain basis and image list sizes differ");
  }
  n_ = domain_[0].ambient();
  domain_degree_ = domain_[0].degree();
  codomain_degree_ = images_[0].degree();
  for (const auto& v : domain_) {
    if (v.ambient() != n_ || v.degree() != domain_degree_) {
      throw std::invalid_argument("LinearMap: domain basis shape mismatch");
    }
  }
  for (const auto& v : images_) {
    if (v.ambient() != n_ || v.degree() != codomain_degree_) {
      throw std::invalid_argument("LinearMap: image shape mismatch");
    }
  }
  if (Subspace::span(n_, domain_degree_, domain_).dim() != static_cast<int>(domain_.size())) {
    throw std::invalid_argument("LinearMap: domain basis is linearly dependent");
  }
}

LinearMap LinearMap::on_standard_basis(int n, int k,
                                       const std::function<MultiVector(const MultiVector&)>& f) {
  std::vector<MultiVector> domain, images;
  for (Mask m : degree_basis(n, k)) {
    MultiVector e = MultiVector::from_mask(n, k, m);
    domain.push_back(e);
    images.push_back(f(e));
  }
  return LinearMap(std::move(domain), std::move(images));
}

MultiVector LinearMap::apply(const MultiVector& v) const {
  if (v.ambient() != n_ || v.degree() != domain_degree_) {
    throw std::invalid_argument("LinearMap::apply: shape mismatch");
  }
  int d = static_cast<int>(degree_basis(n_, domain_degree_).size());
  QMat m(d, static_cast<int>(domain_.size()));
  for (int j = 0; j < m.cols(); ++j) {
    auto coords = domain_[j].coordinates();
    for (int i = 0; i < d; ++i) m.at(i, j) = coords[i];
  }
  auto sol = m.solve(v.coordinates());
  if (!sol) throw std::invalid_argument("LinearMap::apply: vector outside the domain span");
  MultiVector out(n_, codomain_degree_);
  for (std::size_t j = 0; j < images_.size(); ++j) {
    if ((*sol)[j] != 0) out += (*sol)[j] * images_[j];
  }
  return out;
}

Subspace LinearMap::image() const { return Subspace::span(n_, codomain_degree_, images_); }

QMat LinearMap::matrix() const {
  int rows = static_cast<int>(degree_basis(n_, codomain_degree_).size());
  QMat m(rows, static_cast<int>(images_.size()));
  for (int j = 0; j < m.cols(); ++j) {
    auto coords = images_[j].coordinates();
    for (int i = 0; i < rows; ++i) m.at(i, j) = coords[i];
  }
  return m;
}

Subspace kernel(const LinearMap& f) {
  QMat m = f.matrix();
  auto combos = null_space(m);
  std::vector<MultiVector> gens;
  for (const auto& c : combos) {
    MultiVector v(f.ambient(), f.domain_degree());
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j] != 0) v += c[j] * f.domain_basis()[j];
    }
    gens.push_back(std::move(v));
  }
  return Subspace::span(f.ambient(), f.domain_degree(), gens);
}

LinearMap graph_extract(const Subspace& w, const Subspace& e1, const Subspace& e2) {
  if (w.ambient() != e1.ambient() || w.ambient() != e2.ambient() || w.degree() != e1.degree() ||
      w.degree() != e2.degree()) {
    throw std::invalid_argument("graph_extract: shape mismatch");
  }
  if (w.dim() != e1.dim() || w.dim() != e2.dim()) {
    throw std::invalid_argument("graph_extract: hypothesis dim W = dim E1 = dim E2 fails");
  }
  if (w.dim() == 0) throw std::invalid_argument("graph_extract: zero-dimensional graph");
  if (intersect(e1, e2).dim() != 0) {
    throw std::invalid_argument("graph_extract: hypothesis E1 ∩ E2 = 0 fails, the sum is not direct");
  }
  Subspace sum = subspace_sum(e1, e2);
  for (const auto& v : w.basis()) {
    if (!sum.contains(v)) {
      throw std::invalid_argument("graph_extract: hypothesis W ⊂ E1 ⊕ E2 fails");
    }
  }
  if (intersect(w, e1).dim() != 0) {
    throw std::invalid_argument("graph_extract: hypothesis W ∩ E1 = 0 fails");
  }
  if (intersect(w, e2).dim() != 0) {
    throw std::invalid_argument("graph_extract: hypothesis W ∩ E2 = 0 fails");
  }

  // Split each basis vector of W as x + y along E1 ⊕ E2; the x parts form a
  // basis of E1 because W ∩ E2 = 0 and the dimensions agree.
  int d = static_cast<int>(degree_basis(w.ambient(), w.degree()).size());
  int m1 = e1.dim(), m2 = e2.dim();
  QMat m(d, m1 + m2);
  for (int j = 0; j < m1; ++j) {
    auto coords = e1.basis()[j].coordinates();
    for (int i = 0; i < d; ++i) m.at(i, j) = coords[i];
  }
  for (int j = 0; j < m2; ++j) {
    auto coords = e2.basis()[j].coordinates();
    for (int i = 0; i < d; ++i) m.at(i, m1 + j) = coords[i];
  }
  std::vector<MultiVector> xs, ys;
  for (const auto& v : w.basis()) {
    auto sol = m.solve(v.coordinates());
    if (!sol) throw std::invalid_argument("graph_extract: internal split failed");
    MultiVector x(w.ambient(), w.degree()), y(w.ambient(), w.degree());
    for (int j = 0; j < m1; ++j)
      if ((*sol)[j] != 0) x += (*sol)[j] * e1.basis()[j];
    for (int j = 0; j < m2; ++j)
      if ((*sol)[m1 + j] != 0) y += (*sol)[m1 + j] * e2.basis()[j];
    xs.push_back(std::move(x));
    ys.push_back(std::move(y));
  }
  return LinearMap(std::move(xs), std::move(ys));
}

}  // namespace symfix::exalg
