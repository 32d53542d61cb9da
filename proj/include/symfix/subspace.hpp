#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "symfix/multivector.hpp"
#include "symfix/qmat.hpp"

namespace symfix::exalg {

/// Linear subspace of ∧^k V, stored as a reduced row echelon basis with
/// respect to the lexicographic tuple order. The stored basis is canonical:
/// pivots are strictly increasing, pivot coefficients are 1 and are the only
/// nonzero entries in their column, so subspace equality is basis equality.
class Subspace {
 public:
  /// The zero subspace of ∧^degree V.
  Subspace(int n, int degree);

  static Subspace span(int n, int degree, const std::vector<MultiVector>& generators);
  /// Convenience for a nonempty generating set; shape is read off the first.
  static Subspace span(const std::vector<MultiVector>& generators);
  static Subspace full(int n, int degree);

  int ambient() const { return n_; }
  int degree() const { return degree_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<MultiVector>& basis() const { return basis_; }

  bool contains(const MultiVector& v) const;
  /// Coordinates of v in the echelon basis; nullopt when v is outside.
  std::optional<std::vector<Scalar>> coordinates_of(const MultiVector& v) const;

  bool operator==(const Subspace& rhs) const;
  bool operator!=(const Subspace& rhs) const { return !(*this == rhs); }

 private:
  int n_, degree_;
  std::vector<MultiVector> basis_;
};

Subspace intersect(const Subspace& a, const Subspace& b);
Subspace subspace_sum(const Subspace& a, const Subspace& b);

/// Linear map between sub-quotients of exterior powers, recorded on an
/// explicit independent domain basis together with the images of its
/// elements. The domain may be a proper subspace.
class LinearMap {
 public:
  LinearMap(std::vector<MultiVector> domain_basis, std::vector<MultiVector> images);

  /// Map on all of ∧^k V defined by its values on the standard basis.
  static LinearMap on_standard_basis(int n, int k,
                                     const std::function<MultiVector(const MultiVector&)>& f);

  int ambient() const { return n_; }
  int domain_degree() const { return domain_degree_; }
  int codomain_degree() const { return codomain_degree_; }
  const std::vector<MultiVector>& domain_basis() const { return domain_; }
  const std::vector<MultiVector>& images() const { return images_; }

  /// Value at v; throws when v is outside the span of the domain basis.
  MultiVector apply(const MultiVector& v) const;

  Subspace image() const;

  /// Matrix in the standard lexicographic bases: C(n, codomain degree) rows,
  /// one column per domain basis vector.
  QMat matrix() const;

 private:
  int n_, domain_degree_, codomain_degree_;
  std::vector<MultiVector> domain_;
  std::vector<MultiVector> images_;
};

Subspace kernel(const LinearMap& f);

/// Recovers f from its graph: W = {x + f(x) : x in E1} with f : E1 -> E2.
/// Hypotheses checked individually (equal dimensions, E1 + E2 direct,
/// W inside E1 + E2, W meeting E1 and E2 only in 0); the exception message
/// names the one that failed.
LinearMap graph_extract(const Subspace& w, const Subspace& e1, const Subspace& e2);

}  // namespace symfix::exalg
