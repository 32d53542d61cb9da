#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <vector>

#include "symfix/scalar.hpp"

namespace symfix::exalg {

/// Basis tuples of the exterior algebra are strictly increasing index tuples
/// (i1 < ... < ik) with indices in 1..n. A tuple is stored as a bitmask with
/// bit (i-1) set for index i.
using Mask = unsigned;

constexpr int kMaxAmbient = 16;

int tuple_degree(Mask m);
std::vector<int> tuple_indices(Mask m);
Mask mask_from_indices(const std::vector<int>& indices, int n);

/// Lexicographic order on the index tuples (the normative pivot order for
/// echelon forms). For equal-degree masks this is plain lex on the tuples.
bool tuple_lex_less(Mask a, Mask b);

struct TupleLexLess {
  bool operator()(Mask a, Mask b) const { return tuple_lex_less(a, b); }
};

/// Sign of e_A ^ e_B as +-1, or 0 when the tuples overlap.
int wedge_sign(Mask a, Mask b);

/// All degree-k tuples over indices 1..n, in lexicographic order. This is the
/// coordinate ordering used everywhere a multivector is flattened to a dense
/// vector.
const std::vector<Mask>& degree_basis(int n, int k);

/// Element of ∧^k V for V of dimension n, as a sparse map from basis tuples
/// to nonzero rational coefficients. Zero coefficients are never stored, so
/// equality of the term maps is equality of multivectors.
class MultiVector {
 public:
  using TermMap = std::map<Mask, Scalar, TupleLexLess>;

  MultiVector(int n, int degree);

  static MultiVector zero(int n, int degree) { return MultiVector(n, degree); }
  /// e_{i1...ik} for strictly increasing indices in 1..n.
  static MultiVector basis(int n, std::initializer_list<int> indices);
  static MultiVector basis(int n, const std::vector<int>& indices);
  static MultiVector from_mask(int n, int degree, Mask m);

  int ambient() const { return n_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  Scalar coefficient(Mask m) const;
  /// Adds c * e_m, erasing the entry if the sum cancels.
  void add_term(Mask m, const Scalar& c);

  /// Dense coordinates in the lexicographic basis of ∧^k V, length C(n,k).
  std::vector<Scalar> coordinates() const;
  static MultiVector from_coordinates(int n, int degree, const std::vector<Scalar>& coords);

  MultiVector& operator+=(const MultiVector& rhs);
  MultiVector& operator-=(const MultiVector& rhs);
  MultiVector& operator*=(const Scalar& c);

  friend MultiVector operator+(MultiVector a, const MultiVector& b) { return a += b; }
  friend MultiVector operator-(MultiVector a, const MultiVector& b) { return a -= b; }
  friend MultiVector operator*(MultiVector a, const Scalar& c) { return a *= c; }
  friend MultiVector operator*(const Scalar& c, MultiVector a) { return a *= c; }
  MultiVector operator-() const;

  bool operator==(const MultiVector& rhs) const;
  bool operator!=(const MultiVector& rhs) const { return !(*this == rhs); }

  std::string to_string() const;

 private:
  int n_;
  int degree_;
  TermMap terms_;
};

/// Exterior product with the graded sign rule. Degrees add; a product past
/// the top degree is rejected.
MultiVector wedge(const MultiVector& a, const MultiVector& b);

/// ω(a, b) for a, b ∈ ∧³V with n = 6: the coefficient of e_123456 in a ∧ b
/// (volume normalization e_123456 ↦ 1). Antisymmetric and nondegenerate.
Scalar symplectic_form(const MultiVector& a, const MultiVector& b);

/// Interior product ι against the dual basis element e_S^*, with the
/// convention ι_{e_S^*}(e_S ∧ e_R) = e_R.
MultiVector contract_dual(Mask s, const MultiVector& a);

}  // namespace symfix::exalg
