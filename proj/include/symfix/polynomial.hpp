#pragma once

#include <array>
#include <complex>
#include <map>
#include <vector>

#include "symfix/scalar.hpp"

namespace symfix::poly {

/// Univariate polynomial over the exact rationals, coefficients ascending
/// (index = power). The zero polynomial is the empty vector.
using UniPoly = std::vector<Scalar>;

/// Strips trailing zero coefficients.
UniPoly normalized(UniPoly p);
/// Degree; -1 for the zero polynomial.
int degree(const UniPoly& p);
UniPoly derivative(const UniPoly& p);
UniPoly multiply(const UniPoly& a, const UniPoly& b);
UniPoly subtract(UniPoly a, const UniPoly& b);
/// Leading coefficient made 1. Zero polynomial stays zero.
UniPoly monic(UniPoly p);
/// Euclidean remainder a mod b; b must be nonzero.
UniPoly remainder(UniPoly a, const UniPoly& b);
/// Monic greatest common divisor.
UniPoly gcd(UniPoly a, UniPoly b);
/// True iff gcd(p, p') is constant — all complex roots simple.
bool squarefree(const UniPoly& p);
Scalar eval(const UniPoly& p, const Scalar& x);
std::complex<double> eval(const UniPoly& p, const std::complex<double>& x);

/// Rational roots (with multiplicity, via repeated deflation), plus the
/// rational-root-free cofactor that remains.
struct RationalRoots {
  std::vector<Scalar> roots;
  UniPoly cofactor;
  bool complete() const { return degree(cofactor) <= 0; }
};
RationalRoots rational_roots(const UniPoly& p);

/// Sparse polynomial in three variables over the exact rationals, keyed by
/// exponent triples.
class Poly3 {
 public:
  using Exp = std::array<int, 3>;

  static Poly3 constant(const Scalar& c);
  /// The coordinate t_i, i in {0,1,2}.
  static Poly3 variable(int i);

  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;  // -1 for zero
  const std::map<Exp, Scalar>& terms() const { return terms_; }
  const Scalar& coefficient(const Exp& e) const;

  void add_term(const Exp& e, const Scalar& c);
  Poly3& operator+=(const Poly3& o);
  Poly3& operator-=(const Poly3& o);
  Poly3 operator*(const Poly3& o) const;
  Poly3 operator-() const;
  friend Poly3 operator+(Poly3 a, const Poly3& b) { return a += b; }
  friend Poly3 operator-(Poly3 a, const Poly3& b) { return a -= b; }
  bool operator==(const Poly3& o) const { return terms_ == o.terms_; }

  Poly3 derivative(int i) const;
  Scalar eval(const std::array<Scalar, 3>& t) const;
  std::complex<double> eval(const std::array<std::complex<double>, 3>& t) const;

  /// Restriction to the parametrized line t = p + w d, as a univariate
  /// polynomial in w.
  UniPoly restrict_to_line(const std::array<Scalar, 3>& p,
                           const std::array<Scalar, 3>& d) const;

 private:
  std::map<Exp, Scalar> terms_;
};

/// Exact determinant of a square matrix of Poly3 entries, by dynamic
/// programming over column subsets (Laplace expansion with memoization).
Poly3 poly_determinant(const std::vector<std::vector<Poly3>>& m);

/// Fixed-precision evaluator for a Poly3 at complex points: caches the
/// exponents and double-precision coefficients once.
class Poly3Evaluator {
 public:
  explicit Poly3Evaluator(const Poly3& p);
  std::complex<double> operator()(const std::array<std::complex<double>, 3>& t) const;

 private:
  struct Term {
    std::array<int, 3> e;
    std::complex<double> c;
  };
  std::vector<Term> terms_;
};

}  // namespace symfix::poly
