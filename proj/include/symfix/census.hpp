#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symfix/report.hpp"
#include "symfix/scalar.hpp"

namespace symfix::census {

/// Census of the fixed locus of the involution induced on the length-2
/// Hilbert scheme of a K3 surface by a symplectic surface involution with
/// `fixed_points_on_surface` isolated fixed points: one isolated point per
/// unordered pair of surface fixed points, plus one fixed K3 surface (the
/// closure of the locus of cycles {p, sigma(p)}). Requires at least 2 points.
CensusReport hilbert_census(int fixed_points_on_surface);

/// Invariant-cohomology bookkeeping for the same construction. The input is
/// the trace of the surface involution on the 20-dimensional (1,1)-part of
/// degree-2 cohomology; it must be even for the eigenspace dimensions to be
/// integers. The length-2 Hilbert scheme adds the invariant half-diagonal
/// class, so the invariant dimension grows by one and so does the trace.
struct HilbertDims {
  int invariant_dim_surface = 0;
  int invariant_dim_fourfold = 0;
  int trace_fourfold = 0;
};
HilbertDims hilbert_invariant_dims(int trace_surface);

/// Sign picked up by the projective volume form
///   sum_i (-1)^i X_i dX_0 ^ ... ^ (omit dX_i) ^ ... ^ dX_5
/// under the involution negating the first `negated_coordinates` of
/// X_0..X_5. Each of the six monomials is transformed explicitly; the signs
/// must agree, and the induced 2-form on the variety of lines of an
/// invariant cubic is symplectic exactly when the common sign is +1.
struct ResidueSignResult {
  int negated_coordinates = 0;
  std::array<int, 6> monomial_signs{};
  std::array<std::string, 6> monomials{};
  int sign = 0;
  bool symplectic = false;
};
ResidueSignResult residue_sign(int negated_coordinates);  // requires 1..3

/// Exact arithmetic in Q(z) with z^2 + z + 1 = 0 (a primitive cube root of
/// unity), represented as a + b z.
struct Cyclotomic {
  Scalar a{0}, b{0};

  Cyclotomic() = default;
  Cyclotomic(Scalar re, Scalar zc) : a(std::move(re)), b(std::move(zc)) {}
  explicit Cyclotomic(long n) : a(n), b(0) {}

  static Cyclotomic zeta_pow(int m);

  bool is_zero() const { return a == 0 && b == 0; }
  bool operator==(const Cyclotomic& o) const { return a == o.a && b == o.b; }

  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic operator-() const;
  /// Multiplicative inverse; throws on zero.
  Cyclotomic inverse() const;

  std::string str() const;
};

/// A line on the Fermat cubic surface Y_1^3 + Y_2^3 + Y_3^3 + Y_4^3 = 0,
/// cut out by two linear equations and spanned by two points, everything
/// exact over Q(z).
struct FermatLine {
  std::array<std::array<Cyclotomic, 4>, 2> equations{};
  std::array<std::array<Cyclotomic, 4>, 2> points{};
  int pairing = 0;  // 0: {12|34}, 1: {13|24}, 2: {14|23}
  int zeta_a = 0, zeta_b = 0;
  std::string description() const;
};

struct FermatLinesReport {
  std::vector<FermatLine> lines;
  bool substitution_verified = false;  // every s^j t^(3-j) coefficient vanishes
  bool pairwise_distinct = false;      // canonical echelon forms all differ
  bool ok() const { return lines.size() == 27 && substitution_verified && pairwise_distinct; }
};

/// Enumerates the 27 lines of the Fermat cubic surface (three coordinate
/// pairings, nine root-of-unity twists each), verifies each line lies on the
/// surface by exact substitution, and verifies pairwise distinctness via
/// canonical row-echelon forms.
FermatLinesReport fermat_27_lines();

/// Linear form in Y_1..Y_4 with rational coefficients.
struct LinearForm {
  std::array<Scalar, 4> c{};
  static LinearForm coordinate(int i);  // Y_{i+1}, i in 0..3
  Scalar eval(const std::array<Scalar, 4>& y) const;
  bool is_zero() const;
  std::string str() const;
};

/// Cubic form in Y_1..Y_4 with rational coefficients, stored sparsely by
/// exponent vector.
struct CubicForm {
  std::map<std::array<int, 4>, Scalar> terms;
  static CubicForm fermat();
  void add_term(const std::array<int, 4>& e, const Scalar& coeff);
  Scalar eval(const std::array<Scalar, 4>& y) const;
  Cyclotomic eval(const std::array<Cyclotomic, 4>& y) const;
  std::string str() const;
};

/// Classification of one fiber of the fixed surface over a point b of the
/// cubic surface: the fiber equation is a1^2 L0(b) + a1 a2 L2(b) + a2^2 L1(b)
/// on the line's parameter space.
struct FiberClass {
  bool on_surface = false;   // G(b) == 0
  bool degenerate = false;   // all three linear forms vanish at b
  Scalar discriminant{0};    // L2(b)^2 - 4 L0(b) L1(b)
};

/// The fixed surface of the coordinate involution on the variety of lines of
/// the invariant cubic  X0^2 L0 + X1^2 L1 + X0 X1 L2 + G  (besides the lines
/// of the fixed cubic surface): lines joining the pointwise-fixed coordinate
/// line to the cubic surface V(G). Its equation has bidegree (2,1) on
/// P^1 x V(G), making the surface a double cover of V(G).
struct FanoK3 {
  LinearForm l0, l1, l2;
  CubicForm g;
  std::string equation() const;
  FiberClass fiber_at(const std::array<Scalar, 4>& b) const;
};
FanoK3 fano_fixed_k3_equation(LinearForm l0, LinearForm l1, LinearForm l2, CubicForm g);

/// Samples rational points of V(G) along the family [1, -1, t, -t] and
/// checks the double-cover discriminant is nonzero at each — the fixed
/// surface is a genuinely 2:1 cover near those fibers.
Certificate fano_nondegeneracy(const FanoK3& k3, int samples);

/// Full census for the coordinate involution (two negated coordinates) on
/// the variety of lines of the invariant Fermat-shaped cubic: the 27 lines
/// of the fixed cubic surface, the pointwise-fixed coordinate line, and the
/// fixed double-cover K3.
CensusReport fano_census(const FanoK3& k3);
CensusReport fano_census();  // reference shape L0 = Y1, L1 = Y2, L2 = Y3

}  // namespace symfix::census
