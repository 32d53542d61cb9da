#pragma once

#include <array>
#include <vector>

#include "symfix/scalar.hpp"

namespace symfix::lefschetz {

/// Element of the truncated intersection ring of a fixed surface inside the
/// fourfold: a rational constant plus rational multiples of the degree-4
/// symbols c2Y (the surface's own second Chern class) and a (the ambient
/// second Chern class restricted to the surface). Any product of two
/// degree-4 symbols vanishes, since the surface has complex dimension 2.
/// Degree-2 parts are absent throughout: every fixed surface here has
/// trivial first Chern class, so no degree-2 class ever appears.
class GradedClass {
 public:
  GradedClass() = default;
  GradedClass(Scalar c0, Scalar c2y, Scalar a);

  static GradedClass constant(const Scalar& c);
  /// The degree-4 symbol c2Y.
  static GradedClass symbol_c2y();
  /// The degree-4 symbol a.
  static GradedClass symbol_a();

  const Scalar& c0() const { return c0_; }
  const Scalar& c2y() const { return c2y_; }
  const Scalar& a() const { return a_; }

  /// Invertible iff the degree-0 part is nonzero.
  bool is_unit() const { return c0_ != 0; }
  /// True iff the degree-0 part vanishes.
  bool is_pure_degree4() const { return c0_ == 0; }

  GradedClass& operator+=(const GradedClass& o);
  GradedClass& operator-=(const GradedClass& o);
  /// Truncated product: (x0 + x4)(y0 + y4) = x0 y0 + x0 y4 + y0 x4.
  GradedClass& operator*=(const GradedClass& o);
  GradedClass operator-() const;
  friend GradedClass operator+(GradedClass x, const GradedClass& y) { return x += y; }
  friend GradedClass operator-(GradedClass x, const GradedClass& y) { return x -= y; }
  friend GradedClass operator*(GradedClass x, const GradedClass& y) { return x *= y; }
  friend bool operator==(const GradedClass& x, const GradedClass& y) {
    return x.c0_ == y.c0_ && x.c2y_ == y.c2y_ && x.a_ == y.a_;
  }
  friend bool operator!=(const GradedClass& x, const GradedClass& y) { return !(x == y); }

 private:
  Scalar c0_ = 0;   // degree-0 part
  Scalar c2y_ = 0;  // coefficient of c2Y
  Scalar a_ = 0;    // coefficient of a
};

/// Exact inverse in the truncated ring: (r0 + r4)^{-1} = 1/r0 - r4/r0².
/// Rejects non-units.
GradedClass invert_unit(const GradedClass& x);

/// Todd class of a surface with trivial canonical class: 1 + c2Y/12.
GradedClass todd_surface();

/// Chern character of a rank-2 bundle with c1 = 0 and second Chern class
/// `c2`: equals 2 - c2 in the truncated ring. `c2` must be pure degree 4.
GradedClass ch_rank2_c1zero(const GradedClass& c2);

/// The three sheaves fed through the fixed-point formula.
enum class Sheaf { O, Omega1, Omega2 };

/// Local term of an isolated fixed point, where the involution differential
/// is -id on the 4-dimensional tangent space: (-1)^p C(4,p) / 16 for the
/// p-th exterior power of the cotangent sheaf. O -> 1/16, Omega1 -> -1/4,
/// Omega2 -> 3/8.
Scalar point_local_term(Sheaf f);

/// Local integrand of a fixed surface with trivial canonical class, produced
/// entirely by ring arithmetic (Todd class, Chern characters, unit
/// inversion), never hard-coded:
///   O      -> 1/4 - c2Y/24 + a/16
///   Omega1 -> a/4 - c2Y/2
///   Omega2 -> -1/2 + 3a/8 + c2Y/12
/// Only the degree-4 part survives integration over the surface.
GradedClass surface_local_term(Sheaf f);

/// Trace of an involution on C + S²(H) where H has dimension h and the
/// involution acts with trace tau on H: computed through the eigenspace
/// split a = (h+tau)/2, b = (h-tau)/2 as 1 + a(a+1)/2 + b(b+1)/2 - ab,
/// which simplifies to 1 + h/2 + tau²/2. Requires |tau| <= h and
/// tau ≡ h (mod 2); parity violations are rejected.
Scalar trace_S2(int tau, int h);

/// Global Lefschetz numbers of the involution for O, Omega1, Omega2 on a
/// fourfold with the standard Hodge diamond (h^{1,1} = 21):
/// (3, -2 tau, (27 + tau²)/2).
struct LefschetzNumbers {
  Scalar l_o;
  Scalar l_omega1;
  Scalar l_omega2;
};
LefschetzNumbers lefschetz_numbers(int tau);

/// Hodge diamond of the fourfolds under study (second Betti number 23),
/// plus the trace tau of the involution on H^{1,1}.
struct HodgeData {
  int tau = 5;

  static constexpr int kB2 = 23;
  static constexpr int kH11 = 21;
  static constexpr int kH22 = 232;

  /// Hodge number h^{p,q}, 0 <= p,q <= 4.
  static int h(int p, int q);
  /// k-th Betti number, 0 <= k <= 8.
  static int betti(int k);
  /// h^{p,q} = h^{q,p} and h^{p,q} = h^{4-p,4-q}.
  static bool diamond_symmetric();
  /// h^{2,2} = 1 + C(h^{1,1},2) + h^{1,1}, as dictated by the degree-4
  /// cohomology being the symmetric square of the degree-2 cohomology.
  static bool h22_consistent();
};

/// One admissible fixed-locus profile: trace tau, N isolated points,
/// K fixed K3 surfaces, and the forced value of the aggregate
/// sum_a = Σ_j (ambient c2) · [S_j] over all fixed surfaces.
struct ClassificationSolution {
  int tau = 0;
  long n = 0;
  long k = 0;
  Scalar sum_a;
};

/// Exact rational solution (N, K, sum_a) of the 3x3 fixed-point system at a
/// given integer trace, before any integrality filtering.
struct RationalSolution {
  Scalar n;
  Scalar k;
  Scalar sum_a;
};

/// The 3x3 coefficient matrix of the fixed-point system, assembled from
/// point_local_term and surface_local_term (K3 column scales the c2Y
/// coefficient by 24; the abelian surfaces' own c2 vanishes, so they enter
/// only through sum_a). Row order: O, Omega1, Omega2. Column order:
/// N, K, sum_a.
std::array<std::array<Scalar, 3>, 3> classification_matrix();

/// Solve the assembled system exactly at one integer trace.
RationalSolution solve_at(int tau);

/// Each unknown of the system as an exact polynomial in tau (coefficients
/// of 1, tau, tau²), obtained by Cramer's rule with the polynomial
/// right-hand side (3, -2 tau, (27+tau²)/2). Eliminating sum_a this way
/// yields the closed forms N = -tau² + 4 tau + 33 and 16 K = tau² - 9,
/// which solve_classification verifies coefficient-by-coefficient.
struct SolutionPolynomials {
  std::array<Scalar, 3> n;      // N(tau)
  std::array<Scalar, 3> k;      // K(tau)
  std::array<Scalar, 3> sum_a;  // sum_a(tau)
};
SolutionPolynomials solution_polynomials();

/// Enumerate integer traces, keep those where N and K are nonnegative
/// integers, and return the admissible profiles sorted by tau. Exactly
/// three survive: (-3, 12, 0, 36), (3, 36, 0, 12), (5, 28, 1, 36).
/// Internally asserts the closed forms above, that tau = 7 dies only by
/// K-integrality (K = 5/2), and that tau = -7 dies by N = -44 < 0.
std::vector<ClassificationSolution> solve_classification();

/// Consequences checked on each classification solution.
struct CorollaryReport {
  bool n_at_least_12 = false;       // always at least 12 isolated points
  bool k_at_most_1 = false;         // at most one fixed K3 surface
  bool k3_case_has_28 = false;      // K = 1 forces N = 28
  bool abelian_forced_ok = false;   // K = 0 forces sum_a > 0, hence a fixed
                                    // surface that must be abelian
  bool ok() const {
    return n_at_least_12 && k_at_most_1 && k3_case_has_28 && abelian_forced_ok;
  }
};
CorollaryReport corollary_check(const ClassificationSolution& sol);

}  // namespace symfix::lefschetz
