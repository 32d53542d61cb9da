#include "symfix/lefschetz.hpp"

#include <stdexcept>
#include <string>

#include "symfix/qmat.hpp"

namespace symfix::lefschetz {

using exalg::QMat;

GradedClass::GradedClass(Scalar c0, Scalar c2y, Scalar a)
    : c0_(std::move(c0)), c2y_(std::move(c2y)), a_(std::move(a)) {}

GradedClass GradedClass::constant(const Scalar& c) { return {c, 0, 0}; }
GradedClass GradedClass::symbol_c2y() { return {0, 1, 0}; }
GradedClass GradedClass::symbol_a() { return {0, 0, 1}; }

GradedClass& GradedClass::operator+=(const GradedClass& o) {
  c0_ += o.c0_;
  c2y_ += o.c2y_;
  a_ += o.a_;
  return *this;
}

GradedClass& GradedClass::operator-=(const GradedClass& o) {
  c0_ -= o.c0_;
  c2y_ -= o.c2y_;
  a_ -= o.a_;
  return *this;
}

GradedClass& GradedClass::operator*=(const GradedClass& o) {
  // Degree-8 products (c2y_, a_) x (o.c2y_, o.a_) vanish on a surface.
  Scalar nc2y = c0_ * o.c2y_ + o.c0_ * c2y_;
  Scalar na = c0_ * o.a_ + o.c0_ * a_;
  c0_ *= o.c0_;
  c2y_ = std::move(nc2y);
  a_ = std::move(na);
  return *this;
}

GradedClass GradedClass::operator-() const { return {Scalar(-c0_), Scalar(-c2y_), Scalar(-a_)}; }

GradedClass invert_unit(const GradedClass& x) {
  if (!x.is_unit())
    throw std::invalid_argument("invert_unit: degree-0 part is zero, not a unit");
  Scalar r0 = 1 / x.c0();
  Scalar r0sq = r0 * r0;
  return {r0, Scalar(-x.c2y() * r0sq), Scalar(-x.a() * r0sq)};
}

GradedClass todd_surface() {
  return GradedClass::constant(1) + GradedClass(0, Scalar(1, 12), 0);
}

GradedClass ch_rank2_c1zero(const GradedClass& c2) {
  if (!c2.is_pure_degree4())
    throw std::invalid_argument("ch_rank2_c1zero: c2 must be pure degree 4");
  return GradedClass::constant(2) - c2;
}

namespace {

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

int sheaf_degree(Sheaf f) {
  switch (f) {
    case Sheaf::O: return 0;
    case Sheaf::Omega1: return 1;
    case Sheaf::Omega2: return 2;
  }
  throw std::logic_error("sheaf_degree: unreachable");
}

}  // namespace

Scalar point_local_term(Sheaf f) {
  // The differential is -id on the 4-dimensional tangent space, so the p-th
  // exterior power of its dual has trace (-1)^p C(4,p) and
  // det(1 - d) = 2^4 = 16.
  int p = sheaf_degree(f);
  long num = binomial(4, p) * ((p % 2 == 0) ? 1 : -1);
  return frac(num, 16);
}

GradedClass surface_local_term(Sheaf f) {
  const GradedClass c2y = GradedClass::symbol_c2y();
  const GradedClass a = GradedClass::symbol_a();
  const GradedClass one = GradedClass::constant(1);

  // Conormal bundle of the surface: rank 2, c1 = 0, c2 = a - c2Y.
  GradedClass c2_conormal = a - c2y;
  // Denominator 1 + ch(N*) + ch(det N*); det N* has trivial c1, so its
  // Chern character is 1.
  GradedClass denom = one + ch_rank2_c1zero(c2_conormal) + one;
  GradedClass base = todd_surface() * invert_unit(denom);

  switch (f) {
    case Sheaf::O:
      return base;
    case Sheaf::Omega1:
      // ch(tangent) - ch(conormal) = (2 - c2Y) - (2 - (a - c2Y)) = a - 2 c2Y.
      return base * (ch_rank2_c1zero(c2y) - ch_rank2_c1zero(c2_conormal));
    case Sheaf::Omega2: {
      // Invariant part det T ⊕ det N* has ch = 2; anti-invariant part
      // T ⊗ N* has ch = ch(T) ch(N*) = (2 - c2Y)(2 - (a - c2Y)) = 4 - 2a.
      GradedClass plus = GradedClass::constant(2);
      GradedClass minus = ch_rank2_c1zero(c2y) * ch_rank2_c1zero(c2_conormal);
      return base * (plus - minus);
    }
  }
  throw std::logic_error("surface_local_term: unreachable");
}

Scalar trace_S2(int tau, int h) {
  if (h < 0) throw std::invalid_argument("trace_S2: h must be nonnegative");
  if (tau > h || tau < -h)
    throw std::invalid_argument("trace_S2: |tau| exceeds h");
  if (((tau % 2) + 2) % 2 != ((h % 2) + 2) % 2)
    throw std::invalid_argument("trace_S2: tau and h must have equal parity");
  // Eigenspace dimensions of the involution on the h-dimensional space.
  long a = (static_cast<long>(h) + tau) / 2;
  long b = (static_cast<long>(h) - tau) / 2;
  // Trace on C + S²(+) + S²(-) + (+)⊗(-).
  Scalar s = 1;
  s += frac(a * (a + 1), 2);
  s += frac(b * (b + 1), 2);
  s -= Scalar(a * b);
  return s;
}

LefschetzNumbers lefschetz_numbers(int tau) {
  LefschetzNumbers l;
  // H^{0,even} is three lines spanned by powers of the symplectic form, all
  // fixed.
  l.l_o = 3;
  // H^{1,1} and H^{1,3} ≅ H^{1,1} each contribute -tau.
  l.l_omega1 = Scalar(-2) * Scalar(tau);
  // H^{2,0} and H^{2,4} contribute 1 each; H^{2,2} contributes the
  // symmetric-square trace.
  Scalar t2 = Scalar(tau) * Scalar(tau);
  l.l_omega2 = Scalar(2) + (Scalar(1) + Scalar(HodgeData::kH11, 2) + t2 / 2);
  return l;
}

namespace {

// Upper half of the diamond (p + q <= 4); the rest follows by the
// symmetry h^{p,q} = h^{4-p,4-q}.
constexpr int kDiamondHalf[5][5] = {
    // q:  0   1   2   3    4        p:
    {1, 0, 1, 0, 1},      // 0
    {0, 21, 0, 21, 0},    // 1  (only q <= 3 used from this row's half)
    {1, 0, 232, 0, 0},    // 2
    {0, 21, 0, 0, 0},     // 3
    {1, 0, 0, 0, 0},      // 4
};

}  // namespace

int HodgeData::h(int p, int q) {
  if (p < 0 || p > 4 || q < 0 || q > 4)
    throw std::invalid_argument("HodgeData::h: indices out of range");
  if (p + q <= 4) return kDiamondHalf[p][q];
  return kDiamondHalf[4 - p][4 - q];
}

int HodgeData::betti(int k) {
  if (k < 0 || k > 8) throw std::invalid_argument("HodgeData::betti: out of range");
  int b = 0;
  for (int p = 0; p <= 4; ++p) {
    int q = k - p;
    if (q >= 0 && q <= 4) b += h(p, q);
  }
  return b;
}

bool HodgeData::diamond_symmetric() {
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; q <= 4; ++q)
      if (h(p, q) != h(q, p) || h(p, q) != h(4 - p, 4 - q)) return false;
  return true;
}

bool HodgeData::h22_consistent() {
  return kH22 == 1 + binomial(kH11, 2) + kH11 && h(2, 2) == kH22 &&
         h(1, 1) == kH11 && betti(2) == kB2;
}

std::array<std::array<Scalar, 3>, 3> classification_matrix() {
  std::array<std::array<Scalar, 3>, 3> m;
  const Sheaf sheaves[3] = {Sheaf::O, Sheaf::Omega1, Sheaf::Omega2};
  for (int r = 0; r < 3; ++r) {
    GradedClass s = surface_local_term(sheaves[r]);
    m[r][0] = point_local_term(sheaves[r]);
    // A K3 fixed surface integrates c2Y to 24 and contributes its own a_j to
    // the aggregate; an abelian surface integrates c2Y to 0. The constant
    // part of the integrand never survives integration over a surface.
    m[r][1] = s.c2y() * 24;
    m[r][2] = s.a();
  }
  return m;
}

namespace {

QMat matrix_to_qmat(const std::array<std::array<Scalar, 3>, 3>& m) {
  QMat q(3, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) q.at(r, c) = m[r][c];
  return q;
}

// Right-hand side (3, -2 tau, (27+tau²)/2) as polynomials in tau:
// coefficient arrays {constant, tau, tau²}.
std::array<std::array<Scalar, 3>, 3> rhs_polynomials() {
  return {{{Scalar(3), Scalar(0), Scalar(0)},
           {Scalar(0), Scalar(-2), Scalar(0)},
           {Scalar(27, 2), Scalar(0), Scalar(1, 2)}}};
}

bool is_integer(const Scalar& s) { return s.get_den() == 1; }

long to_long(const Scalar& s) {
  if (!is_integer(s)) throw std::logic_error("to_long: not an integer");
  return s.get_num().get_si();
}

}  // namespace

RationalSolution solve_at(int tau) {
  QMat m = matrix_to_qmat(classification_matrix());
  LefschetzNumbers l = lefschetz_numbers(tau);
  auto sol = m.solve({l.l_o, l.l_omega1, l.l_omega2});
  if (!sol) throw std::logic_error("solve_at: system unexpectedly inconsistent");
  return {(*sol)[0], (*sol)[1], (*sol)[2]};
}

SolutionPolynomials solution_polynomials() {
  QMat m = matrix_to_qmat(classification_matrix());
  Scalar d = m.det();
  if (d == 0) throw std::logic_error("solution_polynomials: singular system");
  auto rhs = rhs_polynomials();

  // Cramer's rule, linear in the replaced column: unknown j has
  // tau-coefficients sum_r det(M with col j <- e_r) rhs_r.
  std::array<std::array<Scalar, 3>, 3> polys;
  for (int j = 0; j < 3; ++j) {
    std::array<Scalar, 3> poly = {Scalar(0), Scalar(0), Scalar(0)};
    for (int r = 0; r < 3; ++r) {
      QMat mj = m;
      for (int i = 0; i < 3; ++i) mj.at(i, j) = (i == r) ? 1 : 0;
      Scalar cof = mj.det() / d;
      for (int deg = 0; deg < 3; ++deg) poly[deg] += cof * rhs[r][deg];
    }
    polys[j] = poly;
  }
  return {polys[0], polys[1], polys[2]};
}

std::vector<ClassificationSolution> solve_classification() {
  SolutionPolynomials p = solution_polynomials();

  // Eliminating sum_a must reproduce the closed forms
  // N = -tau² + 4 tau + 33 and 16 K = tau² - 9.
  if (!(p.n == std::array<Scalar, 3>{Scalar(33), Scalar(4), Scalar(-1)}))
    throw std::logic_error("solve_classification: N(tau) closed form mismatch");
  if (!(p.k == std::array<Scalar, 3>{Scalar(-9, 16), Scalar(0), Scalar(1, 16)}))
    throw std::logic_error("solve_classification: K(tau) closed form mismatch");

  auto eval = [](const std::array<Scalar, 3>& poly, int tau) -> Scalar {
    Scalar t(tau);
    return poly[0] + poly[1] * t + poly[2] * t * t;
  };

  std::vector<ClassificationSolution> out;
  bool tau7_killed_by_k_integrality = false;
  bool tau_minus7_killed_by_negative_n = false;
  // N >= 0 forces 2-sqrt(37) <= tau <= 2+sqrt(37); [-10, 10] is a strict
  // superset, wide enough to witness the tau = ±7 exclusions explicitly.
  for (int tau = -10; tau <= 10; ++tau) {
    Scalar n = eval(p.n, tau);
    Scalar k = eval(p.k, tau);
    Scalar sum_a = eval(p.sum_a, tau);
    bool n_ok = is_integer(n) && n >= 0;
    bool k_ok = is_integer(k) && k >= 0;
    if (tau == 7 && n_ok && k >= 0 && !is_integer(k)) tau7_killed_by_k_integrality = true;
    if (tau == -7 && n < 0) tau_minus7_killed_by_negative_n = true;
    if (!n_ok || !k_ok) continue;
    RationalSolution direct = solve_at(tau);
    if (direct.n != n || direct.k != k || direct.sum_a != sum_a)
      throw std::logic_error("solve_classification: Cramer and direct solve disagree");
    out.push_back({tau, to_long(n), to_long(k), sum_a});
  }

  if (!tau7_killed_by_k_integrality)
    throw std::logic_error("solve_classification: tau=7 not excluded by K integrality");
  if (!tau_minus7_killed_by_negative_n)
    throw std::logic_error("solve_classification: tau=-7 not excluded by N < 0");
  if (out.size() != 3)
    throw std::logic_error("solve_classification: expected exactly three solutions");
  return out;
}

CorollaryReport corollary_check(const ClassificationSolution& sol) {
  CorollaryReport r;
  r.n_at_least_12 = sol.n >= 12;
  r.k_at_most_1 = sol.k <= 1;
  r.k3_case_has_28 = (sol.k != 1) || (sol.n == 28);
  // With no fixed K3 surface, a positive aggregate sum_a still demands a
  // fixed surface to carry it, and that surface must then be abelian.
  r.abelian_forced_ok = (sol.k != 0) || (sol.sum_a > 0);
  return r;
}

}  // namespace symfix::lefschetz
