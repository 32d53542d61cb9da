// Fixed-point formula local terms, the truncated surface ring, and the
// integer classification of fixed-locus profiles.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "symfix/lefschetz.hpp"
#include "testutil.hpp"

using symfix::Scalar;
using namespace symfix::lefschetz;

namespace {

/// Brute-force oracle: trace of the induced map on C ⊕ S²(H) where the
/// involution on H is an explicit diagonal ±1 matrix of size h with the
/// first `a` entries +1. Sums m_i m_j over all unordered pairs i <= j.
Scalar trace_S2_bruteforce(int tau, int h) {
  int a = (h + tau) / 2;
  std::vector<int> m(h);
  for (int i = 0; i < h; ++i) m[i] = i < a ? 1 : -1;
  long sym2 = 0;
  for (int i = 0; i < h; ++i)
    for (int j = i; j < h; ++j) sym2 += m[i] * m[j];
  return Scalar(1 + sym2);
}

GradedClass random_class(testutil::Rng& rng) {
  return {testutil::random_scalar(rng), testutil::random_scalar(rng),
          testutil::random_scalar(rng)};
}

}  // namespace

TEST_CASE("truncated ring arithmetic") {
  GradedClass c2y = GradedClass::symbol_c2y();
  GradedClass a = GradedClass::symbol_a();

  // Degree-8 truncation: products of degree-4 symbols vanish.
  CHECK(c2y * a == GradedClass(0, 0, 0));
  CHECK(c2y * c2y == GradedClass(0, 0, 0));

  GradedClass x = GradedClass::constant(4) + c2y - a;
  CHECK(invert_unit(x) == GradedClass(Scalar(1, 4), Scalar(-1, 16), Scalar(1, 16)));
  CHECK(todd_surface() == GradedClass(1, Scalar(1, 12), 0));
  CHECK(todd_surface() * invert_unit(x) ==
        GradedClass(Scalar(1, 4), Scalar(-1, 24), Scalar(1, 16)));

  CHECK(ch_rank2_c1zero(c2y) == GradedClass(2, -1, 0));
  CHECK_THROWS_AS(ch_rank2_c1zero(GradedClass::constant(1)), std::invalid_argument);
  CHECK_THROWS_AS(invert_unit(c2y), std::invalid_argument);
}

TEST_CASE("invert_unit is an exact inverse on random units") {
  testutil::Rng rng(112233);
  const GradedClass one = GradedClass::constant(1);
  int done = 0;
  while (done < 1000) {
    GradedClass x = random_class(rng);
    if (!x.is_unit()) continue;
    ++done;
    CHECK(x * invert_unit(x) == one);
    CHECK(invert_unit(x) * x == one);
  }
}

TEST_CASE("point local terms") {
  CHECK(point_local_term(Sheaf::O) == Scalar(1, 16));
  CHECK(point_local_term(Sheaf::Omega1) == Scalar(-1, 4));
  CHECK(point_local_term(Sheaf::Omega2) == Scalar(3, 8));
}

TEST_CASE("surface local terms match their closed forms") {
  // Ring-derived integrands against the frozen expressions.
  CHECK(surface_local_term(Sheaf::O) ==
        GradedClass(Scalar(1, 4), Scalar(-1, 24), Scalar(1, 16)));
  CHECK(surface_local_term(Sheaf::Omega1) ==
        GradedClass(0, Scalar(-1, 2), Scalar(1, 4)));
  CHECK(surface_local_term(Sheaf::Omega2) ==
        GradedClass(Scalar(-1, 2), Scalar(1, 12), Scalar(3, 8)));
}

TEST_CASE("trace_S2 formula and oracle") {
  CHECK(trace_S2(5, 21) == 24);
  CHECK(trace_S2(-3, 21) == 16);
  // Identity involution: 1 + h(h+1)/2.
  for (int h = 0; h <= 12; ++h) CHECK(trace_S2(h, h) == Scalar(1) + symfix::frac(h * (h + 1), 2));

  CHECK_THROWS_AS(trace_S2(4, 21), std::invalid_argument);   // parity
  CHECK_THROWS_AS(trace_S2(23, 21), std::invalid_argument);  // |tau| > h

  for (int h = 0; h <= 12; ++h)
    for (int tau = -h; tau <= h; tau += 2)
      CHECK(trace_S2(tau, h) == trace_S2_bruteforce(tau, h));
}

TEST_CASE("global Lefschetz numbers") {
  LefschetzNumbers l5 = lefschetz_numbers(5);
  CHECK(l5.l_o == 3);
  CHECK(l5.l_omega1 == -10);
  CHECK(l5.l_omega2 == 26);

  LefschetzNumbers lm3 = lefschetz_numbers(-3);
  CHECK(lm3.l_omega1 == 6);
  CHECK(lm3.l_omega2 == 18);

  LefschetzNumbers l3 = lefschetz_numbers(3);
  CHECK(l3.l_omega1 == -6);
  CHECK(l3.l_omega2 == 18);

  // For odd traces the Omega2 number decomposes through the
  // symmetric-square trace on the middle cohomology.
  for (int tau = -21; tau <= 21; tau += 2)
    CHECK(lefschetz_numbers(tau).l_omega2 == Scalar(2) + trace_S2(tau, 21));
}

TEST_CASE("Hodge diamond") {
  CHECK(HodgeData::h(0, 0) == 1);
  CHECK(HodgeData::h(1, 1) == 21);
  CHECK(HodgeData::h(2, 2) == 232);
  CHECK(HodgeData::h(3, 1) == 21);
  CHECK(HodgeData::h(2, 1) == 0);
  CHECK(HodgeData::h(4, 4) == 1);
  CHECK(HodgeData::h(3, 3) == 21);
  CHECK(HodgeData::betti(2) == 23);
  CHECK(HodgeData::betti(4) == 276);
  CHECK(HodgeData::betti(3) == 0);
  CHECK(HodgeData::diamond_symmetric());
  CHECK(HodgeData::h22_consistent());
}

TEST_CASE("assembled system matrix") {
  auto m = classification_matrix();
  // Row O.
  CHECK(m[0][0] == Scalar(1, 16));
  CHECK(m[0][1] == Scalar(-1));
  CHECK(m[0][2] == Scalar(1, 16));
  // Row Omega1.
  CHECK(m[1][0] == Scalar(-1, 4));
  CHECK(m[1][1] == Scalar(-12));
  CHECK(m[1][2] == Scalar(1, 4));
  // Row Omega2.
  CHECK(m[2][0] == Scalar(3, 8));
  CHECK(m[2][1] == Scalar(2));
  CHECK(m[2][2] == Scalar(3, 8));
}

TEST_CASE("solution polynomials reproduce the closed forms") {
  SolutionPolynomials p = solution_polynomials();
  CHECK(p.n[0] == 33);
  CHECK(p.n[1] == 4);
  CHECK(p.n[2] == -1);
  CHECK(p.k[0] == Scalar(-9, 16));
  CHECK(p.k[1] == 0);
  CHECK(p.k[2] == Scalar(1, 16));
  CHECK(p.sum_a[0] == 6);
  CHECK(p.sum_a[1] == -4);
  CHECK(p.sum_a[2] == 2);
}

TEST_CASE("classification yields exactly the three admissible profiles") {
  std::vector<ClassificationSolution> sols = solve_classification();
  REQUIRE(sols.size() == 3);

  CHECK(sols[0].tau == -3);
  CHECK(sols[0].n == 12);
  CHECK(sols[0].k == 0);
  CHECK(sols[0].sum_a == 36);

  CHECK(sols[1].tau == 3);
  CHECK(sols[1].n == 36);
  CHECK(sols[1].k == 0);
  CHECK(sols[1].sum_a == 12);

  CHECK(sols[2].tau == 5);
  CHECK(sols[2].n == 28);
  CHECK(sols[2].k == 1);
  CHECK(sols[2].sum_a == 36);

  for (const auto& s : sols) {
    // Closed forms and parity.
    CHECK(s.n == -s.tau * s.tau + 4 * s.tau + 33);
    CHECK(16 * s.k == s.tau * s.tau - 9);
    CHECK(s.tau % 2 != 0);
    // Substituting back satisfies the assembled system identically.
    auto m = classification_matrix();
    LefschetzNumbers l = lefschetz_numbers(s.tau);
    const Scalar rhs[3] = {l.l_o, l.l_omega1, l.l_omega2};
    const Scalar x[3] = {Scalar(s.n), Scalar(s.k), s.sum_a};
    for (int r = 0; r < 3; ++r) {
      Scalar lhs = 0;
      for (int c = 0; c < 3; ++c) lhs += m[r][c] * x[c];
      CHECK(lhs == rhs[r]);
    }
  }
}

TEST_CASE("boundary traces are excluded for the stated reasons") {
  // tau = 7 passes the N constraint but K = 5/2 is not an integer.
  RationalSolution r7 = solve_at(7);
  CHECK(r7.n == 12);
  CHECK(r7.k == Scalar(5, 2));
  CHECK(r7.k.get_den() != 1);

  // tau = -7 dies on N = -44 < 0.
  RationalSolution rm7 = solve_at(-7);
  CHECK(rm7.n == -44);
  CHECK(rm7.n < 0);

  // Even traces die on K integrality: tau² - 9 is odd.
  for (int tau = -4; tau <= 8; tau += 2) CHECK(solve_at(tau).k.get_den() != 1);
}

TEST_CASE("corollary consequences hold for every solution") {
  for (const auto& s : solve_classification()) {
    CorollaryReport r = corollary_check(s);
    CHECK(r.n_at_least_12);
    CHECK(r.k_at_most_1);
    CHECK(r.k3_case_has_28);
    CHECK(r.abelian_forced_ok);
    CHECK(r.ok());
  }
  // A hypothetical profile violating the consequences is flagged.
  ClassificationSolution bad{1, 8, 2, Scalar(0)};
  CorollaryReport rb = corollary_check(bad);
  CHECK(!rb.n_at_least_12);
  CHECK(!rb.k_at_most_1);
  CHECK(!rb.ok());
}
