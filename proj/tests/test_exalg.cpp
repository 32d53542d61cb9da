#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "symfix/multivector.hpp"
#include "symfix/qmat.hpp"
#include "symfix/serialize.hpp"
#include "symfix/subspace.hpp"
#include "testutil.hpp"

using namespace symfix;
using namespace symfix::exalg;
using testutil::Rng;

namespace {
constexpr int kCases = 1000;

MultiVector e(std::initializer_list<int> idx) { return MultiVector::basis(6, idx); }
}  // namespace

TEST_CASE("tuple order and wedge signs") {
  Mask m123 = mask_from_indices({1, 2, 3}, 6);
  Mask m124 = mask_from_indices({1, 2, 4}, 6);
  Mask m456 = mask_from_indices({4, 5, 6}, 6);
  CHECK(tuple_lex_less(m123, m124));
  CHECK(tuple_lex_less(m124, m456));
  CHECK_FALSE(tuple_lex_less(m123, m123));

  CHECK(wedge_sign(mask_from_indices({1}, 6), mask_from_indices({2}, 6)) == 1);
  CHECK(wedge_sign(mask_from_indices({2}, 6), mask_from_indices({1}, 6)) == -1);
  CHECK(wedge_sign(m123, m456) == 1);
  CHECK(wedge_sign(m456, m123) == -1);
  CHECK(wedge_sign(m123, m124) == 0);

  CHECK(degree_basis(6, 3).size() == 20);
  CHECK(degree_basis(6, 0).size() == 1);
  // lex order: first tuple is (1,2,3), last is (4,5,6)
  CHECK(degree_basis(6, 3).front() == m123);
  CHECK(degree_basis(6, 3).back() == m456);
}

TEST_CASE("wedge basics") {
  CHECK(wedge(e({1}), e({2})) == e({1, 2}));
  MultiVector v = e({1}) + e({2});
  CHECK(wedge(v, v).is_zero());
  CHECK(wedge(e({1, 2, 3}), e({4, 5, 6})) == e({1, 2, 3, 4, 5, 6}));
  CHECK(wedge(e({1, 2}), e({3, 4}) + e({5, 6})) == e({1, 2, 3, 4}) + e({1, 2, 5, 6}));
  CHECK_THROWS_AS(wedge(e({1, 2, 3, 4}), e({3, 4, 5})), std::invalid_argument);
}

TEST_CASE("wedge graded commutativity, randomized") {
  Rng rng(20260819);
  for (int i = 0; i < kCases; ++i) {
    int n = std::uniform_int_distribution<int>(4, 6)(rng);
    int p = std::uniform_int_distribution<int>(0, n)(rng);
    int q = std::uniform_int_distribution<int>(0, n - p)(rng);
    MultiVector a = testutil::random_multivector(rng, n, p);
    MultiVector b = testutil::random_multivector(rng, n, q);
    MultiVector ab = wedge(a, b);
    MultiVector ba = wedge(b, a);
    if ((p * q) % 2 == 1) ba *= Scalar(-1);
    CHECK(ab == ba);
  }
}

TEST_CASE("wedge bilinearity and associativity, randomized") {
  Rng rng(77001);
  for (int i = 0; i < 300; ++i) {
    MultiVector a = testutil::random_multivector(rng, 6, 1);
    MultiVector b = testutil::random_multivector(rng, 6, 2);
    MultiVector c = testutil::random_multivector(rng, 6, 2);
    Scalar s = testutil::random_scalar(rng);
    CHECK(wedge(a, b + c * s) == wedge(a, b) + wedge(a, c) * s);
    CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
  }
}

TEST_CASE("symplectic form normalization and degenerate cases") {
  CHECK(symplectic_form(e({1, 2, 3}), e({4, 5, 6})) == Scalar(1));
  CHECK(symplectic_form(e({4, 5, 6}), e({1, 2, 3})) == Scalar(-1));
  CHECK(symplectic_form(e({1, 2, 3}), e({1, 2, 3})) == Scalar(0));
  CHECK(symplectic_form(e({1, 2, 4}), e({4, 5, 6})) == Scalar(0));
  CHECK_THROWS_AS(symplectic_form(e({1, 2}), e({4, 5, 6})), std::invalid_argument);
  CHECK_THROWS_AS(symplectic_form(MultiVector::basis(5, {1, 2, 3}), MultiVector::basis(5, {1, 2, 4})),
                  std::invalid_argument);
}

TEST_CASE("symplectic form antisymmetry, randomized") {
  Rng rng(31337);
  for (int i = 0; i < kCases; ++i) {
    MultiVector a = testutil::random_multivector(rng, 6, 3);
    MultiVector b = testutil::random_multivector(rng, 6, 3);
    CHECK(symplectic_form(a, b) == -symplectic_form(b, a));
    // agreement with the full wedge
    CHECK(symplectic_form(a, b) == wedge(a, b).coefficient(mask_from_indices({1, 2, 3, 4, 5, 6}, 6)));
  }
}

TEST_CASE("symplectic form is nondegenerate: 20x20 Gram has full rank") {
  const auto& basis = degree_basis(6, 3);
  QMat gram(20, 20);
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      gram.at(i, j) = symplectic_form(MultiVector::from_mask(6, 3, basis[i]),
                                      MultiVector::from_mask(6, 3, basis[j]));
    }
  }
  CHECK(gram.rank() == 20);
}

TEST_CASE("subspace span echelonizes canonically") {
  Subspace s = Subspace::span({e({1, 2, 3}), e({1, 2, 3}) + e({4, 5, 6}), e({4, 5, 6})});
  CHECK(s.dim() == 2);
  REQUIRE(s.basis().size() == 2);
  CHECK(s.basis()[0] == e({1, 2, 3}));
  CHECK(s.basis()[1] == e({4, 5, 6}));
  CHECK(s.contains(Scalar(7) * e({1, 2, 3}) - e({4, 5, 6})));
  CHECK_FALSE(s.contains(e({1, 2, 4})));

  Subspace full = Subspace::full(6, 3);
  CHECK(full.dim() == 20);
}

TEST_CASE("echelon determinism under permutation, randomized") {
  Rng rng(424242);
  for (int i = 0; i < kCases; ++i) {
    int n = std::uniform_int_distribution<int>(4, 6)(rng);
    int k = std::uniform_int_distribution<int>(1, 3)(rng);
    std::vector<MultiVector> gens;
    int count = std::uniform_int_distribution<int>(1, 6)(rng);
    for (int g = 0; g < count; ++g) gens.push_back(testutil::random_multivector(rng, n, k));
    Subspace s1 = Subspace::span(n, k, gens);
    std::shuffle(gens.begin(), gens.end(), rng);
    Subspace s2 = Subspace::span(n, k, gens);
    CHECK(s1 == s2);
  }
}

TEST_CASE("intersection examples and dimension bound") {
  Subspace a = Subspace::span({e({1, 2, 3})});
  Subspace b = Subspace::span({e({1, 2, 3}), e({4, 5, 6})});
  CHECK(intersect(a, b) == a);

  Rng rng(5150);
  for (int i = 0; i < 400; ++i) {
    int n = std::uniform_int_distribution<int>(4, 6)(rng);
    int k = std::uniform_int_distribution<int>(1, 3)(rng);
    int d = static_cast<int>(degree_basis(n, k).size());
    std::vector<MultiVector> ga, gb;
    for (int g = 0; g < 4; ++g) {
      ga.push_back(testutil::random_multivector(rng, n, k));
      gb.push_back(testutil::random_multivector(rng, n, k));
    }
    Subspace sa = Subspace::span(n, k, ga);
    Subspace sb = Subspace::span(n, k, gb);
    Subspace both = intersect(sa, sb);
    CHECK(both.dim() >= sa.dim() + sb.dim() - d);
    for (const auto& v : both.basis()) {
      CHECK(sa.contains(v));
      CHECK(sb.contains(v));
    }
    CHECK(subspace_sum(sa, sb).dim() == sa.dim() + sb.dim() - both.dim());
  }
}

TEST_CASE("kernel of wedge against a decomposable recovers its plane") {
  auto f = LinearMap::on_standard_basis(6, 1,
                                        [](const MultiVector& v) { return wedge(v, MultiVector::basis(6, {1, 2, 3})); });
  Subspace k = kernel(f);
  CHECK(k == Subspace::span({e({1}), e({2}), e({3})}));
}

TEST_CASE("image of tau -> e1 ^ tau on 2-vectors has dimension 10") {
  auto f = LinearMap::on_standard_basis(6, 2,
                                        [](const MultiVector& v) { return wedge(MultiVector::basis(6, {1}), v); });
  CHECK(f.image().dim() == 10);
}

TEST_CASE("graph_extract on one-dimensional graphs") {
  Subspace e1 = Subspace::span({e({1})});
  Subspace e2 = Subspace::span({e({2})});

  LinearMap f = graph_extract(Subspace::span({e({1}) + e({2})}), e1, e2);
  CHECK(f.apply(e({1})) == e({2}));

  LinearMap g = graph_extract(Subspace::span({e({1}) + Scalar(2) * e({2})}), e1, e2);
  CHECK(g.apply(e({1})) == Scalar(2) * e({2}));
}

TEST_CASE("graph_extract names the violated hypothesis") {
  Subspace e1 = Subspace::span({e({1})});
  Subspace e2 = Subspace::span({e({2})});
  Subspace e12 = Subspace::span({e({1}), e({2})});

  CHECK_THROWS_WITH_AS(graph_extract(Subspace::span({e({1}) + e({2})}), e12, e2),
                       doctest::Contains("dim W = dim E1 = dim E2"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(graph_extract(Subspace::span({e({1}) + e({2})}), e1, e1),
                       doctest::Contains("E1 ∩ E2 = 0"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(graph_extract(Subspace::span({e({3})}), e1, e2),
                       doctest::Contains("W ⊂ E1 ⊕ E2"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(graph_extract(Subspace::span({e({1})}), e1, e2),
                       doctest::Contains("W ∩ E1 = 0"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(graph_extract(Subspace::span({e({2})}), e1, e2),
                       doctest::Contains("W ∩ E2 = 0"), std::invalid_argument);
}

TEST_CASE("graph_extract round-trip over random maps, randomized") {
  Rng rng(909090);
  std::vector<MultiVector> left = {e({1}), e({2}), e({3})};
  std::vector<MultiVector> right = {e({4}), e({5}), e({6})};
  Subspace e_left = Subspace::span(left);
  Subspace e_right = Subspace::span(right);
  int done = 0;
  while (done < kCases) {
    QMat m = testutil::random_qmat(rng, 3, 3);
    if (m.det() == 0) continue;  // W ∩ E1 = 0 needs f injective
    ++done;
    std::vector<MultiVector> gens;
    for (int j = 0; j < 3; ++j) {
      MultiVector w = left[j];
      for (int i = 0; i < 3; ++i) w += m.at(i, j) * right[i];
      gens.push_back(w);
    }
    LinearMap f = graph_extract(Subspace::span(gens), e_left, e_right);
    for (int j = 0; j < 3; ++j) {
      MultiVector expected(6, 1);
      for (int i = 0; i < 3; ++i) expected += m.at(i, j) * right[i];
      CHECK(f.apply(left[j]) == expected);
    }
  }
}

TEST_CASE("contraction convention") {
  Mask m12 = mask_from_indices({1, 2}, 6);
  Mask m13 = mask_from_indices({1, 3}, 6);
  CHECK(contract_dual(m12, e({1, 2, 3})) == e({3}));
  CHECK(contract_dual(m13, e({1, 2, 3})) == -e({2}));
  CHECK(contract_dual(m12, e({1, 3, 4})).is_zero());
}

TEST_CASE("multivector json round-trip") {
  Json j = multivector_to_json(e({1, 2, 3}));
  CHECK(j.dump() == R"({"deg":3,"terms":[{"idx":[1,2,3],"num":"1","den":"1"}]})");

  Rng rng(60606);
  for (int i = 0; i < kCases; ++i) {
    int n = std::uniform_int_distribution<int>(4, 6)(rng);
    int k = std::uniform_int_distribution<int>(0, n)(rng);
    MultiVector v = testutil::random_multivector(rng, n, k);
    CHECK(multivector_from_json(multivector_to_json(v), n) == v);
  }
}

TEST_CASE("rational matrix helpers") {
  QMat d = QMat::from_rows({{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(2)}});
  auto cp = d.char_poly();  // x^2 - 3x + 2
  REQUIRE(cp.size() == 3);
  CHECK(cp[0] == Scalar(2));
  CHECK(cp[1] == Scalar(-3));
  CHECK(cp[2] == Scalar(1));
  CHECK(d.det() == Scalar(2));

  Rng rng(2024);
  for (int i = 0; i < 200; ++i) {
    QMat m = testutil::random_qmat(rng, 4, 4);
    if (m.det() == 0) continue;
    CHECK(m * m.inverse() == QMat::identity(4));
    auto ns = null_space(m);
    CHECK(ns.empty());
  }
  QMat singular = QMat::from_rows({{Scalar(1), Scalar(2)}, {Scalar(2), Scalar(4)}});
  CHECK(singular.rank() == 1);
  CHECK(null_space(singular).size() == 1);
  CHECK_THROWS_AS(singular.inverse(), std::invalid_argument);
}
