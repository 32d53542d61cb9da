#include "symfix/grassmann.hpp"

#include <random>
#include <stdexcept>

namespace symfix::grassmann {

using exalg::LinearMap;
using exalg::Mask;
using exalg::degree_basis;
using exalg::wedge;

Subspace annihilator(const MultiVector& alpha) {
  if (alpha.ambient() != 6 || alpha.degree() != 3) {
    throw std::invalid_argument("annihilator: expects a 3-vector with n = 6");
  }
  if (alpha.is_zero()) throw std::invalid_argument("annihilator: zero vector rejected");
  auto f = LinearMap::on_standard_basis(6, 1, [&](const MultiVector& v) { return wedge(v, alpha); });
  return kernel(f);
}

DecompVerdict is_decomposable(const MultiVector& alpha) {
  Subspace ann = annihilator(alpha);
  DecompVerdict verdict;
  if (ann.dim() != 3) return verdict;
  // Witness sanity: the wedge of the annihilator basis is proportional to alpha.
  MultiVector plane = wedge(wedge(ann.basis()[0], ann.basis()[1]), ann.basis()[2]);
  Mask pivot = alpha.terms().begin()->first;
  Scalar ratio = plane.coefficient(pivot);
  if (ratio == 0 || plane * alpha.coefficient(pivot) != alpha * ratio) {
    throw std::logic_error("is_decomposable: annihilator witness failed to reproduce the input");
  }
  verdict.decomposable = true;
  verdict.witness_plane = std::move(ann);
  return verdict;
}

bool contraction_criterion(const MultiVector& alpha) {
  if (alpha.ambient() != 6 || alpha.degree() != 3) {
    throw std::invalid_argument("contraction_criterion: expects a 3-vector with n = 6");
  }
  if (alpha.is_zero()) throw std::invalid_argument("contraction_criterion: zero vector rejected");
  for (Mask psi : degree_basis(6, 2)) {
    MultiVector contracted = exalg::contract_dual(psi, alpha);
    if (!wedge(contracted, alpha).is_zero()) return false;
  }
  return true;
}

std::optional<MultiVector> decomposable_witness_in(const Subspace& a, int budget,
                                                   std::uint64_t seed) {
  if (a.dim() == 0) throw std::invalid_argument("decomposable_witness_in: zero subspace");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-9, 9);
  for (int trial = 0; trial < budget; ++trial) {
    MultiVector candidate(a.ambient(), a.degree());
    for (const auto& b : a.basis()) {
      int c = coeff(rng);
      if (c != 0) candidate += Scalar(c) * b;
    }
    if (candidate.is_zero()) continue;
    if (is_decomposable(candidate).decomposable) return candidate;
  }
  return std::nullopt;
}

}  // namespace symfix::grassmann
