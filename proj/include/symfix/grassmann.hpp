#pragma once

#include <cstdint>
#include <optional>

#include "symfix/subspace.hpp"

namespace symfix::grassmann {

using exalg::MultiVector;
using exalg::Subspace;

/// Outcome of a decomposability test on a 3-vector. When decomposable, the
/// witness plane is the 3-dimensional annihilator; the wedge of any basis of
/// it reproduces the tested vector up to a nonzero scalar.
struct DecompVerdict {
  bool decomposable = false;
  std::optional<Subspace> witness_plane;
};

/// {v in V : v ∧ alpha = 0} for nonzero alpha in ∧³V, n = 6. Dimension is
/// at most 3, with equality exactly on the decomposable locus.
Subspace annihilator(const MultiVector& alpha);

/// Primary criterion: alpha is decomposable iff its annihilator has
/// dimension 3. Cross-checked in the test suite against
/// contraction_criterion below, which is an independent implementation.
DecompVerdict is_decomposable(const MultiVector& alpha);

/// Independent Plücker-style criterion: alpha is decomposable iff
/// (ι_ψ alpha) ∧ alpha = 0 for every ψ in a basis of (∧²V)*. Kept separate
/// from is_decomposable on purpose; the two must never be merged.
bool contraction_criterion(const MultiVector& alpha);

/// Random search for a decomposable element among rational combinations of
/// the basis of A. Deterministic given (budget, seed). Absence of a witness
/// is not a proof of emptiness.
std::optional<MultiVector> decomposable_witness_in(const Subspace& a, int budget,
                                                   std::uint64_t seed);

}  // namespace symfix::grassmann
