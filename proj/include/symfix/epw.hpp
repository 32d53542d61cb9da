#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symfix/multivector.hpp"
#include "symfix/polynomial.hpp"
#include "symfix/qmat.hpp"
#include "symfix/report.hpp"
#include "symfix/subspace.hpp"

namespace symfix::epw {

using exalg::Mask;
using exalg::MultiVector;
using exalg::QMat;
using exalg::Subspace;

/// Involution of a 6-dimensional space acting as +1 on the span of the first
/// `dim_plus` basis vectors and as -1 on the rest. The only census-bearing
/// case is dim_plus = 4 (V+ = <e1..e4>, f1 = e5, f2 = e6); 3 and 5 exist for
/// the smoothness-obstruction verdicts.
class InvolutionSplit {
 public:
  explicit InvolutionSplit(int dim_plus = 4);

  int dim_plus() const { return dim_plus_; }
  int dim_minus() const { return 6 - dim_plus_; }
  /// Sign of the induced action on a basis tuple: (-1)^(minus indices used).
  int sign_of_mask(Mask m) const;
  MultiVector apply(const MultiVector& a) const;
  /// +1 and -1 eigenblocks of the induced action on the degree-k piece.
  Subspace plus_block(int degree) const;
  Subspace minus_block(int degree) const;
  /// Dimension of the +1 eigenblock by binomial bookkeeping (cross-checked
  /// against the subspace in tests).
  int plus_block_dim(int degree) const;

 private:
  int dim_plus_;
};

/// f1 = e5 and f2 = e6 of the standard split.
MultiVector f1_vector();
MultiVector f2_vector();

/// Lexicographic basis tuples of the 6-dimensional space of 2-vectors on
/// V+ = <e1..e4>: (e12, e13, e14, e23, e24, e34).
const std::vector<Mask>& wedge2_plus_basis();
MultiVector wedge2_from_coords(const std::vector<Scalar>& coords);
/// Coordinates in that basis; rejects terms outside V+.
std::vector<Scalar> wedge2_to_coords(const MultiVector& x);

/// Gram matrix of the pairing Q(x, y) = coefficient of e1234 in x ^ y on the
/// 2-vectors of V+.
const QMat& plucker_gram();
Scalar plucker_form(const MultiVector& x, const MultiVector& y);

/// Operator on the 2-vectors of V+, self-adjoint for the Pluecker pairing:
/// Q(u(x), y) = Q(x, u(y)). Construction rejects non-self-adjoint input,
/// naming a violating basis pair.
class SelfAdjointOp {
 public:
  static SelfAdjointOp from_matrix(const QMat& m);
  /// u with the given eigenvalues and eigenvector columns (exact spectral
  /// data is kept for downstream exact eigen computations).
  static SelfAdjointOp from_spectral(const std::vector<Scalar>& eigenvalues,
                                     const QMat& eigenvector_columns);

  const QMat& matrix() const { return mat_; }
  MultiVector apply(const MultiVector& x) const;
  /// Characteristic polynomial, coefficients ascending, monic.
  poly::UniPoly char_poly() const;
  /// Exact test that all six complex eigenvalues are simple (squarefree
  /// characteristic polynomial); never needs the roots themselves.
  bool distinct_eigenvalues() const;
  bool invertible() const;

  struct EigenComponent {
    Scalar value;
    int multiplicity = 0;                // multiplicity as a root
    std::vector<MultiVector> space;      // exact eigenspace basis
  };
  struct EigenData {
    std::vector<EigenComponent> components;  // sorted by eigenvalue
    bool split_over_q = false;               // all six roots are rational
  };
  const EigenData& eigen_data() const;

 private:
  SelfAdjointOp() = default;
  void validate_self_adjoint() const;
  QMat mat_;
  mutable std::optional<EigenData> eigen_;
};

/// Certificates about u alone: six distinct eigenvalues (exact) and no
/// decomposable eigenvector (exact when the eigenvalues are rational,
/// numeric with residual bounds otherwise).
std::vector<Certificate> operator_certificates(const SelfAdjointOp& u);

/// The dual degree-3 tuples: ehat_i with e_i ^ ehat_j = delta_ij e1234.
MultiVector dual_three_form(int i);  // i in 1..4

/// Symmetric map phi from V+ to its 3-vectors, determined by a symmetric
/// invertible 4x4 matrix B via phi(v) = sum_j (Bv)_j ehat_j, so that
/// B(v, w) = coefficient of e1234 in v ^ phi(w). Construction rejects
/// asymmetric or singular B.
class SymmetricPhi {
 public:
  static SymmetricPhi from_matrix(const QMat& b);
  const QMat& matrix() const { return b_; }
  MultiVector apply(const MultiVector& v) const;  // v of degree 1 in V+

 private:
  SymmetricPhi() = default;
  QMat b_;
};

/// Minus part of the invariant Lagrangian: the graph
/// {f1 ^ x + f2 ^ u(x) : x a 2-vector of V+}, inside the -1 eigenblock of
/// the 3-vectors.
Subspace build_A_minus(const SelfAdjointOp& u);
/// Plus part: {f1 ^ f2 ^ v + phi(v) : v in V+}, inside the +1 eigenblock.
Subspace build_A_plus(const SymmetricPhi& phi);

struct InvariantLagrangian {
  SelfAdjointOp u;
  SymmetricPhi phi;
  Subspace a_plus;
  Subspace a_minus;
  Subspace a;
};
InvariantLagrangian assemble(const SelfAdjointOp& u, const SymmetricPhi& phi);

/// The structured-family membership test: dimension, isotropy, the two
/// openness conditions on the minus part, spectral conditions on u, and the
/// graph conditions on the plus part — each certified separately.
struct LGStarReport {
  std::vector<Certificate> certificates;
  bool all_passed() const {
    return first_failure(certificates) == nullptr;
  }
};
LGStarReport check_LG_star(const InvariantLagrangian& a);

/// dim((v ^ Lambda^2 V) ∩ A) for a nonzero vector v: positive exactly on
/// the degeneracy locus, 2 and more on its singular locus.
int fiber_dim(const MultiVector& v, const Subspace& a);

/// Fiber split into the two eigenblocks; `splits` records whether the parts
/// add up to the full fiber (they do when v lies in V+ or in V-).
struct FiberSplit {
  int total = 0;
  int plus_part = 0;
  int minus_part = 0;
  bool splits = false;
};
FiberSplit fiber_dim_split(const MultiVector& v, const InvariantLagrangian& a);

/// The six isolated fixed candidates on the line P(V-): the points
/// f1 + lambda f2 over the eigenvalues of u. Requires six distinct rational
/// eigenvalues (u = identity is rejected).
struct EigenPoint {
  Scalar lambda;
  MultiVector point;
  int fiber = 0;
};
std::vector<EigenPoint> eigen_fixed_points(const InvariantLagrangian& a);

/// The quadric v ^ phi(v) = 0 on P(V+); smooth exactly when B is invertible.
struct QuadricReport {
  QMat matrix;
  Scalar det;
  bool smooth = false;
};
QuadricReport quadric_of_matrix(const QMat& b);
QuadricReport quadric_of_phi(const SymmetricPhi& phi);

/// dim((v ^ V+) ∩ u^{-1}(v ^ V+)) inside the 2-vectors of V+, for a nonzero
/// v in V+: 1 on the degree-4 surface S(u), 2 at its sixteen nodes.
int kummer_membership(const MultiVector& v, const SelfAdjointOp& u);

/// Simultaneous diagonalization of the quadric line complex: G from the
/// Pluecker pairing, F from x ^ u(x), H = F G^{-1} F, with the eigenbasis of
/// u as the diagonalizing frame. In the diagonal coordinates the three forms
/// are sum q_i X_i^2, sum q_i lambda_i X_i^2, sum q_i lambda_i^2 X_i^2.
struct LineComplexNormalForm {
  std::vector<Scalar> eigenvalues;
  QMat p0;                    // eigenvector columns
  std::vector<Scalar> q_diag; // diagonal of P0^T G P0, all nonzero
  QMat g, f, h;
};
LineComplexNormalForm line_complex_normal_form(const SelfAdjointOp& u);

/// Numeric sample points of the 2-dimensional base locus G ∩ F ∩ H, with the
/// largest relative residual of the three forms over the samples.
struct SigmaSamples {
  std::vector<std::array<std::complex<double>, 6>> points;
  double max_residual = 0.0;
};
SigmaSamples sample_line_complex_intersection(const LineComplexNormalForm& nf, int count,
                                              std::uint64_t seed);

struct NodeSearchConfig {
  std::uint64_t seed = 42;
  int starts = 600;          // Newton starts per chart
  int max_iterations = 120;
  double residual_tol = 1e-10;
  double dedupe_tol = 1e-6;
  int max_charts = 4;
  int branch_samples = 12;
  int threads = 0;           // 0 = hardware concurrency
};

struct KummerNode {
  std::array<std::complex<double>, 4> v;  // projective representative, max coordinate 1
  double s_residual = 0.0;                // |normalized chart quartic| at the node
  double sigma5 = 0.0;                    // rank-4 certificate: sigma_5 / sigma_1 of M(v)
  bool rational_certified = false;        // exact membership 2 after rationalization
  std::optional<std::array<std::string, 4>> rational_point;
};

struct NodeCensus {
  std::vector<KummerNode> nodes;
  int charts_used = 0;
  int quartic_degree = 0;        // exact total degree of the chart polynomial
  int generic_line_roots = 0;    // degree of the restriction to a random rational line
  double min_quadric_value = 0.0;
  double branch_min_jacobian_sigma = 0.0;
  std::vector<Certificate> certificates;
  bool all_passed() const { return first_failure(certificates) == nullptr; }
};

/// Complex multistart Newton search for the critical points of the exact
/// chart quartic of S(u), filtered by the rank-4 certificate, deduplicated
/// projectively, merged across charts, with genericity certificates.
NodeCensus node_census(const InvariantLagrangian& a, const NodeSearchConfig& config);

struct FixedLocusDownstairs {
  LGStarReport lg_star;
  std::vector<EigenPoint> eigen_points;
  QuadricReport quadric;
  NodeCensus kummer;
};
FixedLocusDownstairs fixed_locus_downstairs(const InvariantLagrangian& a,
                                            const NodeSearchConfig& config);

/// Census of the fixed locus upstairs on the double cover: two points over
/// each of the six eigen points (off the branch divisor), one point over
/// each of the sixteen nodes (on it), and the double cover of the quadric as
/// the one fixed K3. Throws when a downstairs precondition failed.
CensusReport census_upstairs(const FixedLocusDownstairs& fl);

/// Dimension-count verdicts for the three candidate splits: 3 and 5 are
/// obstructed, 4 is admissible.
struct ObstructionVerdict {
  int dim_plus = 0;
  bool obstructed = false;
  std::string witness;
};
ObstructionVerdict smoothness_obstruction(int dim_plus);

/// The bundled reference instance: u with hyperbolic-pair spectral data and
/// eigenvalues 1..6, phi with a fixed symmetric invertible B whose quadric
/// carries a rational point.
InvariantLagrangian reference_instance();

}  // namespace symfix::epw
