#include "symfix/epw.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace symfix::epw {

using exalg::degree_basis;
using exalg::mask_from_indices;
using exalg::null_space;
using exalg::symplectic_form;
using exalg::tuple_indices;
using exalg::wedge;

namespace {

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

std::string tuple_name(Mask m) {
  std::string s = "e_";
  for (int i : tuple_indices(m)) s += std::to_string(i);
  return s;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string fmt_complex(const std::complex<double>& z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

}  // namespace

// ---------------------------------------------------------------- split

InvolutionSplit::InvolutionSplit(int dim_plus) : dim_plus_(dim_plus) {
  if (dim_plus < 3 || dim_plus > 5)
    throw std::invalid_argument("InvolutionSplit: dim_plus must be 3, 4 or 5");
}

int InvolutionSplit::sign_of_mask(Mask m) const {
  int minus_count = 0;
  for (int i : tuple_indices(m))
    if (i > dim_plus_) ++minus_count;
  return minus_count % 2 == 0 ? 1 : -1;
}

MultiVector InvolutionSplit::apply(const MultiVector& a) const {
  MultiVector out(a.ambient(), a.degree());
  for (const auto& [m, c] : a.terms())
    out.add_term(m, sign_of_mask(m) > 0 ? c : Scalar(-c));
  return out;
}

Subspace InvolutionSplit::plus_block(int degree) const {
  std::vector<MultiVector> gens;
  for (Mask m : degree_basis(6, degree))
    if (sign_of_mask(m) > 0) gens.push_back(MultiVector::from_mask(6, degree, m));
  return Subspace::span(6, degree, gens);
}

Subspace InvolutionSplit::minus_block(int degree) const {
  std::vector<MultiVector> gens;
  for (Mask m : degree_basis(6, degree))
    if (sign_of_mask(m) < 0) gens.push_back(MultiVector::from_mask(6, degree, m));
  return Subspace::span(6, degree, gens);
}

int InvolutionSplit::plus_block_dim(int degree) const {
  long total = 0;
  for (int j = 0; j <= degree; j += 2)
    total += binomial(dim_plus_, degree - j) * binomial(dim_minus(), j);
  return static_cast<int>(total);
}

// ---------------------------------------------------------------- bases

MultiVector f1_vector() { return MultiVector::basis(6, {5}); }
MultiVector f2_vector() { return MultiVector::basis(6, {6}); }

const std::vector<Mask>& wedge2_plus_basis() {
  static const std::vector<Mask> basis = [] {
    std::vector<Mask> out;
    for (Mask m : degree_basis(6, 2))
      if ((m & ~Mask{0xF}) == 0) out.push_back(m);
    return out;
  }();
  return basis;
}

MultiVector wedge2_from_coords(const std::vector<Scalar>& coords) {
  const auto& basis = wedge2_plus_basis();
  if (coords.size() != basis.size())
    throw std::invalid_argument("wedge2_from_coords: expected 6 coordinates");
  MultiVector out(6, 2);
  for (size_t i = 0; i < basis.size(); ++i) out.add_term(basis[i], coords[i]);
  return out;
}

std::vector<Scalar> wedge2_to_coords(const MultiVector& x) {
  if (x.ambient() != 6 || x.degree() != 2)
    throw std::invalid_argument("wedge2_to_coords: expected a 2-vector in a 6-space");
  const auto& basis = wedge2_plus_basis();
  std::vector<Scalar> coords(basis.size(), Scalar(0));
  for (const auto& [m, c] : x.terms()) {
    if ((m & ~Mask{0xF}) != 0)
      throw std::invalid_argument("wedge2_to_coords: term " + tuple_name(m) +
                                  " lies outside the 2-vectors of V+");
    auto it = std::find(basis.begin(), basis.end(), m);
    coords[static_cast<size_t>(it - basis.begin())] = c;
  }
  return coords;
}

const QMat& plucker_gram() {
  static const QMat gram = [] {
    const auto& basis = wedge2_plus_basis();
    QMat g(6, 6);
    Mask full = mask_from_indices({1, 2, 3, 4}, 6);
    for (size_t i = 0; i < basis.size(); ++i)
      for (size_t j = 0; j < basis.size(); ++j)
        if ((basis[i] | basis[j]) == full && (basis[i] & basis[j]) == 0)
          g.at(static_cast<int>(i), static_cast<int>(j)) =
              exalg::wedge_sign(basis[i], basis[j]);
    return g;
  }();
  return gram;
}

Scalar plucker_form(const MultiVector& x, const MultiVector& y) {
  for (const MultiVector* v : {&x, &y})
    for (const auto& [m, c] : v->terms())
      if ((m & ~Mask{0xF}) != 0)
        throw std::invalid_argument("plucker_form: arguments must be 2-vectors of V+");
  MultiVector prod = wedge(x, y);
  return prod.coefficient(mask_from_indices({1, 2, 3, 4}, 6));
}

// ---------------------------------------------------------------- u

void SelfAdjointOp::validate_self_adjoint() const {
  if (mat_.rows() != 6 || mat_.cols() != 6)
    throw std::invalid_argument("SelfAdjointOp: matrix must be 6x6");
  const QMat& g = plucker_gram();
  QMat left = mat_.transpose() * g;  // Q(u(b_i), b_j)
  QMat right = g * mat_;             // Q(b_i, u(b_j))
  if (left == right) return;
  const auto& basis = wedge2_plus_basis();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (left.at(i, j) != right.at(i, j)) {
        throw std::invalid_argument(
            "SelfAdjointOp: not self-adjoint for the Pluecker pairing: Q(u(" +
            tuple_name(basis[static_cast<size_t>(i)]) + "), " +
            tuple_name(basis[static_cast<size_t>(j)]) + ") = " +
            scalar_to_string(left.at(i, j)) + " but Q(" +
            tuple_name(basis[static_cast<size_t>(i)]) + ", u(" +
            tuple_name(basis[static_cast<size_t>(j)]) + ")) = " +
            scalar_to_string(right.at(i, j)));
      }
  throw std::logic_error("SelfAdjointOp: inconsistent self-adjointness check");
}

SelfAdjointOp SelfAdjointOp::from_matrix(const QMat& m) {
  SelfAdjointOp u;
  u.mat_ = m;
  u.validate_self_adjoint();
  return u;
}

SelfAdjointOp SelfAdjointOp::from_spectral(const std::vector<Scalar>& eigenvalues,
                                           const QMat& eigenvector_columns) {
  if (eigenvalues.size() != 6)
    throw std::invalid_argument("SelfAdjointOp::from_spectral: need 6 eigenvalues");
  if (eigenvector_columns.rows() != 6 || eigenvector_columns.cols() != 6)
    throw std::invalid_argument("SelfAdjointOp::from_spectral: eigenvector matrix must be 6x6");
  QMat lambda(6, 6);
  for (int i = 0; i < 6; ++i) lambda.at(i, i) = eigenvalues[static_cast<size_t>(i)];
  QMat x = eigenvector_columns;
  QMat m = x * lambda * x.inverse();
  SelfAdjointOp u;
  u.mat_ = m;
  u.validate_self_adjoint();

  EigenData data;
  data.split_over_q = true;
  std::map<Scalar, std::vector<MultiVector>> grouped;
  for (int i = 0; i < 6; ++i)
    grouped[eigenvalues[static_cast<size_t>(i)]].push_back(wedge2_from_coords(x.col(i)));
  for (auto& [value, space] : grouped) {
    EigenComponent comp;
    comp.value = value;
    comp.multiplicity = static_cast<int>(space.size());
    comp.space = std::move(space);
    data.components.push_back(std::move(comp));
  }
  u.eigen_ = std::move(data);
  return u;
}

MultiVector SelfAdjointOp::apply(const MultiVector& x) const {
  return wedge2_from_coords(mat_.apply(wedge2_to_coords(x)));
}

poly::UniPoly SelfAdjointOp::char_poly() const { return mat_.char_poly(); }

bool SelfAdjointOp::distinct_eigenvalues() const { return poly::squarefree(char_poly()); }

bool SelfAdjointOp::invertible() const { return mat_.det() != 0; }

const SelfAdjointOp::EigenData& SelfAdjointOp::eigen_data() const {
  if (eigen_) return *eigen_;
  EigenData data;
  poly::RationalRoots roots = poly::rational_roots(char_poly());
  data.split_over_q = roots.complete();
  std::vector<Scalar> distinct;
  for (const auto& r : roots.roots)
    if (distinct.empty() || distinct.back() != r) distinct.push_back(r);
  for (const auto& value : distinct) {
    EigenComponent comp;
    comp.value = value;
    comp.multiplicity = static_cast<int>(
        std::count(roots.roots.begin(), roots.roots.end(), value));
    QMat shifted = mat_ - QMat::identity(6).scaled(value);
    for (const auto& vec : null_space(shifted)) comp.space.push_back(wedge2_from_coords(vec));
    data.components.push_back(std::move(comp));
  }
  eigen_ = std::move(data);
  return *eigen_;
}

std::vector<Certificate> operator_certificates(const SelfAdjointOp& u) {
  std::vector<Certificate> certs;

  {
    Certificate c;
    c.name = "u has 6 distinct eigenvalues";
    poly::UniPoly p = u.char_poly();
    poly::UniPoly g = poly::gcd(p, poly::derivative(p));
    c.passed = poly::degree(g) == 0;
    c.detail = c.passed
                   ? "characteristic polynomial is squarefree"
                   : "characteristic polynomial shares a factor of degree " +
                         std::to_string(poly::degree(g)) + " with its derivative";
    certs.push_back(std::move(c));
  }

  {
    Certificate c;
    c.name = "no eigenvector of u is decomposable";
    const auto& ed = u.eigen_data();
    if (ed.split_over_q) {
      c.passed = true;
      Scalar min_norm(0);
      bool first = true;
      for (const auto& comp : ed.components) {
        if (comp.multiplicity >= 2 || comp.space.size() >= 2) {
          c.passed = false;
          c.detail = "the eigenspace for eigenvalue " + scalar_to_string(comp.value) +
                     " has dimension >= 2 and a pencil of 2-vectors always contains a "
                     "decomposable one";
          break;
        }
        if (comp.space.empty()) continue;
        Scalar q = plucker_form(comp.space[0], comp.space[0]);
        if (q == 0) {
          c.passed = false;
          c.detail = "eigenvector for eigenvalue " + scalar_to_string(comp.value) +
                     " satisfies x ^ x = 0 (decomposable)";
          break;
        }
        Scalar aq = q > 0 ? q : Scalar(-q);
        if (first || aq < min_norm) min_norm = aq;
        first = false;
      }
      if (c.passed)
        c.detail = "exact: every rational eigenvector has x ^ x != 0 (min |Q(x,x)| = " +
                   scalar_to_string(min_norm) + ")";
    } else {
      // Irrational eigenvalues: numeric eigenvectors with residual bounds.
      Eigen::MatrixXd m(6, 6);
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) m(i, j) = scalar_to_double(u.matrix().at(i, j));
      Eigen::MatrixXd g(6, 6);
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) g(i, j) = scalar_to_double(plucker_gram().at(i, j));
      Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
      double min_q = 1e300, max_res = 0.0;
      for (int k = 0; k < 6; ++k) {
        Eigen::VectorXcd x = solver.eigenvectors().col(k);
        std::complex<double> lambda = solver.eigenvalues()(k);
        double res = (m.cast<std::complex<double>>() * x - lambda * x).norm() / x.norm();
        max_res = std::max(max_res, res);
        std::complex<double> q = x.transpose() * g.cast<std::complex<double>>() * x;
        min_q = std::min(min_q, std::abs(q) / x.squaredNorm());
      }
      c.passed = max_res <= 1e-8 && min_q >= 1e-8;
      c.detail = "numeric: min |Q(x,x)|/|x|^2 = " + fmt_double(min_q) +
                 ", max eigenpair residual = " + fmt_double(max_res);
    }
    certs.push_back(std::move(c));
  }

  return certs;
}

// ---------------------------------------------------------------- phi

MultiVector dual_three_form(int i) {
  switch (i) {
    case 1: return MultiVector::basis(6, {2, 3, 4});
    case 2: return -MultiVector::basis(6, {1, 3, 4});
    case 3: return MultiVector::basis(6, {1, 2, 4});
    case 4: return -MultiVector::basis(6, {1, 2, 3});
    default: throw std::invalid_argument("dual_three_form: index must be 1..4");
  }
}

SymmetricPhi SymmetricPhi::from_matrix(const QMat& b) {
  if (b.rows() != 4 || b.cols() != 4)
    throw std::invalid_argument("SymmetricPhi: matrix must be 4x4");
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (b.at(i, j) != b.at(j, i))
        throw std::invalid_argument(
            "SymmetricPhi: not symmetric: B[" + std::to_string(i + 1) + "][" +
            std::to_string(j + 1) + "] = " + scalar_to_string(b.at(i, j)) + " but B[" +
            std::to_string(j + 1) + "][" + std::to_string(i + 1) + "] = " +
            scalar_to_string(b.at(j, i)));
  if (b.det() == 0)
    throw std::invalid_argument(
        "SymmetricPhi: singular (det B = 0); rejected because the plus part would not be "
        "a graph and the associated quadric would not be smooth");
  SymmetricPhi phi;
  phi.b_ = b;
  return phi;
}

MultiVector SymmetricPhi::apply(const MultiVector& v) const {
  if (v.ambient() != 6 || v.degree() != 1)
    throw std::invalid_argument("SymmetricPhi::apply: expected a vector");
  std::vector<Scalar> coords(4, Scalar(0));
  for (const auto& [m, c] : v.terms()) {
    int idx = tuple_indices(m)[0];
    if (idx > 4)
      throw std::invalid_argument("SymmetricPhi::apply: vector must lie in V+");
    coords[static_cast<size_t>(idx - 1)] = c;
  }
  std::vector<Scalar> image = b_.apply(coords);
  MultiVector out(6, 3);
  for (int j = 1; j <= 4; ++j) out += image[static_cast<size_t>(j - 1)] * dual_three_form(j);
  return out;
}

// ---------------------------------------------------------------- A

Subspace build_A_minus(const SelfAdjointOp& u) {
  MultiVector f1 = f1_vector(), f2 = f2_vector();
  std::vector<MultiVector> gens;
  for (Mask m : wedge2_plus_basis()) {
    MultiVector x = MultiVector::from_mask(6, 2, m);
    gens.push_back(wedge(f1, x) + wedge(f2, u.apply(x)));
  }
  Subspace s = Subspace::span(6, 3, gens);
  if (s.dim() != 6) throw std::logic_error("build_A_minus: graph subspace has wrong dimension");
  return s;
}

Subspace build_A_plus(const SymmetricPhi& phi) {
  MultiVector f12 = wedge(f1_vector(), f2_vector());
  std::vector<MultiVector> gens;
  for (int i = 1; i <= 4; ++i) {
    MultiVector v = MultiVector::basis(6, {i});
    gens.push_back(wedge(f12, v) + phi.apply(v));
  }
  Subspace s = Subspace::span(6, 3, gens);
  if (s.dim() != 4) throw std::logic_error("build_A_plus: graph subspace has wrong dimension");
  return s;
}

InvariantLagrangian assemble(const SelfAdjointOp& u, const SymmetricPhi& phi) {
  InvariantLagrangian a{u, phi, build_A_plus(phi), build_A_minus(u), Subspace(6, 3)};
  a.a = exalg::subspace_sum(a.a_plus, a.a_minus);
  if (a.a.dim() != a.a_plus.dim() + a.a_minus.dim())
    throw std::logic_error("assemble: plus and minus parts are not independent");
  return a;
}

LGStarReport check_LG_star(const InvariantLagrangian& a) {
  LGStarReport report;

  {
    Certificate c;
    c.name = "A has dimension 10";
    c.passed = a.a.dim() == 10;
    c.detail = "dim A = " + std::to_string(a.a.dim());
    report.certificates.push_back(std::move(c));
  }

  {
    Certificate c;
    c.name = "A is isotropic for the wedge pairing";
    c.passed = true;
    const auto& basis = a.a.basis();
    for (size_t i = 0; i < basis.size() && c.passed; ++i)
      for (size_t j = i; j < basis.size() && c.passed; ++j) {
        Scalar w = symplectic_form(basis[i], basis[j]);
        if (w != 0) {
          c.passed = false;
          c.detail = "basis pair (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                     ") pairs to " + scalar_to_string(w);
        }
      }
    if (c.passed)
      c.detail = "all " + std::to_string(basis.size() * (basis.size() + 1) / 2) +
                 " basis pairs wedge to zero";
    report.certificates.push_back(std::move(c));
  }

  for (int which = 1; which <= 2; ++which) {
    Certificate c;
    c.name = std::string("A- meets f") + std::to_string(which) + " ^ Lambda^2 V+ only in 0";
    MultiVector f = which == 1 ? f1_vector() : f2_vector();
    std::vector<MultiVector> gens;
    for (Mask m : wedge2_plus_basis()) gens.push_back(wedge(f, MultiVector::from_mask(6, 2, m)));
    int d = exalg::intersect(a.a_minus, Subspace::span(6, 3, gens)).dim();
    c.passed = d == 0;
    c.detail = "intersection dimension = " + std::to_string(d);
    report.certificates.push_back(std::move(c));
  }

  for (auto& c : operator_certificates(a.u)) report.certificates.push_back(std::move(c));

  {
    Certificate c;
    c.name = "A+ meets Lambda^3 V+ only in 0";
    std::vector<MultiVector> gens;
    for (Mask m : degree_basis(6, 3))
      if ((m & ~Mask{0xF}) == 0) gens.push_back(MultiVector::from_mask(6, 3, m));
    int d = exalg::intersect(a.a_plus, Subspace::span(6, 3, gens)).dim();
    c.passed = d == 0;
    c.detail = "intersection dimension = " + std::to_string(d);
    report.certificates.push_back(std::move(c));
  }

  {
    Certificate c;
    c.name = "A+ meets V+ ^ f1 ^ f2 only in 0";
    MultiVector f12 = wedge(f1_vector(), f2_vector());
    std::vector<MultiVector> gens;
    for (int i = 1; i <= 4; ++i) gens.push_back(wedge(f12, MultiVector::basis(6, {i})));
    int d = exalg::intersect(a.a_plus, Subspace::span(6, 3, gens)).dim();
    c.passed = d == 0;
    c.detail = "intersection dimension = " + std::to_string(d);
    report.certificates.push_back(std::move(c));
  }

  return report;
}

// ---------------------------------------------------------------- fibers

int fiber_dim(const MultiVector& v, const Subspace& a) {
  if (v.ambient() != 6 || v.degree() != 1 || v.is_zero())
    throw std::invalid_argument("fiber_dim: v must be a nonzero vector");
  if (a.ambient() != 6 || a.degree() != 3)
    throw std::invalid_argument("fiber_dim: subspace must consist of 3-vectors");
  std::vector<MultiVector> gens;
  for (Mask m : degree_basis(6, 2)) gens.push_back(wedge(v, MultiVector::from_mask(6, 2, m)));
  return exalg::intersect(Subspace::span(6, 3, gens), a).dim();
}

FiberSplit fiber_dim_split(const MultiVector& v, const InvariantLagrangian& a) {
  FiberSplit out;
  std::vector<MultiVector> gens;
  for (Mask m : degree_basis(6, 2)) gens.push_back(wedge(v, MultiVector::from_mask(6, 2, m)));
  Subspace fv = Subspace::span(6, 3, gens);
  out.total = exalg::intersect(fv, a.a).dim();
  out.plus_part = exalg::intersect(fv, a.a_plus).dim();
  out.minus_part = exalg::intersect(fv, a.a_minus).dim();
  out.splits = out.total == out.plus_part + out.minus_part;
  return out;
}

std::vector<EigenPoint> eigen_fixed_points(const InvariantLagrangian& a) {
  const auto& ed = a.u.eigen_data();
  if (!ed.split_over_q)
    throw std::invalid_argument(
        "eigen_fixed_points: the characteristic polynomial of u does not split over Q; "
        "exact eigen points unavailable");
  if (ed.components.size() != 6)
    throw std::invalid_argument(
        "eigen_fixed_points: u must have 6 distinct eigenvalues (found " +
        std::to_string(ed.components.size()) + " distinct)");
  std::vector<EigenPoint> points;
  for (const auto& comp : ed.components) {
    EigenPoint p{comp.value, f1_vector() + comp.value * f2_vector(), 0};
    p.fiber = fiber_dim(p.point, a.a);
    points.push_back(std::move(p));
  }
  return points;
}

QuadricReport quadric_of_matrix(const QMat& b) {
  if (b.rows() != 4 || b.cols() != 4)
    throw std::invalid_argument("quadric_of_matrix: matrix must be 4x4");
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (b.at(i, j) != b.at(j, i))
        throw std::invalid_argument("quadric_of_matrix: matrix must be symmetric");
  QuadricReport q;
  q.matrix = b;
  q.det = b.det();
  q.smooth = q.det != 0;
  return q;
}

QuadricReport quadric_of_phi(const SymmetricPhi& phi) { return quadric_of_matrix(phi.matrix()); }

int kummer_membership(const MultiVector& v, const SelfAdjointOp& u) {
  if (v.ambient() != 6 || v.degree() != 1 || v.is_zero())
    throw std::invalid_argument("kummer_membership: v must be a nonzero vector of V+");
  for (const auto& [m, c] : v.terms())
    if ((m & ~Mask{0xF}) != 0)
      throw std::invalid_argument("kummer_membership: v must be a nonzero vector of V+");

  // Columns of w1: coordinates of v ^ e_j, j = 1..4.
  QMat w1(6, 4);
  for (int j = 1; j <= 4; ++j) {
    std::vector<Scalar> col = wedge2_to_coords(wedge(v, MultiVector::basis(6, {j})));
    for (int r = 0; r < 6; ++r) w1.at(r, j - 1) = col[static_cast<size_t>(r)];
  }

  // Preimage {x : u(x) in col(w1)} as the x-part of the null space of [U | -w1].
  QMat stacked(6, 10);
  for (int r = 0; r < 6; ++r) {
    for (int ccol = 0; ccol < 6; ++ccol) stacked.at(r, ccol) = u.matrix().at(r, ccol);
    for (int ccol = 0; ccol < 4; ++ccol) stacked.at(r, 6 + ccol) = -w1.at(r, ccol);
  }
  std::vector<std::vector<Scalar>> ns = null_space(stacked);
  QMat pre(6, static_cast<int>(ns.size()));
  for (size_t k = 0; k < ns.size(); ++k)
    for (int r = 0; r < 6; ++r) pre.at(r, static_cast<int>(k)) = ns[k][static_cast<size_t>(r)];

  int rank_w1 = w1.rank();
  int rank_pre = pre.rank();
  QMat joined(6, 4 + pre.cols());
  for (int r = 0; r < 6; ++r) {
    for (int ccol = 0; ccol < 4; ++ccol) joined.at(r, ccol) = w1.at(r, ccol);
    for (int ccol = 0; ccol < pre.cols(); ++ccol) joined.at(r, 4 + ccol) = pre.at(r, ccol);
  }
  return rank_w1 + rank_pre - joined.rank();
}

// ------------------------------------------------- line complex normal form

LineComplexNormalForm line_complex_normal_form(const SelfAdjointOp& u) {
  const auto& ed = u.eigen_data();
  if (!ed.split_over_q || ed.components.size() != 6)
    throw std::invalid_argument(
        "line_complex_normal_form: requires 6 distinct rational eigenvalues");
  LineComplexNormalForm nf;
  nf.g = plucker_gram();
  nf.f = nf.g * u.matrix();
  nf.h = nf.f * nf.g.inverse() * nf.f;
  if (nf.f != nf.f.transpose())
    throw std::logic_error("line_complex_normal_form: F is not symmetric");
  if (nf.h != nf.g * u.matrix() * u.matrix())
    throw std::logic_error("line_complex_normal_form: H != G U^2");

  QMat p0(6, 6);
  for (int k = 0; k < 6; ++k) {
    const auto& comp = ed.components[static_cast<size_t>(k)];
    nf.eigenvalues.push_back(comp.value);
    std::vector<Scalar> col = wedge2_to_coords(comp.space.at(0));
    for (int r = 0; r < 6; ++r) p0.at(r, k) = col[static_cast<size_t>(r)];
  }
  nf.p0 = p0;

  QMat dg = p0.transpose() * nf.g * p0;
  QMat df = p0.transpose() * nf.f * p0;
  QMat dh = p0.transpose() * nf.h * p0;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      if (i == j) continue;
      if (dg.at(i, j) != 0 || df.at(i, j) != 0 || dh.at(i, j) != 0)
        throw std::logic_error("line_complex_normal_form: eigenbasis fails to diagonalize");
    }
    Scalar q = dg.at(i, i);
    if (q == 0)
      throw std::logic_error("line_complex_normal_form: isotropic eigenvector (q_i = 0)");
    const Scalar& lam = nf.eigenvalues[static_cast<size_t>(i)];
    if (df.at(i, i) != q * lam || dh.at(i, i) != q * lam * lam)
      throw std::logic_error(
          "line_complex_normal_form: diagonal entries are not (q, q lambda, q lambda^2)");
    nf.q_diag.push_back(q);
  }
  return nf;
}

SigmaSamples sample_line_complex_intersection(const LineComplexNormalForm& nf, int count,
                                              std::uint64_t seed) {
  // Exact solution space of sum z = sum lambda z = sum lambda^2 z = 0.
  QMat rows(3, 6);
  for (int j = 0; j < 6; ++j) {
    const Scalar& lam = nf.eigenvalues[static_cast<size_t>(j)];
    rows.at(0, j) = Scalar(1);
    rows.at(1, j) = lam;
    rows.at(2, j) = lam * lam;
  }
  std::vector<std::vector<Scalar>> zbasis = null_space(rows);
  if (zbasis.size() != 3)
    throw std::logic_error("sample_line_complex_intersection: expected a 3-dimensional space");

  Eigen::MatrixXcd p0(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) p0(i, j) = scalar_to_double(nf.p0.at(i, j));
  auto dense = [](const QMat& m) {
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) out(i, j) = scalar_to_double(m.at(i, j));
    return out;
  };
  Eigen::MatrixXcd gd = dense(nf.g), fd = dense(nf.f), hd = dense(nf.h);
  double gscale = gd.cwiseAbs().maxCoeff(), fscale = fd.cwiseAbs().maxCoeff(),
         hscale = hd.cwiseAbs().maxCoeff();

  SigmaSamples out;
  std::mt19937_64 rng(splitmix64(seed));
  std::uniform_int_distribution<int> coeff(-9, 9);
  for (int s = 0; s < count; ++s) {
    std::vector<Scalar> z(6, Scalar(0));
    bool nonzero = false;
    while (!nonzero) {
      std::array<int, 3> c{coeff(rng), coeff(rng), coeff(rng)};
      for (int j = 0; j < 6; ++j) {
        Scalar acc(0);
        for (int k = 0; k < 3; ++k)
          acc += Scalar(c[static_cast<size_t>(k)]) * zbasis[static_cast<size_t>(k)][static_cast<size_t>(j)];
        z[static_cast<size_t>(j)] = acc;
        if (acc != 0) nonzero = true;
      }
    }
    Eigen::VectorXcd y(6);
    for (int j = 0; j < 6; ++j) {
      double ratio = scalar_to_double(z[static_cast<size_t>(j)] /
                                      nf.q_diag[static_cast<size_t>(j)]);
      y(j) = std::sqrt(std::complex<double>(ratio, 0.0));
    }
    Eigen::VectorXcd x = p0 * y;
    double nx = std::max(x.squaredNorm(), 1e-300);
    double rg = std::abs(std::complex<double>(x.transpose() * gd * x)) / (nx * gscale);
    double rf = std::abs(std::complex<double>(x.transpose() * fd * x)) / (nx * fscale);
    double rh = std::abs(std::complex<double>(x.transpose() * hd * x)) / (nx * hscale);
    out.max_residual = std::max({out.max_residual, rg, rf, rh});
    std::array<std::complex<double>, 6> pt;
    for (int j = 0; j < 6; ++j) pt[static_cast<size_t>(j)] = x(j);
    out.points.push_back(pt);
  }
  return out;
}

// ---------------------------------------------------------------- nodes

namespace {

using Cplx = std::complex<double>;
using Cplx3 = std::array<Cplx, 3>;

struct ChartPolys {
  poly::Poly3 s;                                  // exact, normalized
  std::array<poly::Poly3, 3> grad;
  std::array<std::array<poly::Poly3, 3>, 3> hess;
  poly::Poly3 q;                                  // quadric in the same chart, normalized
  std::array<poly::Poly3, 3> qgrad;
};

struct Candidate {
  Cplx3 t;
  double s_res = 0.0;
  double grad_res = 0.0;
};

Scalar max_abs_coeff(const poly::Poly3& p) {
  Scalar best(0);
  for (const auto& [e, c] : p.terms()) {
    Scalar a = c > 0 ? c : Scalar(-c);
    if (a > best) best = a;
  }
  return best;
}

poly::Poly3 normalized_poly(const poly::Poly3& p) {
  Scalar m = max_abs_coeff(p);
  if (m == 0) return p;
  poly::Poly3 out;
  for (const auto& [e, c] : p.terms()) out.add_term(e, Scalar(c / m));
  return out;
}

/// v(t) = chart column 0 + sum_k t_k * column (k+1), as 4 affine-linear polynomials.
std::array<poly::Poly3, 4> chart_point(const QMat& chart) {
  std::array<poly::Poly3, 4> v;
  for (int a = 0; a < 4; ++a) {
    v[static_cast<size_t>(a)] = poly::Poly3::constant(chart.at(a, 0));
    for (int k = 0; k < 3; ++k)
      v[static_cast<size_t>(a)] +=
          poly::Poly3::constant(chart.at(a, k + 1)) * poly::Poly3::variable(k);
  }
  return v;
}

/// The exact chart determinant of [v ^ m_1, v ^ m_2, v ^ m_3, u(...)]. The
/// first three columns have a linear relation on the hyperplane missing the
/// chart origin, so the degree-6 determinant collapses to degree <= 4.
poly::Poly3 chart_quartic(const QMat& u, const QMat& chart) {
  auto v = chart_point(chart);
  const auto& basis = wedge2_plus_basis();
  std::vector<std::vector<poly::Poly3>> m(6, std::vector<poly::Poly3>(6));
  for (int j = 1; j <= 3; ++j) {
    // coordinates of v(t) ^ m_j in the lex 2-vector basis
    std::array<poly::Poly3, 6> col;
    for (size_t bi = 0; bi < basis.size(); ++bi) {
      auto idx = tuple_indices(basis[bi]);
      int p = idx[0] - 1, q = idx[1] - 1;
      col[bi] = v[static_cast<size_t>(p)] * poly::Poly3::constant(chart.at(q, j)) -
                v[static_cast<size_t>(q)] * poly::Poly3::constant(chart.at(p, j));
    }
    for (int r = 0; r < 6; ++r) {
      m[static_cast<size_t>(r)][static_cast<size_t>(j - 1)] = col[static_cast<size_t>(r)];
      poly::Poly3 acc;
      for (int k = 0; k < 6; ++k)
        acc += poly::Poly3::constant(u.at(r, k)) * col[static_cast<size_t>(k)];
      m[static_cast<size_t>(r)][static_cast<size_t>(j + 2)] = std::move(acc);
    }
  }
  return poly::poly_determinant(m);
}

poly::Poly3 chart_quadric(const QMat& b, const QMat& chart) {
  auto v = chart_point(chart);
  poly::Poly3 q;
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 4; ++c)
      q += poly::Poly3::constant(b.at(a, c)) * v[static_cast<size_t>(a)] *
           v[static_cast<size_t>(c)];
  return q;
}

double norm3(const Cplx3& g) {
  return std::sqrt(std::norm(g[0]) + std::norm(g[1]) + std::norm(g[2]));
}

/// Newton iteration for a square system; returns the final residual norm.
template <typename SysFn, typename JacFn>
double newton3(Cplx3& t, const SysFn& sys, const JacFn& jac, int max_iter) {
  Cplx3 f = sys(t);
  double fn = norm3(f);
  for (int it = 0; it < max_iter; ++it) {
    if (!std::isfinite(fn)) return 1e300;
    if (fn < 1e-14) break;
    Eigen::Matrix3cd j;
    std::array<std::array<Cplx, 3>, 3> jm = jac(t);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) j(r, c) = jm[static_cast<size_t>(r)][static_cast<size_t>(c)];
    Eigen::Vector3cd rhs;
    rhs << -f[0], -f[1], -f[2];
    Eigen::Vector3cd delta = j.fullPivLu().solve(rhs);
    if (!delta.allFinite()) return 1e300;
    double step = 1.0;
    Cplx3 best_t = t;
    double best_f = fn;
    bool improved = false;
    for (int bt = 0; bt < 24; ++bt) {
      Cplx3 trial{t[0] + step * delta(0), t[1] + step * delta(1), t[2] + step * delta(2)};
      double tn = norm3(sys(trial));
      if (std::isfinite(tn) && tn < best_f) {
        best_f = tn;
        best_t = trial;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
    t = best_t;
    f = sys(t);
    fn = norm3(f);
    if (std::abs(t[0]) + std::abs(t[1]) + std::abs(t[2]) > 1e8) return 1e300;
  }
  return fn;
}

/// Projective distance that ignores scale and coordinate choice:
/// max |v_i w_j - v_j w_i| over pairs, normalized.
double projective_distance(const std::array<Cplx, 4>& v, const std::array<Cplx, 4>& w) {
  double nv = 0, nw = 0;
  for (int i = 0; i < 4; ++i) {
    nv = std::max(nv, std::abs(v[static_cast<size_t>(i)]));
    nw = std::max(nw, std::abs(w[static_cast<size_t>(i)]));
  }
  double d = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      d = std::max(d, std::abs(v[static_cast<size_t>(i)] * w[static_cast<size_t>(j)] -
                               v[static_cast<size_t>(j)] * w[static_cast<size_t>(i)]));
  return d / std::max(nv * nw, 1e-300);
}

std::array<Cplx, 4> normalize_projective(std::array<Cplx, 4> v) {
  int pivot = 0;
  double best = 0;
  for (int i = 0; i < 4; ++i) {
    double a = std::abs(v[static_cast<size_t>(i)]);
    if (a > best * (1.0 + 1e-9)) {
      best = a;
      pivot = i;
    }
  }
  Cplx scale = v[static_cast<size_t>(pivot)];
  for (auto& c : v) c /= scale;
  return v;
}

bool lex_less(const std::array<Cplx, 4>& a, const std::array<Cplx, 4>& b) {
  for (int i = 0; i < 4; ++i) {
    double ar = std::round(a[static_cast<size_t>(i)].real() * 1e9);
    double br = std::round(b[static_cast<size_t>(i)].real() * 1e9);
    if (ar != br) return ar < br;
    double ai = std::round(a[static_cast<size_t>(i)].imag() * 1e9);
    double bi = std::round(b[static_cast<size_t>(i)].imag() * 1e9);
    if (ai != bi) return ai < bi;
  }
  return false;
}

std::optional<Scalar> rationalize(double x, double tol, long max_den) {
  // Continued-fraction convergents.
  double a = x;
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 40; ++it) {
    double fl = std::floor(a);
    if (fl > 1e15 || fl < -1e15) break;
    long ai = static_cast<long>(fl);
    long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den || q2 < 0) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double approx = static_cast<double>(p1) / static_cast<double>(q1);
    if (std::abs(approx - x) <= tol * std::max(1.0, std::abs(x))) return frac(p1, q1);
    double rem = a - fl;
    if (rem < 1e-15) break;
    a = 1.0 / rem;
  }
  return std::nullopt;
}

}  // namespace

NodeCensus node_census(const InvariantLagrangian& a, const NodeSearchConfig& config) {
  LGStarReport pre = check_LG_star(a);
  if (!pre.all_passed())
    throw std::invalid_argument("node_census: precondition violated: " +
                                first_failure(pre.certificates)->name);

  NodeCensus census;
  const QMat& u = a.u.matrix();

  Eigen::MatrixXd ud(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) ud(i, j) = scalar_to_double(u.at(i, j));
  Eigen::MatrixXd bd(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) bd(i, j) = scalar_to_double(a.phi.matrix().at(i, j));
  double bscale = bd.cwiseAbs().maxCoeff();

  struct FoundNode {
    std::array<Cplx, 4> v;
    double s_res;
  };
  std::vector<FoundNode> found;

  std::mt19937_64 chart_rng(splitmix64(config.seed ^ 0xC0FFEEULL));
  std::optional<ChartPolys> last_chart_polys;
  QMat last_chart;

  int nthreads = config.threads > 0 ? config.threads
                                    : static_cast<int>(std::thread::hardware_concurrency());
  nthreads = std::max(1, std::min(nthreads, 16));

  for (int ci = 0; ci < config.max_charts; ++ci) {
    // Chart: column 0 is the affine origin, columns 1..3 the directions.
    QMat chart = QMat::identity(4);
    if (ci > 0) {
      std::uniform_int_distribution<int> entry(-3, 3);
      do {
        for (int r = 0; r < 4; ++r)
          for (int c = 0; c < 4; ++c) chart.at(r, c) = entry(chart_rng);
      } while (chart.det() == 0);
    }

    poly::Poly3 s_exact = chart_quartic(u, chart);
    if (s_exact.is_zero()) continue;
    int deg = s_exact.total_degree();
    if (deg > 4)
      throw std::logic_error(
          "node_census: chart determinant exceeded degree 4; the rank-two deflation "
          "argument failed");
    ChartPolys cp;
    cp.s = normalized_poly(s_exact);
    for (int k = 0; k < 3; ++k) cp.grad[static_cast<size_t>(k)] = cp.s.derivative(k);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        cp.hess[static_cast<size_t>(r)][static_cast<size_t>(c)] =
            cp.grad[static_cast<size_t>(r)].derivative(c);
    cp.q = normalized_poly(chart_quadric(a.phi.matrix(), chart));
    for (int k = 0; k < 3; ++k) cp.qgrad[static_cast<size_t>(k)] = cp.q.derivative(k);
    if (census.quartic_degree == 0) census.quartic_degree = deg;
    last_chart_polys = cp;
    last_chart = chart;
    ++census.charts_used;

    poly::Poly3Evaluator se(cp.s);
    std::array<std::optional<poly::Poly3Evaluator>, 3> ge;
    std::array<std::array<std::optional<poly::Poly3Evaluator>, 3>, 3> he;
    for (int k = 0; k < 3; ++k) ge[static_cast<size_t>(k)].emplace(cp.grad[static_cast<size_t>(k)]);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        he[static_cast<size_t>(r)][static_cast<size_t>(c)].emplace(
            cp.hess[static_cast<size_t>(r)][static_cast<size_t>(c)]);

    auto sys = [&](const Cplx3& t) -> Cplx3 {
      return {(*ge[0])(t), (*ge[1])(t), (*ge[2])(t)};
    };
    auto jac = [&](const Cplx3& t) {
      std::array<std::array<Cplx, 3>, 3> j;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
          j[static_cast<size_t>(r)][static_cast<size_t>(c)] =
              (*he[static_cast<size_t>(r)][static_cast<size_t>(c)])(t);
      return j;
    };

    std::array<std::array<double, 4>, 4> chart_d;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        chart_d[static_cast<size_t>(r)][static_cast<size_t>(c)] =
            scalar_to_double(chart.at(r, c));

    std::vector<std::vector<Candidate>> buckets(static_cast<size_t>(nthreads));
    auto worker = [&](int tid) {
      auto& bucket = buckets[static_cast<size_t>(tid)];
      for (int k = tid; k < config.starts; k += nthreads) {
        std::mt19937_64 rng(splitmix64(config.seed ^ (static_cast<std::uint64_t>(ci) << 40) ^
                                       static_cast<std::uint64_t>(k)));
        std::uniform_real_distribution<double> box(-2.0, 2.0);
        Cplx3 t{Cplx(box(rng), box(rng)), Cplx(box(rng), box(rng)), Cplx(box(rng), box(rng))};
        double res = newton3(t, sys, jac, config.max_iterations);
        if (res > 1e-10) continue;
        double sres = std::abs(se(t));
        if (sres > config.residual_tol) continue;
        bucket.push_back({t, sres, res});
      }
    };
    std::vector<std::thread> pool;
    for (int tid = 0; tid < nthreads; ++tid) pool.emplace_back(worker, tid);
    for (auto& th : pool) th.join();

    for (const auto& bucket : buckets)
      for (const auto& cand : bucket) {
        std::array<Cplx, 4> v;
        for (int r = 0; r < 4; ++r) {
          Cplx acc(chart_d[static_cast<size_t>(r)][0], 0.0);
          for (int k = 0; k < 3; ++k)
            acc += chart_d[static_cast<size_t>(r)][static_cast<size_t>(k + 1)] *
                   cand.t[static_cast<size_t>(k)];
          v[static_cast<size_t>(r)] = acc;
        }
        v = normalize_projective(v);
        bool merged = false;
        for (auto& node : found)
          if (projective_distance(node.v, v) <= config.dedupe_tol) {
            if (cand.s_res < node.s_res ||
                (cand.s_res == node.s_res && lex_less(v, node.v))) {
              node.v = v;
              node.s_res = cand.s_res;
            }
            merged = true;
            break;
          }
        if (!merged) found.push_back({v, cand.s_res});
      }

    if (found.size() >= 16) break;
  }

  if (!last_chart_polys)
    throw std::logic_error(
        "node_census: every chart determinant vanished identically; the operator does "
        "not define a surface");

  std::sort(found.begin(), found.end(),
            [](const FoundNode& x, const FoundNode& y) { return lex_less(x.v, y.v); });

  // Rank-two verification at each node: sigma_5 of the 6x8 matrix
  // [v ^ e_1..e_4 | u(v ^ e_1..e_4)] must vanish.
  const auto& basis = wedge2_plus_basis();
  double max_sigma5 = 0.0, max_sres = 0.0;
  for (const auto& node : found) {
    Eigen::MatrixXcd mhat(6, 8);
    for (int j = 0; j < 4; ++j) {
      Eigen::VectorXcd col(6);
      for (size_t bi = 0; bi < basis.size(); ++bi) {
        auto idx = tuple_indices(basis[bi]);
        int p = idx[0] - 1, q = idx[1] - 1;
        Cplx val(0.0, 0.0);
        if (q == j) val += node.v[static_cast<size_t>(p)];
        if (p == j) val -= node.v[static_cast<size_t>(q)];
        col(static_cast<int>(bi)) = val;
      }
      mhat.col(j) = col;
      mhat.col(4 + j) = ud.cast<Cplx>() * col;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(mhat);
    const auto& sv = svd.singularValues();
    double ratio = sv(4) / std::max(sv(0), 1e-300);

    KummerNode kn;
    kn.v = node.v;
    kn.s_residual = node.s_res;
    kn.sigma5 = ratio;
    max_sigma5 = std::max(max_sigma5, ratio);
    max_sres = std::max(max_sres, node.s_res);

    // Rationalization attempt (real rational nodes only).
    bool all_real = true;
    for (const auto& c : kn.v)
      if (std::abs(c.imag()) > 1e-8 * std::max(1.0, std::abs(c))) all_real = false;
    if (all_real) {
      std::array<Scalar, 4> exact;
      bool ok = true;
      for (int i = 0; i < 4 && ok; ++i) {
        auto r = rationalize(kn.v[static_cast<size_t>(i)].real(), 1e-9, 1000000);
        if (!r)
          ok = false;
        else
          exact[static_cast<size_t>(i)] = *r;
      }
      if (ok) {
        MultiVector vv(6, 1);
        for (int i = 0; i < 4; ++i)
          vv.add_term(Mask{1} << i, exact[static_cast<size_t>(i)]);
        if (!vv.is_zero() && kummer_membership(vv, a.u) == 2) {
          kn.rational_certified = true;
          std::array<std::string, 4> strs;
          for (int i = 0; i < 4; ++i)
            strs[static_cast<size_t>(i)] = scalar_to_string(exact[static_cast<size_t>(i)]);
          kn.rational_point = strs;
        }
      }
    }
    census.nodes.push_back(std::move(kn));
  }

  // Genericity: nodes off the quadric of phi.
  census.min_quadric_value = 1e300;
  for (const auto& node : census.nodes) {
    Eigen::Vector4cd v;
    double nv = 0;
    for (int i = 0; i < 4; ++i) {
      v(i) = node.v[static_cast<size_t>(i)];
      nv = std::max(nv, std::abs(node.v[static_cast<size_t>(i)]));
    }
    Cplx qv = v.transpose() * bd.cast<Cplx>() * v;
    census.min_quadric_value =
        std::min(census.min_quadric_value, std::abs(qv) / (nv * nv * bscale));
  }
  if (census.nodes.empty()) census.min_quadric_value = 0.0;

  // Genericity: the branch curve (quadric ∩ surface) is smooth at sampled
  // points — the two gradients stay independent.
  {
    const ChartPolys& cp = *last_chart_polys;
    poly::Poly3Evaluator se(cp.s), qe(cp.q);
    std::array<std::optional<poly::Poly3Evaluator>, 3> ge, qge;
    for (int k = 0; k < 3; ++k) {
      ge[static_cast<size_t>(k)].emplace(cp.grad[static_cast<size_t>(k)]);
      qge[static_cast<size_t>(k)].emplace(cp.qgrad[static_cast<size_t>(k)]);
    }
    std::mt19937_64 rng(splitmix64(config.seed ^ 0xB4A2C3ULL));
    std::uniform_int_distribution<int> slice_coeff(-5, 5);
    std::uniform_real_distribution<double> box(-1.5, 1.5);
    int successes = 0;
    double min_sigma = 1e300;
    for (int attempt = 0; attempt < 60 * config.branch_samples && successes < config.branch_samples;
         ++attempt) {
      std::array<double, 3> r{};
      int nz = 0;
      for (auto& c : r) {
        c = slice_coeff(rng);
        if (c != 0.0) ++nz;
      }
      if (nz == 0) continue;
      Cplx target(box(rng), box(rng));
      auto sys = [&](const Cplx3& t) -> Cplx3 {
        Cplx lin = r[0] * t[0] + r[1] * t[1] + r[2] * t[2] - target;
        return {qe(t), se(t), lin};
      };
      auto jac = [&](const Cplx3& t) {
        std::array<std::array<Cplx, 3>, 3> j;
        for (int c = 0; c < 3; ++c) {
          j[0][static_cast<size_t>(c)] = (*qge[static_cast<size_t>(c)])(t);
          j[1][static_cast<size_t>(c)] = (*ge[static_cast<size_t>(c)])(t);
          j[2][static_cast<size_t>(c)] = r[static_cast<size_t>(c)];
        }
        return j;
      };
      Cplx3 t{Cplx(box(rng), box(rng)), Cplx(box(rng), box(rng)), Cplx(box(rng), box(rng))};
      double res = newton3(t, sys, jac, config.max_iterations);
      if (res > 1e-10) continue;
      Eigen::MatrixXcd j2(2, 3);
      for (int c = 0; c < 3; ++c) {
        j2(0, c) = (*qge[static_cast<size_t>(c)])(t);
        j2(1, c) = (*ge[static_cast<size_t>(c)])(t);
      }
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(j2);
      double ratio = svd.singularValues()(1) / std::max(svd.singularValues()(0), 1e-300);
      min_sigma = std::min(min_sigma, ratio);
      ++successes;
    }
    census.branch_min_jacobian_sigma = successes > 0 ? min_sigma : 0.0;

    // Generic-line intersection count, exact: restrict the chart quartic to
    // random rational lines until the restriction has full degree.
    std::uniform_int_distribution<int> line_coeff(-5, 5);
    for (int attempt = 0; attempt < 20; ++attempt) {
      std::array<Scalar, 3> p{Scalar(line_coeff(rng)), Scalar(line_coeff(rng)),
                              Scalar(line_coeff(rng))};
      std::array<Scalar, 3> d{Scalar(line_coeff(rng)), Scalar(line_coeff(rng)),
                              Scalar(line_coeff(rng))};
      if (d[0] == 0 && d[1] == 0 && d[2] == 0) continue;
      poly::UniPoly restricted = cp.s.restrict_to_line(p, d);
      census.generic_line_roots = poly::degree(restricted);
      if (census.generic_line_roots == census.quartic_degree) break;
    }

    int branch_successes = successes;
    census.certificates.push_back(
        {"chart quartic has degree 4", census.quartic_degree == 4,
         "exact total degree = " + std::to_string(census.quartic_degree)});
    census.certificates.push_back(
        {"generic line meets the surface in 4 points", census.generic_line_roots == 4,
         "restriction to a random rational line has degree " +
             std::to_string(census.generic_line_roots)});
    census.certificates.push_back(
        {"sixteen nodes found", census.nodes.size() == 16,
         std::to_string(census.nodes.size()) + " distinct projective critical points with " +
             "vanishing quartic, " + std::to_string(census.charts_used) + " chart(s)"});
    census.certificates.push_back(
        {"all nodes re-verified at rank two",
         !census.nodes.empty() && max_sigma5 <= config.residual_tol &&
             max_sres <= config.residual_tol,
         "max sigma_5/sigma_1 = " + fmt_double(max_sigma5) +
             ", max |quartic| = " + fmt_double(max_sres)});
    census.certificates.push_back(
        {"nodes avoid the quadric of phi",
         !census.nodes.empty() && census.min_quadric_value >= 1e-8,
         "min |B(v,v)| / |v|^2 = " + fmt_double(census.min_quadric_value)});
    census.certificates.push_back(
        {"branch curve smooth at sampled points",
         branch_successes == config.branch_samples && min_sigma >= 1e-6,
         std::to_string(branch_successes) + " samples, min jacobian sigma ratio = " +
             fmt_double(successes > 0 ? min_sigma : 0.0)});
  }

  return census;
}

// ----------------------------------------------------------- assembled locus

FixedLocusDownstairs fixed_locus_downstairs(const InvariantLagrangian& a,
                                            const NodeSearchConfig& config) {
  FixedLocusDownstairs fl;
  fl.lg_star = check_LG_star(a);
  if (!fl.lg_star.all_passed())
    throw std::invalid_argument("fixed_locus_downstairs: structured-family check failed: " +
                                first_failure(fl.lg_star.certificates)->name);
  fl.eigen_points = eigen_fixed_points(a);
  fl.quadric = quadric_of_phi(a.phi);
  fl.kummer = node_census(a, config);
  return fl;
}

CensusReport census_upstairs(const FixedLocusDownstairs& fl) {
  if (!fl.lg_star.all_passed())
    throw std::runtime_error("census_upstairs: structured-family check failed: " +
                             first_failure(fl.lg_star.certificates)->name);
  if (fl.eigen_points.size() != 6)
    throw std::runtime_error("census_upstairs: expected 6 eigen points, found " +
                             std::to_string(fl.eigen_points.size()));
  for (const auto& p : fl.eigen_points)
    if (p.fiber != 1)
      throw std::runtime_error(
          "census_upstairs: eigen point f1 + " + scalar_to_string(p.lambda) +
          " f2 has fiber dimension " + std::to_string(p.fiber) +
          " (expected 1: off the double locus)");
  if (!fl.quadric.smooth)
    throw std::runtime_error("census_upstairs: the quadric of phi is singular");
  if (const Certificate* bad = first_failure(fl.kummer.certificates))
    throw std::runtime_error("census_upstairs: node census failed: " + bad->name);

  CensusReport report;
  report.n = 2 * static_cast<long>(fl.eigen_points.size()) +
             static_cast<long>(fl.kummer.nodes.size());
  report.k = 1;
  report.abelian = 0;

  for (const auto& p : fl.eigen_points)
    for (int sheet = 1; sheet <= 2; ++sheet) {
      CensusItem item;
      item.provenance = "sheet " + std::to_string(sheet) + " of the double cover over the "
                        "eigen point f1 + " + scalar_to_string(p.lambda) +
                        " f2 (fiber dimension 1: off the branch divisor)";
      item.description = "isolated fixed point of the lifted involution";
      report.items.push_back(std::move(item));
    }
  for (size_t i = 0; i < fl.kummer.nodes.size(); ++i) {
    const auto& node = fl.kummer.nodes[i];
    CensusItem item;
    item.provenance = "preimage of node " + std::to_string(i + 1) +
                      " of the degree-4 surface at v = [" + fmt_complex(node.v[0]) + ", " +
                      fmt_complex(node.v[1]) + ", " + fmt_complex(node.v[2]) + ", " +
                      fmt_complex(node.v[3]) + "] (membership 2: on the branch divisor)";
    item.description = node.rational_certified
                           ? "isolated fixed point; node certified exactly at a rational point"
                           : "isolated fixed point; node certified numerically (rank two)";
    report.items.push_back(std::move(item));
  }
  {
    CensusItem item;
    item.provenance = "double cover of the quadric of phi branched along its intersection "
                      "with the degree-4 surface";
    item.description = "fixed K3 surface";
    report.items.push_back(std::move(item));
  }

  report.notes.push_back(
      "the component over the degree-4 surface is not fixed by this lift: its double "
      "cover has nontrivial canonical class, hence is neither K3 nor abelian (recorded "
      "verdict, not a computation)");
  report.notes.push_back(
      "counts use the symplectic lift of the involution: the lift that fixes the "
      "component over the quadric pointwise; the other lift swaps its two sheets");
  report.notes.push_back(
      "profile (points, K3s, abelian) = (28, 1, 0) matches the trace-5 case of the "
      "classification");
  return report;
}

// ----------------------------------------------------------------- verdicts

ObstructionVerdict smoothness_obstruction(int dim_plus) {
  ObstructionVerdict v;
  v.dim_plus = dim_plus;
  switch (dim_plus) {
    case 3:
      v.obstructed = true;
      v.witness = "for every vector v of the 3-dimensional plus part, "
                  "dim((v ^ Lambda^2 V) meet A) >= 3: the fixed plane forces fibers too "
                  "large for a smooth degeneracy locus";
      return v;
    case 4:
      v.obstructed = false;
      v.witness = "admissible: the structured family satisfies the openness certificates; "
                  "smoothness is certified instance by instance";
      return v;
    case 5:
      v.obstructed = true;
      v.witness = "one half of the invariant Lagrangian has dimension >= 5, and in its "
                  "9-dimensional projective block the decomposable locus has dimension 6: "
                  "4 + 6 >= 9 forces a decomposable element";
      return v;
    default:
      throw std::invalid_argument("smoothness_obstruction: dim_plus must be 3, 4 or 5");
  }
}

InvariantLagrangian reference_instance() {
  // u in spectral form: hyperbolic pairs (e12 ± e34, e13 ± e24, e14 ± e23)
  // with eigenvalues 1..6. None of the eigenvectors is decomposable.
  std::vector<Scalar> values{Scalar(1), Scalar(2), Scalar(3), Scalar(4), Scalar(5), Scalar(6)};
  QMat x(6, 6);
  // columns in the lex basis (e12, e13, e14, e23, e24, e34)
  const int cols[6][6] = {
      {1, 0, 0, 0, 0, 1},   // e12 + e34
      {1, 0, 0, 0, 0, -1},  // e12 - e34
      {0, 1, 0, 0, 1, 0},   // e13 + e24
      {0, 1, 0, 0, -1, 0},  // e13 - e24
      {0, 0, 1, 1, 0, 0},   // e14 + e23
      {0, 0, 1, -1, 0, 0},  // e14 - e23
  };
  for (int j = 0; j < 6; ++j)
    for (int r = 0; r < 6; ++r) x.at(r, j) = cols[j][r];
  SelfAdjointOp u = SelfAdjointOp::from_spectral(values, x);

  QMat b = QMat::from_rows({{Scalar(0), Scalar(1), Scalar(2), Scalar(-1)},
                            {Scalar(1), Scalar(3), Scalar(1), Scalar(0)},
                            {Scalar(2), Scalar(1), Scalar(-1), Scalar(1)},
                            {Scalar(-1), Scalar(0), Scalar(1), Scalar(2)}});
  SymmetricPhi phi = SymmetricPhi::from_matrix(b);
  return assemble(u, phi);
}

}  // namespace symfix::epw
