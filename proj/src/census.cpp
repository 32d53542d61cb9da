#include "symfix/census.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace symfix::census {

CensusReport hilbert_census(int fixed_points_on_surface) {
  if (fixed_points_on_surface < 2)
    throw std::invalid_argument(
        "hilbert_census: need at least 2 isolated fixed points on the surface");
  int k = fixed_points_on_surface;
  CensusReport report;
  report.n = static_cast<long>(k) * (k - 1) / 2;
  report.k = 1;
  report.abelian = 0;
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      CensusItem item;
      item.provenance = "pair {p_" + std::to_string(i) + ", p_" + std::to_string(j) +
                        "} of distinct isolated fixed points of the surface involution";
      item.description = "isolated fixed point of the induced involution on the "
                         "length-2 Hilbert scheme";
      report.items.push_back(std::move(item));
    }
  CensusItem surface;
  surface.provenance = "closure of the locus of length-2 cycles {p, sigma(p)}";
  surface.description = "fixed K3 surface: minimal resolution of the quotient of the "
                        "surface by the involution";
  report.items.push_back(std::move(surface));
  report.notes.push_back(
      "limit cycles over each surface fixed point form the exceptional curves of the "
      "resolution, inside the fixed K3 rather than as extra fixed curves");
  return report;
}

HilbertDims hilbert_invariant_dims(int trace_surface) {
  if ((trace_surface % 2 + 2) % 2 != 0)
    throw std::invalid_argument(
        "hilbert_invariant_dims: trace on the 20-dimensional (1,1)-part must be even");
  if (trace_surface < -20 || trace_surface > 20)
    throw std::invalid_argument(
        "hilbert_invariant_dims: trace out of range for a 20-dimensional space");
  HilbertDims dims;
  dims.invariant_dim_surface = (20 + trace_surface) / 2;
  dims.invariant_dim_fourfold = dims.invariant_dim_surface + 1;
  dims.trace_fourfold = trace_surface + 1;
  return dims;
}

ResidueSignResult residue_sign(int negated_coordinates) {
  if (negated_coordinates < 1 || negated_coordinates > 3)
    throw std::invalid_argument("residue_sign: number of negated coordinates must be 1..3");
  ResidueSignResult r;
  r.negated_coordinates = negated_coordinates;
  auto eps = [&](int j) { return j < negated_coordinates ? -1 : 1; };
  for (int i = 0; i < 6; ++i) {
    // X_i contributes eps(i); each surviving differential dX_j contributes eps(j).
    int sign = eps(i);
    std::ostringstream name;
    name << "X_" << i << " dX_";
    for (int j = 0; j < 6; ++j) {
      if (j == i) continue;
      sign *= eps(j);
      if (name.str().back() != '_') name << "^dX_";
      name << j;
    }
    r.monomial_signs[static_cast<size_t>(i)] = sign;
    r.monomials[static_cast<size_t>(i)] = name.str();
  }
  r.sign = r.monomial_signs[0];
  for (int s : r.monomial_signs)
    if (s != r.sign)
      throw std::logic_error("residue_sign: monomials transform with different signs");
  r.symplectic = (r.sign == 1);
  return r;
}

Cyclotomic Cyclotomic::zeta_pow(int m) {
  int r = ((m % 3) + 3) % 3;
  if (r == 0) return Cyclotomic(Scalar(1), Scalar(0));
  if (r == 1) return Cyclotomic(Scalar(0), Scalar(1));
  return Cyclotomic(Scalar(-1), Scalar(-1));
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  return Cyclotomic(Scalar(a + o.a), Scalar(b + o.b));
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const {
  return Cyclotomic(Scalar(a - o.a), Scalar(b - o.b));
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  // (a + b z)(c + d z) = ac + (ad + bc) z + bd z^2,  z^2 = -1 - z.
  Scalar ac = a * o.a, bd = b * o.b;
  Scalar cross = a * o.b + b * o.a;
  return Cyclotomic(Scalar(ac - bd), Scalar(cross - bd));
}

Cyclotomic Cyclotomic::operator-() const { return Cyclotomic(Scalar(-a), Scalar(-b)); }

Cyclotomic Cyclotomic::inverse() const {
  // Conjugate is (a - b) - b z; the norm a^2 - ab + b^2 is positive for
  // nonzero elements.
  Scalar norm = a * a - a * b + b * b;
  if (norm == 0) throw std::invalid_argument("Cyclotomic::inverse: zero element");
  return Cyclotomic(Scalar((a - b) / norm), Scalar(-b / norm));
}

std::string Cyclotomic::str() const {
  if (b == 0) return scalar_to_string(a);
  std::string zpart;
  if (b == 1)
    zpart = "z";
  else if (b == -1)
    zpart = "-z";
  else
    zpart = scalar_to_string(b) + "*z";
  if (a == 0) return zpart;
  if (b > 0) return scalar_to_string(a) + "+" + (b == 1 ? "z" : scalar_to_string(b) + "*z");
  return scalar_to_string(a) + "-" + (b == -1 ? "z" : scalar_to_string(Scalar(-b)) + "*z");
}

namespace {

std::string zeta_label(int power) {
  if (power % 3 == 0) return "";
  if (power % 3 == 1) return "z*";
  return "z^2*";
}

/// Multiplies homogeneous (s,t)-polynomials given as coefficient lists by
/// ascending t-degree.
std::vector<Cyclotomic> poly_mul(const std::vector<Cyclotomic>& f,
                                 const std::vector<Cyclotomic>& g) {
  std::vector<Cyclotomic> out(f.size() + g.size() - 1, Cyclotomic(0));
  for (size_t i = 0; i < f.size(); ++i)
    for (size_t j = 0; j < g.size(); ++j) out[i + j] = out[i + j] + f[i] * g[j];
  return out;
}

/// Coefficients of s^3, s^2 t, s t^2, t^3 in g(s p + t q).
std::array<Cyclotomic, 4> line_restriction(const CubicForm& g,
                                           const std::array<Cyclotomic, 4>& p,
                                           const std::array<Cyclotomic, 4>& q) {
  std::array<Cyclotomic, 4> out{Cyclotomic(0), Cyclotomic(0), Cyclotomic(0), Cyclotomic(0)};
  for (const auto& [e, c] : g.terms) {
    std::vector<Cyclotomic> acc{Cyclotomic(c, Scalar(0))};
    for (size_t i = 0; i < 4; ++i)
      for (int rep = 0; rep < e[i]; ++rep) acc = poly_mul(acc, {p[i], q[i]});
    for (size_t m = 0; m < acc.size() && m < 4; ++m) out[m] = out[m] + acc[m];
  }
  return out;
}

/// Reduced row-echelon form of a 2x4 system over Q(z); canonical for
/// comparing lines.
std::array<std::array<Cyclotomic, 4>, 2> rref2x4(std::array<std::array<Cyclotomic, 4>, 2> m) {
  int pivot_row = 0;
  for (int col = 0; col < 4 && pivot_row < 2; ++col) {
    int found = -1;
    for (int r = pivot_row; r < 2; ++r)
      if (!m[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) {
        found = r;
        break;
      }
    if (found < 0) continue;
    std::swap(m[static_cast<size_t>(pivot_row)], m[static_cast<size_t>(found)]);
    auto& row = m[static_cast<size_t>(pivot_row)];
    Cyclotomic inv = row[static_cast<size_t>(col)].inverse();
    for (auto& entry : row) entry = entry * inv;
    for (int r = 0; r < 2; ++r) {
      if (r == pivot_row) continue;
      Cyclotomic factor = m[static_cast<size_t>(r)][static_cast<size_t>(col)];
      if (factor.is_zero()) continue;
      for (size_t ccol = 0; ccol < 4; ++ccol)
        m[static_cast<size_t>(r)][ccol] =
            m[static_cast<size_t>(r)][ccol] - factor * row[ccol];
    }
    ++pivot_row;
  }
  return m;
}

std::string echelon_key(const std::array<std::array<Cyclotomic, 4>, 2>& m) {
  std::string key;
  for (const auto& row : m)
    for (const auto& entry : row) {
      key += entry.str();
      key += '|';
    }
  return key;
}

}  // namespace

std::string FermatLine::description() const {
  static const int kPairings[3][2][2] = {{{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}};
  const auto& pr = kPairings[pairing];
  std::ostringstream out;
  out << "Y" << pr[0][0] + 1 << " + " << zeta_label(zeta_a) << "Y" << pr[0][1] + 1 << " = 0, "
      << "Y" << pr[1][0] + 1 << " + " << zeta_label(zeta_b) << "Y" << pr[1][1] + 1 << " = 0";
  return out.str();
}

FermatLinesReport fermat_27_lines() {
  static const int kPairings[3][2][2] = {{{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}};
  CubicForm g = CubicForm::fermat();
  FermatLinesReport report;
  report.substitution_verified = true;
  std::set<std::string> canonical_forms;
  for (int pairing = 0; pairing < 3; ++pairing)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const auto& pr = kPairings[pairing];
        FermatLine line;
        line.pairing = pairing;
        line.zeta_a = a;
        line.zeta_b = b;
        for (auto& row : line.equations)
          for (auto& entry : row) entry = Cyclotomic(0);
        for (auto& row : line.points)
          for (auto& entry : row) entry = Cyclotomic(0);
        line.equations[0][static_cast<size_t>(pr[0][0])] = Cyclotomic(1);
        line.equations[0][static_cast<size_t>(pr[0][1])] = Cyclotomic::zeta_pow(a);
        line.equations[1][static_cast<size_t>(pr[1][0])] = Cyclotomic(1);
        line.equations[1][static_cast<size_t>(pr[1][1])] = Cyclotomic::zeta_pow(b);
        line.points[0][static_cast<size_t>(pr[0][0])] = -Cyclotomic::zeta_pow(a);
        line.points[0][static_cast<size_t>(pr[0][1])] = Cyclotomic(1);
        line.points[1][static_cast<size_t>(pr[1][0])] = -Cyclotomic::zeta_pow(b);
        line.points[1][static_cast<size_t>(pr[1][1])] = Cyclotomic(1);

        // The spanning points must satisfy the line's own equations.
        for (const auto& eq : line.equations)
          for (const auto& pt : line.points) {
            Cyclotomic v(0);
            for (size_t i = 0; i < 4; ++i) v = v + eq[i] * pt[i];
            if (!v.is_zero())
              throw std::logic_error("fermat_27_lines: spanning point off its own line");
          }

        auto coeffs = line_restriction(g, line.points[0], line.points[1]);
        for (const auto& c : coeffs)
          if (!c.is_zero()) report.substitution_verified = false;

        canonical_forms.insert(echelon_key(rref2x4(line.equations)));
        report.lines.push_back(std::move(line));
      }
  report.pairwise_distinct = canonical_forms.size() == report.lines.size();
  return report;
}

LinearForm LinearForm::coordinate(int i) {
  if (i < 0 || i > 3) throw std::invalid_argument("LinearForm::coordinate: index out of range");
  LinearForm f;
  f.c[static_cast<size_t>(i)] = Scalar(1);
  return f;
}

Scalar LinearForm::eval(const std::array<Scalar, 4>& y) const {
  Scalar acc(0);
  for (size_t i = 0; i < 4; ++i) acc += c[i] * y[i];
  return acc;
}

bool LinearForm::is_zero() const {
  for (const auto& ci : c)
    if (ci != 0) return false;
  return true;
}

std::string LinearForm::str() const {
  std::string out;
  for (size_t i = 0; i < 4; ++i) {
    if (c[i] == 0) continue;
    std::string coeff = scalar_to_string(c[i]);
    std::string term;
    if (coeff == "1")
      term = "Y" + std::to_string(i + 1);
    else if (coeff == "-1")
      term = "-Y" + std::to_string(i + 1);
    else
      term = coeff + "*Y" + std::to_string(i + 1);
    if (out.empty())
      out = term;
    else if (term[0] == '-')
      out += " - " + term.substr(1);
    else
      out += " + " + term;
  }
  return out.empty() ? "0" : out;
}

CubicForm CubicForm::fermat() {
  CubicForm g;
  g.add_term({3, 0, 0, 0}, Scalar(1));
  g.add_term({0, 3, 0, 0}, Scalar(1));
  g.add_term({0, 0, 3, 0}, Scalar(1));
  g.add_term({0, 0, 0, 3}, Scalar(1));
  return g;
}

void CubicForm::add_term(const std::array<int, 4>& e, const Scalar& coeff) {
  if (e[0] + e[1] + e[2] + e[3] != 3)
    throw std::invalid_argument("CubicForm::add_term: exponents must sum to 3");
  if (coeff == 0) return;
  auto [it, inserted] = terms.emplace(e, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms.erase(it);
  }
}

Scalar CubicForm::eval(const std::array<Scalar, 4>& y) const {
  Scalar acc(0);
  for (const auto& [e, c] : terms) {
    Scalar term = c;
    for (size_t i = 0; i < 4; ++i)
      for (int k = 0; k < e[i]; ++k) term *= y[i];
    acc += term;
  }
  return acc;
}

Cyclotomic CubicForm::eval(const std::array<Cyclotomic, 4>& y) const {
  Cyclotomic acc(0);
  for (const auto& [e, c] : terms) {
    Cyclotomic term(c, Scalar(0));
    for (size_t i = 0; i < 4; ++i)
      for (int k = 0; k < e[i]; ++k) term = term * y[i];
    acc = acc + term;
  }
  return acc;
}

std::string CubicForm::str() const {
  std::string out;
  for (const auto& [e, c] : terms) {
    std::string term = scalar_to_string(c);
    if (term == "1") term.clear();
    if (term == "-1") term = "-";
    for (size_t i = 0; i < 4; ++i) {
      if (e[i] == 0) continue;
      if (!(term.empty() || term == "-")) term += "*";
      term += "Y" + std::to_string(i + 1);
      if (e[i] > 1) term += "^" + std::to_string(e[i]);
    }
    if (out.empty())
      out = term;
    else if (term[0] == '-')
      out += " - " + term.substr(1);
    else
      out += " + " + term;
  }
  return out.empty() ? "0" : out;
}

std::string FanoK3::equation() const {
  return "a1^2*(" + l0.str() + ") + a1*a2*(" + l2.str() + ") + a2^2*(" + l1.str() +
         ") = 0  on P^1 x V(G),  G = " + g.str();
}

FiberClass FanoK3::fiber_at(const std::array<Scalar, 4>& b) const {
  FiberClass fc;
  fc.on_surface = g.eval(b) == 0;
  Scalar v0 = l0.eval(b), v1 = l1.eval(b), v2 = l2.eval(b);
  fc.degenerate = v0 == 0 && v1 == 0 && v2 == 0;
  fc.discriminant = v2 * v2 - Scalar(4) * v0 * v1;
  return fc;
}

FanoK3 fano_fixed_k3_equation(LinearForm l0, LinearForm l1, LinearForm l2, CubicForm g) {
  if (l0.is_zero() && l1.is_zero() && l2.is_zero())
    throw std::invalid_argument(
        "fano_fixed_k3_equation: all three linear forms vanish identically; the cubic "
        "contains the whole join and the fixed surface is not a double cover");
  if (g.terms.empty())
    throw std::invalid_argument("fano_fixed_k3_equation: zero cubic form");
  FanoK3 k3;
  k3.l0 = std::move(l0);
  k3.l1 = std::move(l1);
  k3.l2 = std::move(l2);
  k3.g = std::move(g);
  return k3;
}

Certificate fano_nondegeneracy(const FanoK3& k3, int samples) {
  Certificate cert;
  cert.name = "double cover nondegenerate at sampled points";
  if (samples < 1) {
    cert.passed = false;
    cert.detail = "no samples requested";
    return cert;
  }
  for (int t = 1; t <= samples; ++t) {
    std::array<Scalar, 4> b{Scalar(1), Scalar(-1), Scalar(t), Scalar(-t)};
    FiberClass fc = k3.fiber_at(b);
    if (!fc.on_surface) {
      cert.passed = false;
      cert.detail = "sample point [1,-1," + std::to_string(t) + "," + std::to_string(-t) +
                    "] is not on V(G)";
      return cert;
    }
    if (fc.degenerate) {
      cert.passed = false;
      cert.detail = "degenerate fiber (all three linear forms vanish) at [1,-1," +
                    std::to_string(t) + "," + std::to_string(-t) + "]";
      return cert;
    }
    if (fc.discriminant == 0) {
      cert.passed = false;
      cert.detail = "discriminant vanishes at [1,-1," + std::to_string(t) + "," +
                    std::to_string(-t) + "]";
      return cert;
    }
  }
  cert.passed = true;
  cert.detail = "discriminant L2^2 - 4 L0 L1 nonzero at " + std::to_string(samples) +
                " rational points [1,-1,t,-t] of V(G)";
  return cert;
}

CensusReport fano_census(const FanoK3& k3) {
  ResidueSignResult sign = residue_sign(2);
  if (!sign.symplectic)
    throw std::logic_error("fano_census: residue sign check failed for two negated coordinates");
  FermatLinesReport lines = fermat_27_lines();
  if (!lines.ok())
    throw std::logic_error("fano_census: Fermat line enumeration failed verification");
  Certificate nondegen = fano_nondegeneracy(k3, 20);
  if (!nondegen.passed)
    throw std::runtime_error("fano_census: " + nondegen.name + ": " + nondegen.detail);

  CensusReport report;
  report.n = 28;
  report.k = 1;
  report.abelian = 0;
  for (const auto& line : lines.lines) {
    CensusItem item;
    item.provenance = "line of the fixed cubic surface V(G): " + line.description();
    item.description = "isolated fixed point of the involution on the variety of lines";
    report.items.push_back(std::move(item));
  }
  {
    CensusItem item;
    item.provenance = "pointwise-fixed coordinate line {X2 = X3 = X4 = X5 = 0}, contained "
                      "in every cubic of the invariant shape";
    item.description = "isolated fixed point of the involution on the variety of lines";
    report.items.push_back(std::move(item));
  }
  {
    CensusItem item;
    item.provenance = "stable lines joining the pointwise-fixed coordinate line to the "
                      "fixed cubic surface V(G)";
    item.description = "fixed K3 surface, double cover of V(G): " + k3.equation();
    report.items.push_back(std::move(item));
  }
  report.notes.push_back("residue sign for two negated coordinates is +1 on all six "
                         "volume-form monomials: the induced 2-form is symplectic");
  report.notes.push_back(nondegen.detail);
  report.notes.push_back("matches the trace-5 profile (points, K3s, abelian) = (28, 1, 0)");
  return report;
}

CensusReport fano_census() {
  return fano_census(fano_fixed_k3_equation(LinearForm::coordinate(0), LinearForm::coordinate(1),
                                            LinearForm::coordinate(2), CubicForm::fermat()));
}

}  // namespace symfix::census
