#include "symfix/polynomial.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace symfix::poly {

UniPoly normalized(UniPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

int degree(const UniPoly& p) {
  int d = static_cast<int>(p.size()) - 1;
  while (d >= 0 && p[static_cast<size_t>(d)] == 0) --d;
  return d;
}

UniPoly derivative(const UniPoly& p) {
  UniPoly out;
  for (size_t i = 1; i < p.size(); ++i) {
    Scalar c = p[i] * static_cast<long>(i);
    out.push_back(c);
  }
  return normalized(std::move(out));
}

UniPoly multiply(const UniPoly& a, const UniPoly& b) {
  if (a.empty() || b.empty()) return {};
  UniPoly out(a.size() + b.size() - 1, Scalar(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) {
      Scalar t = a[i] * b[j];
      out[i + j] += t;
    }
  return normalized(std::move(out));
}

UniPoly subtract(UniPoly a, const UniPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Scalar(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return normalized(std::move(a));
}

UniPoly monic(UniPoly p) {
  p = normalized(std::move(p));
  if (p.empty()) return p;
  Scalar lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

UniPoly remainder(UniPoly a, const UniPoly& b) {
  UniPoly d = normalized(b);
  if (d.empty()) throw std::invalid_argument("remainder: division by zero polynomial");
  a = normalized(std::move(a));
  while (a.size() >= d.size()) {
    Scalar q = a.back() / d.back();
    size_t shift = a.size() - d.size();
    for (size_t i = 0; i < d.size(); ++i) {
      Scalar t = q * d[i];
      a[shift + i] -= t;
    }
    a = normalized(std::move(a));
    if (a.empty()) break;
  }
  return a;
}

UniPoly gcd(UniPoly a, UniPoly b) {
  a = normalized(std::move(a));
  b = normalized(std::move(b));
  while (!b.empty()) {
    UniPoly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(std::move(a));
}

bool squarefree(const UniPoly& p) {
  UniPoly q = normalized(p);
  if (degree(q) <= 1) return degree(q) >= 0;
  return degree(gcd(q, derivative(q))) == 0;
}

Scalar eval(const UniPoly& p, const Scalar& x) {
  Scalar acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

std::complex<double> eval(const UniPoly& p, const std::complex<double>& x) {
  std::complex<double> acc(0.0, 0.0);
  for (auto it = p.rbegin(); it != p.rend(); ++it)
    acc = acc * x + std::complex<double>(scalar_to_double(*it), 0.0);
  return acc;
}

namespace {

std::vector<mpz_class> positive_divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> out;
  if (n == 0) return out;
  mpz_class d(1);
  for (; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      mpz_class other = n / d;
      if (other != d) out.push_back(other);
    }
  }
  return out;
}

/// Synthetic division of p by (x - r); requires p(r) == 0.
UniPoly deflate(const UniPoly& p, const Scalar& r) {
  UniPoly q(p.size() - 1, Scalar(0));
  Scalar carry(0);
  for (size_t i = p.size(); i-- > 1;) {
    carry = (i == p.size() - 1) ? p[i] : Scalar(p[i] + r * carry);
    q[i - 1] = carry;
  }
  return normalized(std::move(q));
}

/// Integer-coefficient version of p (content cleared of denominators).
std::vector<mpz_class> integer_lift(const UniPoly& p) {
  mpz_class lcm(1);
  for (const auto& c : p) {
    mpz_class den = c.get_den();
    mpz_class g = ::gcd(lcm, den);
    lcm = lcm / g * den;
  }
  std::vector<mpz_class> out;
  out.reserve(p.size());
  for (const auto& c : p) {
    mpq_class scaled = c * Scalar(lcm);
    out.push_back(scaled.get_num());
  }
  return out;
}

}  // namespace

RationalRoots rational_roots(const UniPoly& p) {
  RationalRoots result;
  result.cofactor = normalized(p);
  if (result.cofactor.empty()) return result;
  // Roots at zero first.
  while (degree(result.cofactor) >= 1 && result.cofactor.front() == 0) {
    result.roots.emplace_back(0);
    result.cofactor.erase(result.cofactor.begin());
  }
  bool found = true;
  while (found && degree(result.cofactor) >= 1) {
    found = false;
    std::vector<mpz_class> z = integer_lift(result.cofactor);
    std::vector<mpz_class> nums = positive_divisors(z.front());
    std::vector<mpz_class> dens = positive_divisors(z.back());
    std::set<Scalar> candidates;
    for (const auto& n : nums)
      for (const auto& d : dens) {
        Scalar r(n, d);
        r.canonicalize();
        candidates.insert(r);
        candidates.insert(Scalar(-r));
      }
    for (const auto& r : candidates) {
      if (eval(result.cofactor, r) == 0) {
        result.roots.push_back(r);
        result.cofactor = deflate(result.cofactor, r);
        found = true;
        break;
      }
    }
  }
  std::sort(result.roots.begin(), result.roots.end());
  return result;
}

Poly3 Poly3::constant(const Scalar& c) {
  Poly3 p;
  p.add_term({0, 0, 0}, c);
  return p;
}

Poly3 Poly3::variable(int i) {
  if (i < 0 || i > 2) throw std::invalid_argument("Poly3::variable: index out of range");
  Poly3 p;
  Exp e{0, 0, 0};
  e[static_cast<size_t>(i)] = 1;
  p.add_term(e, Scalar(1));
  return p;
}

int Poly3::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
  return d;
}

const Scalar& Poly3::coefficient(const Exp& e) const {
  static const Scalar kZero(0);
  auto it = terms_.find(e);
  return it == terms_.end() ? kZero : it->second;
}

void Poly3::add_term(const Exp& e, const Scalar& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly3& Poly3::operator+=(const Poly3& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly3& Poly3::operator-=(const Poly3& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, Scalar(-c));
  return *this;
}

Poly3 Poly3::operator*(const Poly3& o) const {
  Poly3 out;
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      Exp e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
      Scalar c = ca * cb;
      out.add_term(e, c);
    }
  return out;
}

Poly3 Poly3::operator-() const {
  Poly3 out;
  for (const auto& [e, c] : terms_) out.add_term(e, Scalar(-c));
  return out;
}

Poly3 Poly3::derivative(int i) const {
  if (i < 0 || i > 2) throw std::invalid_argument("Poly3::derivative: index out of range");
  size_t idx = static_cast<size_t>(i);
  Poly3 out;
  for (const auto& [e, c] : terms_) {
    if (e[idx] == 0) continue;
    Exp d = e;
    --d[idx];
    Scalar scaled = c * static_cast<long>(e[idx]);
    out.add_term(d, scaled);
  }
  return out;
}

Scalar Poly3::eval(const std::array<Scalar, 3>& t) const {
  Scalar acc(0);
  for (const auto& [e, c] : terms_) {
    Scalar term = c;
    for (size_t i = 0; i < 3; ++i)
      for (int k = 0; k < e[i]; ++k) term *= t[i];
    acc += term;
  }
  return acc;
}

std::complex<double> Poly3::eval(const std::array<std::complex<double>, 3>& t) const {
  return Poly3Evaluator(*this)(t);
}

UniPoly Poly3::restrict_to_line(const std::array<Scalar, 3>& p,
                                const std::array<Scalar, 3>& d) const {
  // Coordinate polynomials p_i + d_i w.
  std::array<UniPoly, 3> coord;
  for (size_t i = 0; i < 3; ++i) coord[i] = normalized({p[i], d[i]});
  UniPoly acc;
  for (const auto& [e, c] : terms_) {
    UniPoly term{c};
    for (size_t i = 0; i < 3; ++i)
      for (int k = 0; k < e[i]; ++k) term = multiply(term, coord[i]);
    if (acc.size() < term.size()) acc.resize(term.size(), Scalar(0));
    for (size_t i = 0; i < term.size(); ++i) acc[i] += term[i];
  }
  return normalized(std::move(acc));
}

Poly3 poly_determinant(const std::vector<std::vector<Poly3>>& m) {
  size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("poly_determinant: matrix not square");
  if (n == 0) return Poly3::constant(Scalar(1));
  if (n > 16) throw std::invalid_argument("poly_determinant: dimension too large");
  // minor[mask] = determinant of the submatrix with rows in `mask` and the
  // first popcount(mask) columns.
  std::vector<Poly3> minor(size_t{1} << n);
  minor[0] = Poly3::constant(Scalar(1));
  for (size_t mask = 1; mask < minor.size(); ++mask) {
    int k = __builtin_popcountll(mask);
    size_t col = static_cast<size_t>(k - 1);
    Poly3 acc;
    int j = 0;  // position of the row within the sorted mask
    for (size_t r = 0; r < n; ++r) {
      if (!(mask >> r & 1)) continue;
      Poly3 contrib = m[r][col] * minor[mask ^ (size_t{1} << r)];
      if ((k - 1 + j) % 2 == 0)
        acc += contrib;
      else
        acc -= contrib;
      ++j;
    }
    minor[mask] = std::move(acc);
  }
  return minor.back();
}

Poly3Evaluator::Poly3Evaluator(const Poly3& p) {
  for (const auto& [e, c] : p.terms())
    terms_.push_back({e, std::complex<double>(scalar_to_double(c), 0.0)});
}

std::complex<double> Poly3Evaluator::operator()(
    const std::array<std::complex<double>, 3>& t) const {
  std::complex<double> acc(0.0, 0.0);
  for (const auto& term : terms_) {
    std::complex<double> v = term.c;
    for (size_t i = 0; i < 3; ++i)
      for (int k = 0; k < term.e[i]; ++k) v *= t[i];
    acc += v;
  }
  return acc;
}

}  // namespace symfix::poly
