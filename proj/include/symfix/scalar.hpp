#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace symfix {

/// Exact rational scalar. Values produced through arithmetic are always in
/// canonical reduced form: gcd(num, den) = 1 and den > 0.
using Scalar = mpq_class;

/// Exact fraction num/den in lowest terms. The raw two-argument Scalar
/// constructor does not reduce, and comparisons assume reduced form; use
/// this whenever the fraction is not a reduced literal.
inline Scalar frac(long num, long den) {
  if (den == 0) throw std::invalid_argument("frac: zero denominator");
  Scalar s(num, den);
  s.canonicalize();
  return s;
}

/// Parses "p", "-p" or "p/q" and canonicalizes. Throws on malformed input
/// or zero denominator.
inline Scalar scalar_from_string(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) {
    throw std::invalid_argument("scalar_from_string: cannot parse '" + text + "'");
  }
  if (q.get_den() == 0) {
    throw std::invalid_argument("scalar_from_string: zero denominator in '" + text + "'");
  }
  q.canonicalize();
  return q;
}

/// Renders "p" when the denominator is 1, otherwise "p/q".
inline std::string scalar_to_string(const Scalar& s) {
  if (s.get_den() == 1) return s.get_num().get_str();
  return s.get_num().get_str() + "/" + s.get_den().get_str();
}

inline std::string numerator_string(const Scalar& s) { return s.get_num().get_str(); }
inline std::string denominator_string(const Scalar& s) { return s.get_den().get_str(); }

inline double scalar_to_double(const Scalar& s) { return s.get_d(); }

}  // namespace symfix
