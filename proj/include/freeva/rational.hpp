// SPDX-License-Identifier: MIT
//
// Exact unbounded rational scalars and small combinatorial helpers.
// All coefficient arithmetic in the library is exact; no floating point
// appears anywhere in the computational core.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace freeva {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Library-wide error type.  Thrown for contract violations (mixed-weight
/// input to a homogeneous-only operation, critical-level Sugawara, malformed
/// fixtures, ...).
struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

inline Int factorial(unsigned n) {
  Int r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

/// Falling factorial n (n-1) ... (n-k+1) for integer n (possibly negative).
inline Int falling(long long n, unsigned k) {
  Int r = 1;
  for (unsigned i = 0; i < k; ++i) r *= Int(n) - int(i);
  return r;
}

/// Generalized binomial coefficient binom(m, j) = m (m-1) ... (m-j+1) / j!
/// for rational (in particular half-integer) m.  binom(m, 0) = 1.
inline Rational binomial(const Rational& m, unsigned j) {
  Rational r = 1;
  for (unsigned i = 0; i < j; ++i) r *= (m - int(i)) / Rational(int(i) + 1);
  return r;
}

/// Renders a rational as "p" or "p/q" with q > 0.
inline std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace freeva
