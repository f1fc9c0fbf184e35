// SPDX-License-Identifier: MIT
//
// Generator symbols and monomial factors.
//
// A generator symbol names one free field of a model: an even pair
// beta[r,c] / gamma[r,c] or an odd pair b[r,c] / c[r,c], indexed by a matrix
// position (row, col) with 1-based indices.  A factor is a generator symbol
// together with a derivative order; a monomial is a sequence of factors and
// denotes the right-nested normally ordered product of the factors in order.
//
// Factors pack into a single 32-bit integer whose numeric order *is* the
// canonical factor order (family, then row, then col, then derivative
// order).  Canonical monomials keep their factors sorted in this order; for
// free fields, reordering factors inside a normally ordered monomial only
// produces a parity sign (all pairwise contractions are multiples of the
// identity, so every quasi-commutator correction carries a derivative of the
// identity and vanishes), which makes the signed sort exact.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "freeva/rational.hpp"

namespace freeva {

enum class Family : uint8_t {
  Beta = 0,    // even, weight 1/2
  Gamma = 1,   // even, weight 1/2
  B = 2,       // odd, weight 1/2, charge -1
  C = 3,       // odd, weight 1/2, charge +1
  Current = 4  // reserved: abstract even weight-1 current symbol
};

struct GeneratorSymbol {
  Family family{Family::Beta};
  int row{1};
  int col{1};
  friend bool operator==(const GeneratorSymbol&, const GeneratorSymbol&) = default;
};

/// true for odd (fermionic) symbols.
inline bool odd(Family f) { return f == Family::B || f == Family::C; }

/// Twice the conformal weight of a bare generator (integral bookkeeping).
inline int weight2(Family f) { return f == Family::Current ? 2 : 1; }

/// Fermion number: b carries -1, c carries +1, bosons 0.
inline int charge(Family f) {
  if (f == Family::B) return -1;
  if (f == Family::C) return 1;
  return 0;
}

// ---------------------------------------------------------------------------
// Packed factor
// ---------------------------------------------------------------------------

/// family(4 bits) | row(5) | col(5) | derivative order(18), most significant
/// first, so that the numeric order of the packed value is the canonical
/// factor order.
using Factor = uint32_t;

constexpr unsigned kMaxIndex = 31;       // rows/cols fit in 5 bits
constexpr unsigned kMaxDeriv = (1u << 18) - 1;

inline Factor make_factor(Family f, int row, int col, unsigned deriv = 0) {
  return (uint32_t(f) << 28) | (uint32_t(row) << 23) | (uint32_t(col) << 18) |
         uint32_t(deriv);
}

inline Family factor_family(Factor x) { return Family(x >> 28); }
inline int factor_row(Factor x) { return int((x >> 23) & 31u); }
inline int factor_col(Factor x) { return int((x >> 18) & 31u); }
inline unsigned factor_deriv(Factor x) { return x & kMaxDeriv; }
inline GeneratorSymbol factor_symbol(Factor x) {
  return {factor_family(x), factor_row(x), factor_col(x)};
}
inline Factor with_deriv(Factor x, unsigned d) {
  return (x & ~kMaxDeriv) | uint32_t(d);
}
inline bool odd(Factor x) { return odd(factor_family(x)); }
inline int weight2(Factor x) {
  return weight2(factor_family(x)) + 2 * int(factor_deriv(x));
}

/// A monomial: right-nested normally ordered product of its factors.
/// The empty monomial is the unit field 1.
using Mono = std::vector<Factor>;

inline int weight2(const Mono& m) {
  int w = 0;
  for (Factor x : m) w += weight2(x);
  return w;
}

inline int charge(const Mono& m) {
  int q = 0;
  for (Factor x : m) q += charge(factor_family(x));
  return q;
}

/// Parity of a monomial: number of odd factors mod 2 (0 even, 1 odd).
inline int parity(const Mono& m) {
  int p = 0;
  for (Factor x : m)
    if (odd(x)) p ^= 1;
  return p;
}

inline std::string family_name(Family f) {
  switch (f) {
    case Family::Beta: return "beta";
    case Family::Gamma: return "gamma";
    case Family::B: return "b";
    case Family::C: return "c";
    case Family::Current: return "X";
  }
  return "?";
}

/// Renders a factor in the expression grammar, e.g. "beta[1,2]" or
/// "d^2(gamma[1,1])".
inline std::string to_string(Factor x) {
  std::string atom = family_name(factor_family(x)) + "[" +
                     std::to_string(factor_row(x)) + "," +
                     std::to_string(factor_col(x)) + "]";
  unsigned d = factor_deriv(x);
  if (d == 0) return atom;
  return "d^" + std::to_string(d) + "(" + atom + ")";
}

}  // namespace freeva
