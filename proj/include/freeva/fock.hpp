// SPDX-License-Identifier: MIT
//
// Fock-space oracle: an independent model of the same algebra, used to
// cross-check the symbolic OPE engine.
//
// States live in the free-field Fock module generated from a vacuum |0> by
// creation modes g(m), m <= -1, of the bare generators.  The engine-side
// state of a field is obtained through d^s g  |->  s! g(-1-s)|0>, extended
// multiplicatively over normally ordered monomials.  Products of states are
// computed purely from mode algebra:
//
//   [g(k), h(m)]_{+/-} = (g(0)h scalar) delta_{k+m,-1},
//   (u = A(-1)w):  u(n)v = sum_{j>=0} A(-1-j)(w(n+j)v)
//                        + (-1)^{|A||w|} sum_{j>=0} w(n-1-j)(A(j)v),
//
// with A = (1/s!) d^s g, whose modes are A(k) = binom-weighted modes of g.
// No truncation is ever applied; the requested cutoff only guards the size
// of the computation and a violation is reported as an error, never
// silently absorbed.

#pragma once

#include <cstdint>
#include <vector>

#include "freeva/ope.hpp"

namespace freeva {

// A Fock factor packs (generator symbol without derivative) and a mode
// index; numeric order = (symbol, mode ascending).
using FockFactor = uint64_t;

inline FockFactor make_fock_factor(const GeneratorSymbol& g, int mode) {
  uint32_t sym = make_factor(g.family, g.row, g.col, 0);
  return (uint64_t(sym) << 32) | uint32_t(mode + (1 << 20));
}
inline GeneratorSymbol fock_symbol(FockFactor f) {
  return factor_symbol(Factor(f >> 32));
}
inline int fock_mode(FockFactor f) {
  return int(uint32_t(f & 0xffffffffu)) - (1 << 20);
}
inline bool odd(FockFactor f) { return odd(fock_symbol(f).family); }

using FockMono = std::vector<FockFactor>;

inline int weight2(const FockMono& m) {
  int w = 0;
  for (FockFactor f : m) w += 1 + 2 * (-fock_mode(f) - 1);
  return w;
}
inline int parity(const FockMono& m) {
  int p = 0;
  for (FockFactor f : m)
    if (odd(f)) p ^= 1;
  return p;
}

/// Exact linear combination of creation-mode monomials applied to |0>.
struct FockState {
  std::map<FockMono, Rational> terms;
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const FockState&, const FockState&) = default;

  void add(FockMono m, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms.emplace(std::move(m), c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }
  void add(const FockState& s, const Rational& scale = 1) {
    for (const auto& [m, c] : s.terms) add(m, c * scale);
  }
  static FockState vacuum() {
    FockState s;
    s.terms.emplace(FockMono{}, 1);
    return s;
  }
};

inline int max_weight2(const FockState& s) {
  int w = 0;
  for (const auto& [m, c] : s.terms) w = std::max(w, weight2(m));
  return w;
}

/// Applies one generator mode to a state.  Creation modes (mode <= -1)
/// supercommute exactly (their mixed brackets need k+m = -1, impossible for
/// two creation modes), so insertion is a parity-signed sort; annihilation
/// modes walk the monomial and contract.
inline FockState apply_mode(const GeneratorSymbol& g, int mode,
                            const FockState& in) {
  FockState out;
  const bool godd = odd(g.family);
  if (mode <= -1) {
    FockFactor nf = make_fock_factor(g, mode);
    for (const auto& [m, c] : in.terms) {
      int sign = 1;
      size_t pos = 0;
      bool dead = false;
      while (pos < m.size() && m[pos] < nf) {
        if (godd && odd(m[pos])) sign = -sign;
        ++pos;
      }
      if (godd && pos < m.size() && m[pos] == nf) dead = true;  // odd square
      if (dead) continue;
      FockMono m2;
      m2.reserve(m.size() + 1);
      m2.insert(m2.end(), m.begin(), m.begin() + pos);
      m2.push_back(nf);
      m2.insert(m2.end(), m.begin() + pos, m.end());
      out.add(std::move(m2), sign < 0 ? -c : c);
    }
    return out;
  }
  // Annihilation: move g(mode) to the vacuum, collecting contractions.
  for (const auto& [m, c] : in.terms) {
    int sign = 1;
    for (size_t i = 0; i < m.size(); ++i) {
      if (mode + fock_mode(m[i]) == -1) {
        Rational kappa = contraction(g, fock_symbol(m[i]));
        if (kappa != 0) {
          FockMono m2;
          m2.reserve(m.size() - 1);
          m2.insert(m2.end(), m.begin(), m.begin() + i);
          m2.insert(m2.end(), m.begin() + i + 1, m.end());
          out.add(std::move(m2), c * kappa * (sign < 0 ? -1 : 1));
        }
      }
      if (godd && odd(m[i])) sign = -sign;
    }
    // g(mode)|0> = 0 for mode >= 0: the fully commuted remainder drops.
  }
  return out;
}

/// Default guard: covers the deepest products the generator tables need.
inline const Rational kDefaultCutoffWeight = 5;

/// Engine-side state of a field expression.  The cutoff is a guard on the
/// state weight, not a truncation: exceeding it is an error.
inline FockState state_of(const FieldExpr& e,
                          const Rational& cutoff = kDefaultCutoffWeight) {
  if (!e.is_zero() && Rational(max_weight2(e)) / 2 > cutoff)
    throw error("state_of: weight " + freeva::to_string(Rational(max_weight2(e)) / 2) +
                " exceeds cutoff " + freeva::to_string(cutoff));
  FockState out;
  for (const auto& [m, c] : e.terms()) {
    FockState s = FockState::vacuum();
    Rational coeff = c;
    for (size_t i = m.size(); i-- > 0;) {
      unsigned s_ord = factor_deriv(m[i]);
      coeff *= Rational(factorial(s_ord));
      s = apply_mode(factor_symbol(m[i]), -1 - int(s_ord), s);
    }
    out.add(s, coeff);
  }
  return out;
}

namespace detail {

inline FockState mode_product_mono(const FockMono& u, const FockState& v,
                                   int n) {
  if (u.empty()) {
    FockState out;
    if (n == -1) out = v;
    return out;
  }
  const GeneratorSymbol g = fock_symbol(u[0]);
  const int s = -fock_mode(u[0]) - 1;  // u = (1/s!) (d^s g)(-1) w, up to the
                                       // binomial mode weights used below
  const FockMono w(u.begin() + 1, u.end());
  const int w2w = weight2(w), w2v = max_weight2(v);
  const int psign = (odd(g.family) && parity(w)) ? -1 : 1;
  FockState out;

  // sum 1: A(-1-j)(w(n+j)v), vanishes once wt(w)+wt(v)-(n+j)-1 < 0.
  for (int j = 0; w2w + w2v - 2 * (n + j) - 2 >= 0; ++j) {
    FockState x = mode_product_mono(w, v, n + j);
    if (x.is_zero()) continue;
    Rational coef = Rational(factorial(unsigned(j + s))) /
                    (Rational(factorial(unsigned(j))) * Rational(factorial(unsigned(s))));
    FockState y = apply_mode(g, -1 - j - s, x);
    out.add(y, coef);
  }

  // sum 2: p(A,w) w(n-1-j)(A(j)v); A(j) = (-1)^s binom(j,s) g(j-s), zero
  // for j < s, and g(j-s)v dies once wt(v)+1/2-(j-s)-1 < 0.
  for (int j = s; 2 * w2v + 1 - 2 * (j - s) - 2 >= 0; ++j) {
    FockState y = apply_mode(g, j - s, v);
    if (y.is_zero()) continue;
    Rational coef = Rational(factorial(unsigned(j))) /
                    (Rational(factorial(unsigned(j - s))) * Rational(factorial(unsigned(s))));
    if (s % 2) coef = -coef;
    FockState z = mode_product_mono(w, y, n - 1 - j);
    out.add(z, coef * psign);
  }
  return out;
}

}  // namespace detail

/// The n-th product of states, computed purely in mode algebra.
inline FockState oracle_product(const FockState& u, const FockState& v, int n) {
  FockState out;
  for (const auto& [m, c] : u.terms)
    out.add(detail::mode_product_mono(m, v, n), c);
  return out;
}

/// Checks that the symbolic engine and the Fock oracle agree on a(n)b.
/// The cutoff bounds the conformal weight of every state involved; a
/// request beyond the cutoff is an error (detected, never truncated).
inline bool agree(const FieldExpr& a, const FieldExpr& b, int n,
                  const Rational& cutoff = kDefaultCutoffWeight) {
  const int w2 = max_weight2(a) + max_weight2(b) - 2 * n - 2;
  if (Rational(w2) / 2 > cutoff)
    throw error("agree: product weight " + freeva::to_string(Rational(w2) / 2) +
                " exceeds cutoff " + freeva::to_string(cutoff));
  FieldExpr engine = circle(a, b, n);
  FockState lhs = state_of(engine, cutoff);
  FockState rhs = oracle_product(state_of(a, cutoff), state_of(b, cutoff), n);
  return lhs == rhs;
}

// ---------------------------------------------------------------------------
// Deterministic random expressions for property tests
// ---------------------------------------------------------------------------

/// Tiny deterministic generator (splitmix64): identical streams on every
/// platform for a given seed, used for all sampled tests.
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}
  uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  /// uniform in [0, bound)
  uint64_t below(uint64_t bound) { return next() % bound; }
};

/// Random canonical expression over the given roster: up to max_terms terms,
/// each with up to max_factors factors of derivative order < max_deriv and
/// small nonzero integer coefficients.
inline FieldExpr random_expr(Rng& rng, const std::vector<GeneratorSymbol>& roster,
                             unsigned max_terms = 3, unsigned max_factors = 3,
                             unsigned max_deriv = 2) {
  ExprBuilder out;
  unsigned terms = 1 + unsigned(rng.below(max_terms));
  for (unsigned t = 0; t < terms; ++t) {
    Mono m;
    unsigned k = 1 + unsigned(rng.below(max_factors));
    for (unsigned i = 0; i < k; ++i) {
      const GeneratorSymbol& g = roster[rng.below(roster.size())];
      m.push_back(make_factor(g.family, g.row, g.col, unsigned(rng.below(max_deriv))));
    }
    long coeff = long(rng.below(9)) - 4;
    if (coeff == 0) coeff = 5;
    out.add(std::move(m), Rational(coeff));
  }
  return out.take();
}

}  // namespace freeva
