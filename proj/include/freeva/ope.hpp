// SPDX-License-Identifier: MIT
//
// The operator product engine: n-th products a(n)b for all integers n on
// canonical field expressions.
//
// The calculus is the standard one for vertex superalgebras, specialized to
// free fields (all pairwise generator contractions are scalar multiples of
// the identity):
//
//   * unit:              1(n)a = delta_{n,-1} a,   a(n)1 = delta_{n,-1} a  (n >= -1)
//   * translation:       (da)(n)b = -n a(n-1)b
//   * negative products: k! a(-1-k)b = :(d^k a) b:
//   * derivation walk:   g(n) :h R: = [g(n)h] R + (-1)^{|g||h|} :h (g(n) R):
//                        where the bracket is the depth-matching scalar
//                        contraction (nonzero only when deriv(h) == n)
//   * iterate (left operand a Wick product :a1 R:):
//       (:a1 R:)(n)c = sum_{j>=0} a1(-1-j)(R(n+j)c)
//                    + (-1)^{|a1||R|} sum_{j>=0} R(n-1-j)(a1(j)c)
//
// All sums are finite: a product u(n)v vanishes outright when its conformal
// weight wt(u)+wt(v)-n-1 would be negative (the free-field weight grading is
// bounded below by 0 with one-dimensional weight-0 subspace).
//
// Monomial-level products are memoized in a process-wide table guarded by a
// shared mutex, so independent computations may run on separate threads.  The
// table is flushed wholesale whenever its approximate size (counted in cached
// monomials) exceeds a budget, keeping long-running sessions within bounded
// memory; FREEVA_CACHE_BUDGET overrides the default of 6000000 units.

#pragma once

#include <cstdlib>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "freeva/expr.hpp"

namespace freeva {

/// Scalar contraction: the coefficient of (z-w)^{-1} in a(z)b(w) for bare
/// generators, i.e. the constant c with a(0)b = c * 1.
inline Rational contraction(const GeneratorSymbol& a, const GeneratorSymbol& b) {
  if (a.row != b.row || a.col != b.col) return 0;
  Family fa = a.family, fb = b.family;
  if (fa == Family::Beta && fb == Family::Gamma) return 1;
  if (fa == Family::Gamma && fb == Family::Beta) return -1;
  if (fa == Family::B && fb == Family::C) return 1;
  if (fa == Family::C && fb == Family::B) return 1;
  return 0;
}

/// Normally ordered product :f e: of a single factor with an expression.
inline FieldExpr insert_factor(Factor f, const FieldExpr& e) {
  ExprBuilder out;
  for (const auto& [m, c] : e.terms()) {
    Mono m2;
    m2.reserve(m.size() + 1);
    m2.push_back(f);
    m2.insert(m2.end(), m.begin(), m.end());
    int sign = 1;
    if (!canonical_sort(m2, sign)) continue;
    out.add_canonical(std::move(m2), sign < 0 ? -c : c);
  }
  return out.take();
}

namespace detail {

struct CircleKey {
  Mono a, b;
  int n;
  friend bool operator==(const CircleKey&, const CircleKey&) = default;
};

struct CircleKeyHash {
  size_t operator()(const CircleKey& k) const {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    for (Factor f : k.a) mix(f);
    mix(0xabcdefull);
    for (Factor f : k.b) mix(f);
    mix(uint64_t(int64_t(k.n)) * 0x9e3779b97f4a7c15ull + 1);
    return size_t(h);
  }
};

struct CircleMemo {
  std::unordered_map<CircleKey, FieldExpr, CircleKeyHash> map;
  std::shared_mutex mutex;
  size_t units = 0;  // approximate cached size, in monomials
  size_t budget = default_budget();
  static size_t default_budget() {
    if (const char* s = std::getenv("FREEVA_CACHE_BUDGET")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(s, &end, 10);
      if (end != s && v > 0) return size_t(v);
    }
    return 6000000;
  }
  static CircleMemo& instance() {
    static CircleMemo memo;
    return memo;
  }
};

FieldExpr circle_mono(const Mono& a, const Mono& b, int n);

/// g(n)b for a bare generator g and canonical monomial b, n >= 0: the
/// depth-matching annihilation walk.
inline FieldExpr circle_bare_nonneg(const GeneratorSymbol& g, const Mono& b,
                                    int n) {
  ExprBuilder out;
  int sign = 1;
  const bool godd = odd(g.family);
  for (size_t i = 0; i < b.size(); ++i) {
    Factor h = b[i];
    if (int(factor_deriv(h)) == n) {
      Rational kappa = contraction(g, factor_symbol(h));
      if (kappa != 0) {
        Mono rest;
        rest.reserve(b.size() - 1);
        rest.insert(rest.end(), b.begin(), b.begin() + i);
        rest.insert(rest.end(), b.begin() + i + 1, b.end());
        out.add_canonical(std::move(rest),
                          Rational(factorial(unsigned(n))) * kappa *
                              (sign < 0 ? -1 : 1));
      }
    }
    if (godd && odd(h)) sign = -sign;
  }
  return out.take();
}

inline FieldExpr circle_mono_impl(const Mono& a, const Mono& b, int n) {
  if (a.empty())  // unit field
    return n == -1 ? FieldExpr::monomial(b) : FieldExpr::zero();

  if (a.size() == 1) {
    Factor f = a[0];
    unsigned s = factor_deriv(f);
    if (s > 0) {
      // (d^s g)(n) b = (-1)^s (n)(n-1)...(n-s+1) g(n-s) b
      Int coef = falling(n, s);
      if (coef == 0) return FieldExpr::zero();
      if (s % 2) coef = -coef;
      return circle_mono({with_deriv(f, 0)}, b, n - int(s)) * Rational(coef);
    }
    GeneratorSymbol g = factor_symbol(f);
    if (n <= -1) {
      unsigned k = unsigned(-n - 1);
      FieldExpr ins = insert_factor(with_deriv(f, k), FieldExpr::monomial(b));
      return ins * (Rational(1) / Rational(factorial(k)));
    }
    return circle_bare_nonneg(g, b, n);
  }

  // Composite left operand: a = :a1 R:.
  Factor f1 = a[0];
  Mono rest(a.begin() + 1, a.end());
  const int w2r = weight2(rest), w2b = weight2(b), w2f = weight2(f1);
  ExprBuilder out;

  // sum 1: a1(-1-j)(R(n+j)b); vanishes once wt(R)+wt(b)-(n+j)-1 < 0.
  for (int j = 0; w2r + w2b - 2 * (n + j) - 2 >= 0; ++j) {
    FieldExpr x = circle_mono(rest, b, n + j);
    if (x.is_zero()) continue;
    FieldExpr ins = insert_factor(with_deriv(f1, factor_deriv(f1) + j), x);
    out.add(ins, Rational(1) / Rational(factorial(unsigned(j))));
  }

  // sum 2: (-1)^{|a1||R|} R(n-1-j)(a1(j)b); a1(j)b vanishes once
  // wt(a1)+wt(b)-j-1 < 0.
  const int psign = (odd(f1) && parity(rest)) ? -1 : 1;
  for (int j = 0; w2f + w2b - 2 * j - 2 >= 0; ++j) {
    FieldExpr y = circle_mono({f1}, b, j);
    if (y.is_zero()) continue;
    for (const auto& [ym, yc] : y.terms()) {
      FieldExpr z = circle_mono(rest, ym, n - 1 - j);
      out.add(z, yc * psign);
    }
  }
  return out.take();
}

inline FieldExpr circle_mono(const Mono& a, const Mono& b, int n) {
  CircleKey key{a, b, n};
  auto& memo = CircleMemo::instance();
  {
    std::shared_lock lock(memo.mutex);
    auto it = memo.map.find(key);
    if (it != memo.map.end()) return it->second;
  }
  FieldExpr r = circle_mono_impl(a, b, n);
  {
    std::unique_lock lock(memo.mutex);
    if (memo.units >= memo.budget) {
      memo.map.clear();
      memo.units = 0;
    }
    size_t cost = 1 + (key.a.size() + key.b.size()) / 4 + r.terms().size();
    auto [it, inserted] = memo.map.emplace(std::move(key), r);
    if (inserted) memo.units += cost;
  }
  return r;
}

}  // namespace detail

/// The n-th product a(n)b, bilinear in both arguments, for any integer n.
inline FieldExpr circle(const FieldExpr& a, const FieldExpr& b, int n) {
  ExprBuilder out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms())
      out.add(detail::circle_mono(ma, mb, n), ca * cb);
  return out.take();
}

/// Wick (normally ordered) product :a b: = a(-1)b.
inline FieldExpr wick(const FieldExpr& a, const FieldExpr& b) {
  return circle(a, b, -1);
}

/// Right-nested normally ordered product :f1 (:f2 (... fk):):.
inline FieldExpr nested_wick(const std::vector<FieldExpr>& fs) {
  if (fs.empty()) return FieldExpr::unit();
  FieldExpr acc = fs.back();
  for (size_t i = fs.size() - 1; i-- > 0;) acc = wick(fs[i], acc);
  return acc;
}

/// k-th formal derivative (the translation operator d acts as an even
/// derivation of all normally ordered products).
inline FieldExpr derivative(const FieldExpr& e, unsigned k = 1) {
  FieldExpr cur = e;
  for (unsigned step = 0; step < k; ++step) {
    ExprBuilder out;
    for (const auto& [m, c] : cur.terms()) {
      for (size_t i = 0; i < m.size(); ++i) {
        Mono m2 = m;
        m2[i] = with_deriv(m2[i], factor_deriv(m2[i]) + 1);
        out.add(std::move(m2), c);
      }
    }
    cur = out.take();
  }
  return cur;
}

/// Singular part of the operator product a(z)b(w): pole order -> coefficient
/// field, highest pole first.  Entries are nonzero by construction.
struct OPETable {
  std::map<int, FieldExpr, std::greater<int>> poles;
  bool regular() const { return poles.empty(); }
  friend bool operator==(const OPETable&, const OPETable&) = default;
};

inline OPETable ope_singular(const FieldExpr& a, const FieldExpr& b) {
  OPETable t;
  if (a.is_zero() || b.is_zero()) return t;
  const int pmax = (max_weight2(a) + max_weight2(b)) / 2;
  for (int p = 1; p <= pmax; ++p) {
    FieldExpr c = circle(a, b, p - 1);
    if (!c.is_zero()) t.poles.emplace(p, std::move(c));
  }
  return t;
}

/// True when a(z)b(w) is regular (all nonnegative products vanish).
inline bool commutes(const FieldExpr& a, const FieldExpr& b) {
  return ope_singular(a, b).regular();
}

/// Computes b(n)a from products a(n+j)b via skew-symmetry:
///   b(n)a = (-1)^{|a||b|} sum_{j>=0} (-1)^{n+j+1} (1/j!) d^j (a(n+j)b),
/// applied bilinearly so mixed-parity sums are handled per monomial pair.
/// Used as an independent consistency check on the engine.
inline FieldExpr circle_via_skew(const FieldExpr& a, const FieldExpr& b, int n) {
  ExprBuilder out;
  for (const auto& [ma, ca] : a.terms()) {
    FieldExpr ea = FieldExpr::monomial(ma, ca);
    for (const auto& [mb, cb] : b.terms()) {
      FieldExpr eb = FieldExpr::monomial(mb, cb);
      const int psign = (parity(ma) && parity(mb)) ? -1 : 1;
      const int w2 = weight2(ma) + weight2(mb);
      for (int j = 0; w2 - 2 * (n + j) - 2 >= 0; ++j) {
        FieldExpr x = circle(ea, eb, n + j);
        if (x.is_zero()) continue;
        Rational coef = Rational(psign) / Rational(factorial(unsigned(j)));
        if ((n + j + 1) % 2) coef = -coef;
        out.add(derivative(x, unsigned(j)), coef);
      }
    }
  }
  return out.take();
}

}  // namespace freeva
