// SPDX-License-Identifier: MIT
//
// Canonical field expressions: exact rational linear combinations of
// canonical normally ordered monomials of free-field factors.
//
// Representation invariants:
//   * every monomial is sorted in canonical factor order,
//   * no monomial repeats an odd factor (such a term is identically zero),
//   * no term has coefficient zero,
//   * the zero field is the empty term set, the unit field is the empty
//     monomial with coefficient one.
//
// FieldExpr is an immutable value type; all operations return new values.
// The term map is shared, so copies are cheap and safe to share across
// threads.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <utility>

#include "freeva/symbol.hpp"

namespace freeva {

/// Sorts raw factors into canonical order with the parity sign of the
/// permutation of odd factors.  Returns false (term vanishes) when two
/// identical odd factors collide.
inline bool canonical_sort(Mono& m, int& sign) {
  sign = 1;
  // Insertion sort; counts transpositions of odd-odd pairs exactly.
  for (size_t i = 1; i < m.size(); ++i) {
    Factor x = m[i];
    size_t j = i;
    while (j > 0 && m[j - 1] > x) {
      if (odd(m[j - 1]) && odd(x)) sign = -sign;
      m[j] = m[j - 1];
      --j;
    }
    m[j] = x;
  }
  for (size_t i = 1; i < m.size(); ++i)
    if (m[i] == m[i - 1] && odd(m[i])) return false;
  return true;
}

class FieldExpr {
 public:
  using TermMap = std::map<Mono, Rational>;

  FieldExpr() : terms_(empty_map()) {}
  explicit FieldExpr(TermMap t)
      : terms_(std::make_shared<const TermMap>(std::move(t))) {}

  static FieldExpr zero() { return FieldExpr(); }
  static FieldExpr unit() { return monomial(Mono{}); }

  /// Canonicalizes a raw monomial (arbitrary factor order) into an
  /// expression: signed sort, odd repetitions annihilate.
  static FieldExpr monomial(Mono m, Rational coeff = 1) {
    if (coeff == 0) return zero();
    int sign = 1;
    if (!canonical_sort(m, sign)) return zero();
    TermMap t;
    t.emplace(std::move(m), sign < 0 ? -coeff : coeff);
    return FieldExpr(std::move(t));
  }

  static FieldExpr generator(GeneratorSymbol g, unsigned deriv = 0) {
    return monomial({make_factor(g.family, g.row, g.col, deriv)});
  }

  const TermMap& terms() const { return *terms_; }
  bool is_zero() const { return terms_->empty(); }
  size_t size() const { return terms_->size(); }

  friend bool operator==(const FieldExpr& a, const FieldExpr& b) {
    return *a.terms_ == *b.terms_;
  }

  FieldExpr operator-() const { return *this * Rational(-1); }

  friend FieldExpr operator+(const FieldExpr& a, const FieldExpr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    TermMap t = *a.terms_;
    for (const auto& [m, c] : *b.terms_) {
      auto [it, fresh] = t.emplace(m, c);
      if (!fresh) {
        it->second += c;
        if (it->second == 0) t.erase(it);
      }
    }
    return FieldExpr(std::move(t));
  }

  friend FieldExpr operator-(const FieldExpr& a, const FieldExpr& b) {
    return a + (b * Rational(-1));
  }

  friend FieldExpr operator*(const FieldExpr& a, const Rational& s) {
    if (s == 0 || a.is_zero()) return zero();
    TermMap t;
    for (const auto& [m, c] : *a.terms_) t.emplace(m, c * s);
    return FieldExpr(std::move(t));
  }
  friend FieldExpr operator*(const Rational& s, const FieldExpr& a) {
    return a * s;
  }

 private:
  static std::shared_ptr<const TermMap> empty_map() {
    static const auto e = std::make_shared<const TermMap>();
    return e;
  }
  std::shared_ptr<const TermMap> terms_;
};

/// Accumulator used by the engine while summing many contributions; converts
/// to a canonical FieldExpr at the end ("streaming" partial sums, no
/// materialized cross-term lists).
class ExprBuilder {
 public:
  void add(Mono m, Rational coeff) {
    if (coeff == 0) return;
    int sign = 1;
    if (!canonical_sort(m, sign)) return;
    add_canonical(std::move(m), sign < 0 ? -coeff : coeff);
  }
  void add_canonical(Mono m, Rational coeff) {
    auto [it, fresh] = t_.emplace(std::move(m), coeff);
    if (!fresh) {
      it->second += coeff;
      if (it->second == 0) t_.erase(it);
    }
  }
  void add(const FieldExpr& e, const Rational& scale = 1) {
    if (scale == 0) return;
    for (const auto& [m, c] : e.terms()) add_canonical(m, c * scale);
  }
  FieldExpr take() { return FieldExpr(std::move(t_)); }

 private:
  FieldExpr::TermMap t_;
};

/// Canonical form of a raw term sum: factors sorted with parity signs
/// absorbed into coefficients, duplicate monomials merged, zero coefficients
/// and odd squares dropped.  Linear, and the identity on canonical input.
inline FieldExpr canonicalize(const std::vector<std::pair<Mono, Rational>>& raw) {
  ExprBuilder b;
  for (const auto& [m, c] : raw) b.add(m, c);
  return b.take();
}

// ---------------------------------------------------------------------------
// Graded data of an expression
// ---------------------------------------------------------------------------

/// Renders an expression in the text grammar; deterministic (terms in
/// canonical monomial order).  Defined here so that error messages can show
/// offending terms; the full grammar lives in parse.hpp.
inline std::string render_mono(const Mono& m) {
  if (m.empty()) return "1";
  if (m.size() == 1) return to_string(m[0]);
  std::string s = "NO(";
  for (size_t i = 0; i < m.size(); ++i) {
    if (i) s += ", ";
    s += to_string(m[i]);
  }
  return s + ")";
}

inline std::string render(const FieldExpr& e) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : e.terms()) {
    Rational a = c;
    if (first) {
      if (a < 0) { os << "-"; a = -a; }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    if (a != 1 || m.empty()) {
      os << to_string(a);
      if (!m.empty()) os << " * ";
    }
    if (!m.empty()) os << render_mono(m);
  }
  return os.str();
}

/// Conformal weight of a homogeneous expression.  Throws (reporting the two
/// offending terms) on mixed-weight input; zero has no defined weight and is
/// accepted with any expectation, so callers treat it separately.
inline Rational weight(const FieldExpr& e) {
  if (e.is_zero()) throw error("weight: the zero field has no weight");
  auto it = e.terms().begin();
  int w2 = weight2(it->first);
  for (const auto& [m, c] : e.terms()) {
    if (weight2(m) != w2)
      throw error("weight: mixed-weight expression; terms " +
                  render_mono(it->first) + " and " + render_mono(m));
  }
  return Rational(w2) / 2;
}

/// Twice the largest term weight; 0 for the zero expression.  Total, used
/// for a-priori vanishing bounds.
inline int max_weight2(const FieldExpr& e) {
  int w = 0;
  for (const auto& [m, c] : e.terms()) w = std::max(w, weight2(m));
  return w;
}

/// Filtration degree: the maximum number of factors in a monomial.
/// Returns nullopt (the "-infinity" sentinel) for the zero expression.
inline std::optional<int> degree(const FieldExpr& e) {
  if (e.is_zero()) return std::nullopt;
  int d = 0;
  for (const auto& [m, c] : e.terms()) d = std::max<int>(d, int(m.size()));
  return d;
}

/// Fermion number of a homogeneous expression; throws on mixed input.
inline int fermionic_charge(const FieldExpr& e) {
  if (e.is_zero()) return 0;
  auto it = e.terms().begin();
  int q = charge(it->first);
  for (const auto& [m, c] : e.terms()) {
    if (charge(m) != q)
      throw error("fermionic_charge: mixed-charge expression; terms " +
                  render_mono(it->first) + " and " + render_mono(m));
  }
  return q;
}

/// Parity of a homogeneous expression (0 even / 1 odd); throws on mixed.
inline int parity(const FieldExpr& e) {
  if (e.is_zero()) return 0;
  auto it = e.terms().begin();
  int p = parity(it->first);
  for (const auto& [m, c] : e.terms()) {
    if (parity(m) != p)
      throw error("parity: mixed-parity expression; terms " +
                  render_mono(it->first) + " and " + render_mono(m));
  }
  return p;
}

}  // namespace freeva
