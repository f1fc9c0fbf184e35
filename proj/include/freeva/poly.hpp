// SPDX-License-Identifier: MIT
//
// Sparse multivariate polynomials over the rationals with string-named
// variables.  Supports the usual ring operations, substitution, exact
// evaluation, weighted degrees / top parts, per-variable coefficient
// extraction, and exact division (throws when the divisor does not divide).
// Used for the Casimir relation polynomials and the module classification.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "freeva/rational.hpp"

namespace freeva {

/// Monomial: sorted (variable, exponent) pairs, exponents strictly positive.
using PolyMono = std::vector<std::pair<std::string, unsigned>>;

inline PolyMono poly_mono_mul(const PolyMono& a, const PolyMono& b) {
  PolyMono out;
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
      out.push_back(a[i++]);
    else if (i == a.size() || b[j].first < a[i].first)
      out.push_back(b[j++]);
    else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i, ++j;
    }
  }
  return out;
}

inline unsigned poly_mono_total_degree(const PolyMono& m) {
  unsigned d = 0;
  for (const auto& [v, e] : m) d += e;
  return d;
}

/// Graded lexicographic order (total degree first, then variable-wise
/// comparison).  This is a genuine monomial order, i.e. compatible with
/// multiplication, which the exact-division routine relies on.
inline bool poly_mono_less(const PolyMono& a, const PolyMono& b) {
  unsigned da = poly_mono_total_degree(a), db = poly_mono_total_degree(b);
  if (da != db) return da < db;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first != b[j].first)
      // The earlier variable name has a positive exponent on exactly one
      // side; that side is the lexicographically larger monomial.
      return a[i].first > b[j].first;
    if (a[i].second != b[j].second) return a[i].second < b[j].second;
    ++i, ++j;
  }
  // Equal total degree with one side a strict prefix is impossible, so both
  // ranges are exhausted here and the monomials are equal.
  return false;
}

/// Divisibility of monomials; quotient returned when it exists.
inline std::optional<PolyMono> poly_mono_divide(const PolyMono& num,
                                                const PolyMono& den) {
  PolyMono out;
  size_t i = 0;
  for (const auto& [v, e] : den) {
    while (i < num.size() && num[i].first < v) out.push_back(num[i++]);
    if (i == num.size() || num[i].first != v || num[i].second < e)
      return std::nullopt;
    if (num[i].second > e) out.emplace_back(v, num[i].second - e);
    ++i;
  }
  while (i < num.size()) out.push_back(num[i++]);
  return out;
}

class Poly {
 public:
  Poly() = default;
  Poly(int c) {  // NOLINT: implicit by design, enables generic ring code
    if (c != 0) terms_[{}] = c;
  }
  static Poly zero() { return Poly(); }
  static Poly constant(const Rational& c) {
    Poly p;
    if (c != 0) p.terms_[{}] = c;
    return p;
  }
  static Poly var(const std::string& name) {
    Poly p;
    p.terms_[{{name, 1}}] = 1;
    return p;
  }
  static Poly monomial(const PolyMono& m, const Rational& c) {
    Poly p;
    if (c != 0) p.terms_[m] = c;
    return p;
  }

  const std::map<PolyMono, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return terms_ != o.terms_; }

  /// Nonzero constant test (used to drop vacuous inequations).
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }
  Rational constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw error("Poly: not a constant");
    return terms_.begin()->second;
  }

  void add_term(const PolyMono& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly operator-() const {
    Poly out;
    for (const auto& [m, c] : terms_) out.terms_[m] = -c;
    return out;
  }
  Poly& operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_)
        out.add_term(poly_mono_mul(ma, mb), ca * cb);
    return out;
  }
  friend Poly operator*(const Rational& c, const Poly& p) {
    Poly out;
    if (c == 0) return out;
    for (const auto& [m, pc] : p.terms_) out.terms_[m] = c * pc;
    return out;
  }
  friend Poly operator*(const Poly& p, const Rational& c) { return c * p; }

  Poly pow(unsigned k) const {
    Poly out = Poly(1);
    for (unsigned i = 0; i < k; ++i) out = out * (*this);
    return out;
  }

  /// Highest exponent of `v` across all terms (0 when the variable is absent).
  unsigned degree_in(const std::string& v) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_)
      for (const auto& [name, e] : m)
        if (name == v) d = std::max(d, e);
    return d;
  }

  /// Coefficient of v^k, a polynomial in the remaining variables.
  Poly coeff_of(const std::string& v, unsigned k) const {
    Poly out;
    for (const auto& [m, c] : terms_) {
      unsigned e = 0;
      PolyMono rest;
      for (const auto& [name, exp] : m) {
        if (name == v)
          e = exp;
        else
          rest.emplace_back(name, exp);
      }
      if (e == k) out.add_term(rest, c);
    }
    return out;
  }

  Rational coeff(const PolyMono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Substitute polynomials for variables; unmapped variables stay themselves.
  Poly substitute(const std::map<std::string, Poly>& subs) const {
    Poly out;
    for (const auto& [m, c] : terms_) {
      Poly term = Poly::constant(c);
      for (const auto& [name, e] : m) {
        auto it = subs.find(name);
        Poly factor = it == subs.end() ? Poly::var(name) : it->second;
        term = term * factor.pow(e);
      }
      out += term;
    }
    return out;
  }

  /// Full evaluation; every variable present in the polynomial must be mapped.
  Rational eval(const std::map<std::string, Rational>& vals) const {
    Rational out = 0;
    for (const auto& [m, c] : terms_) {
      Rational term = c;
      for (const auto& [name, e] : m) {
        auto it = vals.find(name);
        if (it == vals.end()) throw error("Poly::eval: unbound variable " + name);
        for (unsigned i = 0; i < e; ++i) term *= it->second;
      }
      out += term;
    }
    return out;
  }

  /// Maximal weighted degree with per-variable weights (unlisted variables
  /// weigh 1); -1 for the zero polynomial.
  int weighted_degree(const std::map<std::string, int>& w) const {
    int best = -1;
    for (const auto& [m, c] : terms_) {
      int d = 0;
      for (const auto& [name, e] : m) {
        auto it = w.find(name);
        d += (it == w.end() ? 1 : it->second) * int(e);
      }
      best = std::max(best, d);
    }
    return best;
  }

  /// Sum of the terms of maximal weighted degree.
  Poly top_part(const std::map<std::string, int>& w) const {
    int top = weighted_degree(w);
    Poly out;
    for (const auto& [m, c] : terms_) {
      int d = 0;
      for (const auto& [name, e] : m) {
        auto it = w.find(name);
        d += (it == w.end() ? 1 : it->second) * int(e);
      }
      if (d == top) out.add_term(m, c);
    }
    return out;
  }

  std::vector<std::string> variables() const {
    std::vector<std::string> out;
    for (const auto& [m, c] : terms_)
      for (const auto& [name, e] : m)
        if (std::find(out.begin(), out.end(), name) == out.end())
          out.push_back(name);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Deterministic rendering, leading (graded-lex largest) term first.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::vector<const std::pair<const PolyMono, Rational>*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
      return poly_mono_less(b->first, a->first);
    });
    std::string out;
    bool first = true;
    for (const auto* t : order) {
      Rational c = t->second;
      std::string sign = c < 0 ? "-" : "+";
      if (c < 0) c = -c;
      if (first) {
        if (sign == "-") out += "-";
      } else {
        out += " " + sign + " ";
      }
      first = false;
      std::string mono;
      for (const auto& [name, e] : t->first) {
        if (!mono.empty()) mono += "*";
        mono += name;
        if (e > 1) mono += "^" + std::to_string(e);
      }
      if (mono.empty()) {
        out += freeva::to_string(c);
      } else if (c == 1) {
        out += mono;
      } else {
        out += freeva::to_string(c) + "*" + mono;
      }
    }
    return out;
  }

 private:
  std::map<PolyMono, Rational> terms_;
};

/// Exact division num / den; nullopt when den does not divide num.
/// Standard leading-term reduction under the graded-lex order: when the
/// quotient exists, the leading term of the remainder is always divisible by
/// the leading term of den, so the loop either terminates at zero or proves
/// non-divisibility.
inline std::optional<Poly> poly_try_divide(Poly num, const Poly& den) {
  if (den.is_zero()) throw error("poly_try_divide: division by zero");
  auto leading = [](const Poly& p) {
    const std::pair<const PolyMono, Rational>* best = nullptr;
    for (const auto& t : p.terms())
      if (!best || poly_mono_less(best->first, t.first)) best = &t;
    return best;
  };
  const auto* dl = leading(den);
  Poly q;
  while (!num.is_zero()) {
    const auto* nl = leading(num);
    auto qm = poly_mono_divide(nl->first, dl->first);
    if (!qm) return std::nullopt;
    Rational qc = nl->second / dl->second;
    Poly qterm = Poly::monomial(*qm, qc);
    q += qterm;
    num -= qterm * den;
  }
  return q;
}

/// Exact division that must succeed.
inline Poly poly_divide(const Poly& num, const Poly& den) {
  auto q = poly_try_divide(num, den);
  if (!q) throw error("poly_divide: not divisible");
  return *q;
}

}  // namespace freeva
