// SPDX-License-Identifier: MIT
//
// Exact Weyl algebra of polynomial differential operators on the space of
// n x n matrices.  Generators: multiplication operators x[i,j] (matrix
// coordinates) and partial derivatives d[i,j], with [d[i,j], x[k,l]] =
// delta_{ik} delta_{jl}.  Elements are stored in normal order (all x letters
// to the left of all d letters, each group sorted), so equality is literal
// coefficient comparison.  The Bernstein filtration (total word length)
// grades the algebra; products add filtration degrees and commutators drop
// by at least two, which the test-suite checks as properties.

#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <map>
#include <string>
#include <vector>

#include "freeva/rational.hpp"

namespace freeva {

/// One generator index: row in the high byte, column in the low byte
/// (both 1-based).
using WeylLetter = std::uint16_t;

inline WeylLetter weyl_letter(int row, int col) {
  if (row < 1 || row > 255 || col < 1 || col > 255)
    throw error("weyl_letter: index out of range");
  return WeylLetter((row << 8) | col);
}
inline int weyl_row(WeylLetter l) { return l >> 8; }
inline int weyl_col(WeylLetter l) { return l & 0xff; }

/// Normal-ordered word: multiplication letters then derivative letters,
/// each sorted ascending (the letters within a group commute).
struct WeylWord {
  std::vector<WeylLetter> xs;
  std::vector<WeylLetter> ds;
  auto operator<=>(const WeylWord&) const = default;
  int degree() const { return int(xs.size() + ds.size()); }
};

class WeylElement {
 public:
  WeylElement() = default;
  static WeylElement zero() { return WeylElement(); }
  static WeylElement unit() { return word(WeylWord{}, 1); }
  static WeylElement word(const WeylWord& w, const Rational& c) {
    WeylElement e;
    if (c != 0) e.terms_[w] = c;
    return e;
  }
  static WeylElement x(int row, int col) {
    return word(WeylWord{{weyl_letter(row, col)}, {}}, 1);
  }
  static WeylElement d(int row, int col) {
    return word(WeylWord{{}, {weyl_letter(row, col)}}, 1);
  }

  const std::map<WeylWord, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool operator==(const WeylElement& o) const { return terms_ == o.terms_; }
  bool operator!=(const WeylElement& o) const { return terms_ != o.terms_; }

  /// Top Bernstein filtration degree; -1 for the zero element.
  int bernstein_degree() const {
    int best = -1;
    for (const auto& [w, c] : terms_) best = std::max(best, w.degree());
    return best;
  }

  void add_term(const WeylWord& w, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
      terms_.emplace(w, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  WeylElement operator-() const {
    WeylElement out;
    for (const auto& [w, c] : terms_) out.terms_[w] = -c;
    return out;
  }
  WeylElement& operator+=(const WeylElement& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  WeylElement& operator-=(const WeylElement& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  friend WeylElement operator+(WeylElement a, const WeylElement& b) {
    return a += b;
  }
  friend WeylElement operator-(WeylElement a, const WeylElement& b) {
    return a -= b;
  }
  friend WeylElement operator*(const Rational& c, const WeylElement& e) {
    WeylElement out;
    if (c == 0) return out;
    for (const auto& [w, ec] : e.terms_) out.terms_[w] = c * ec;
    return out;
  }
  friend WeylElement operator*(const WeylElement& e, const Rational& c) {
    return c * e;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : terms_) {
      Rational a = c;
      std::string sign = a < 0 ? "-" : "+";
      if (a < 0) a = -a;
      if (first) {
        if (sign == "-") out += "-";
      } else {
        out += " " + sign + " ";
      }
      first = false;
      std::string body;
      for (WeylLetter l : w.xs)
        body += "x[" + std::to_string(weyl_row(l)) + "," +
                std::to_string(weyl_col(l)) + "] ";
      for (WeylLetter l : w.ds)
        body += "d[" + std::to_string(weyl_row(l)) + "," +
                std::to_string(weyl_col(l)) + "] ";
      if (!body.empty()) body.pop_back();
      if (body.empty()) {
        out += freeva::to_string(a);
      } else if (a == 1) {
        out += body;
      } else {
        out += freeva::to_string(a) + " " + body;
      }
    }
    return out;
  }

 private:
  std::map<WeylWord, Rational> terms_;
};

namespace detail {

inline void insert_sorted(std::vector<WeylLetter>& v, WeylLetter l) {
  v.insert(std::upper_bound(v.begin(), v.end(), l), l);
}

inline std::vector<WeylLetter> merge_sorted(const std::vector<WeylLetter>& a,
                                            const std::vector<WeylLetter>& b) {
  std::vector<WeylLetter> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// Normal ordering of (product of ds) * (product of xs).  Peels the
/// rightmost derivative letter: moving d across the block of multiplication
/// letters gives the reordered term plus one contraction term for every
/// matching multiplication letter.
inline WeylElement weyl_cross(std::vector<WeylLetter> ds,
                              const std::vector<WeylLetter>& xs) {
  if (ds.empty()) return WeylElement::word(WeylWord{xs, {}}, 1);
  WeylLetter last = ds.back();
  ds.pop_back();
  WeylElement out;
  WeylElement base = weyl_cross(ds, xs);
  for (const auto& [w, c] : base.terms()) {
    WeylWord shifted = w;
    insert_sorted(shifted.ds, last);
    out.add_term(shifted, c);
  }
  for (size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] != last) continue;
    std::vector<WeylLetter> rest = xs;
    rest.erase(rest.begin() + long(i));
    out += weyl_cross(ds, rest);
  }
  return out;
}

}  // namespace detail

/// Exact product in the Weyl algebra, result in normal order.
inline WeylElement weyl_multiply(const WeylElement& u, const WeylElement& v) {
  WeylElement out;
  for (const auto& [wu, cu] : u.terms()) {
    for (const auto& [wv, cv] : v.terms()) {
      WeylElement mid = detail::weyl_cross(wu.ds, wv.xs);
      Rational scale = cu * cv;
      for (const auto& [wm, cm] : mid.terms()) {
        WeylWord w;
        w.xs = detail::merge_sorted(wu.xs, wm.xs);
        w.ds = detail::merge_sorted(wm.ds, wv.ds);
        out.add_term(w, scale * cm);
      }
    }
  }
  return out;
}

inline WeylElement operator*(const WeylElement& u, const WeylElement& v) {
  return weyl_multiply(u, v);
}

inline WeylElement weyl_commutator(const WeylElement& u, const WeylElement& v) {
  return weyl_multiply(u, v) - weyl_multiply(v, u);
}

}  // namespace freeva
