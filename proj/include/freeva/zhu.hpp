// SPDX-License-Identifier: MIT
//
// Zhu algebra of the beta-gamma system, realized concretely as the Weyl
// algebra of differential operators on n x n matrices: the class of gamma[i,j]
// maps to the coordinate x[i,j], the class of beta[i,j] to the derivative
// d[i,j], and the class of a derivative field d(a) to -wt(a) times the class
// of a.  The star product a * b = sum_j binom(wt a, j) a(j-1)b (binomials via
// falling factorials, so half-integer weights are fine) descends to this
// quotient, and composites reduce through the star identity
//   [:a m:] = [a][m] - sum_{j>=1} binom(wt a, j) [a(j-1)m].
// On top of the projection sit the determinant relation polynomials P and Q
// with d d' + P(c_1..c_n) = 0 and d' d + Q(c_1..c_n) = 0, recovered exactly
// by linear algebra over the Weyl coefficients, plus the Bernstein top-symbol
// helpers used to compare their leading parts against det of the symbol
// matrix via the Newton-Girard recursion.

#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "freeva/linalg.hpp"
#include "freeva/model.hpp"
#include "freeva/ope.hpp"
#include "freeva/poly.hpp"
#include "freeva/weyl.hpp"

namespace freeva {

/// Star product with the weight of the left factor in the binomial; the sum
/// terminates because circle products vanish once the pole index exceeds the
/// total weight.  The left factor must be weight-homogeneous.
inline FieldExpr zhu_star(const FieldExpr& a, const FieldExpr& b) {
  if (a.is_zero() || b.is_zero()) return FieldExpr::zero();
  const int w2 = weight2(a.terms().begin()->first);
  for (const auto& [m, c] : a.terms())
    if (weight2(m) != w2)
      throw error("zhu_star: left factor must be weight-homogeneous");
  const Rational wt = Rational(w2) / 2;
  const int bound = (max_weight2(a) + max_weight2(b)) / 2;
  FieldExpr out = FieldExpr::zero();
  Rational binom = 1;
  for (int j = 0; j <= bound; ++j) {
    if (j > 0) binom = binom * (wt - (j - 1)) / j;
    if (binom == 0) break;
    out = out + binom * circle(a, b, j - 1);
  }
  return out;
}

namespace detail {

/// Image of a single generator factor d^k(g): the Weyl letter of g scaled by
/// prod_{s=0}^{k-1} -(1/2 + s) from iterating the derivative rule.
inline WeylElement zhu_factor(Factor f) {
  Family fam = factor_family(f);
  if (fam != Family::Beta && fam != Family::Gamma)
    throw error("zhu_project: defined on the beta-gamma system only");
  const int row = factor_row(f), col = factor_col(f);
  const unsigned k = factor_deriv(f);
  Rational scale = 1;
  for (unsigned s = 0; s < k; ++s) scale *= -(Rational(1, 2) + s);
  WeylElement base = fam == Family::Beta ? WeylElement::d(row, col)
                                         : WeylElement::x(row, col);
  return scale * base;
}

inline WeylElement zhu_mono(const Mono& m);

inline WeylElement zhu_expr(const FieldExpr& e) {
  WeylElement out;
  for (const auto& [m, c] : e.terms()) out += c * zhu_mono(m);
  return out;
}

inline WeylElement zhu_mono(const Mono& m) {
  if (m.empty()) return WeylElement::unit();
  static std::map<Mono, WeylElement> memo;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
  }
  const Factor f = m.front();
  const Mono rest(m.begin() + 1, m.end());
  WeylElement out = weyl_multiply(zhu_factor(f), zhu_mono(rest));
  const FieldExpr fe = FieldExpr::monomial(Mono{f});
  const FieldExpr re = FieldExpr::monomial(rest);
  const Rational wtf = Rational(weight2(f)) / 2;
  const int bound = (weight2(f) + weight2(rest)) / 2;
  Rational binom = 1;
  for (int j = 1; j <= bound; ++j) {
    binom = binom * (wtf - (j - 1)) / j;
    if (binom == 0) break;
    FieldExpr corr = circle(fe, re, j - 1);
    if (!corr.is_zero()) out -= binom * zhu_expr(corr);
  }
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(m, out);
  return out;
}

}  // namespace detail

/// Image of a field in the Weyl algebra.  Defined on the beta-gamma side
/// only; fermionic factors are rejected.
inline WeylElement zhu_project(const FieldExpr& e) { return detail::zhu_expr(e); }

// ---------------------------------------------------------------------------
// Determinant relation polynomials.

/// Weyl images of the commutant generators: the two determinants and the
/// Casimir images c_1..c_n.  The raw class of C_1 = sum :beta gamma: is the
/// Euler operator plus the symmetric-ordering constant n^2/2 (each pair
/// contributes the Weyl-symmetric x d + 1/2); the generator c_1 used in the
/// relation polynomials and the module classification is normalized to the
/// plain Euler operator -- the image of the classical first Casimir under the
/// left GL_n action -- by dropping that constant.  The higher Casimir images
/// are built from traceless currents, whose classes carry no such constant,
/// and are used as is.
struct ZhuGenerators {
  int n = 0;
  WeylElement d, dp;
  std::vector<WeylElement> c;  // c[i-1] = normalized image of C_{i}
};

inline ZhuGenerators zhu_generators(int n,
                                    const std::string& fixture_root = "fixtures") {
  if (n < 2 || n > 4)
    throw error("zhu_generators: supported ranks are 2, 3, 4");
  ModelContext m = build_model(n, ModelKind::bg);
  build_commutant_generators(m, fixture_root);
  ZhuGenerators g;
  g.n = n;
  g.d = zhu_project(m.field("D"));
  g.dp = zhu_project(m.field("D'"));
  g.c.push_back(zhu_project(m.field("C[1]")) -
                Rational(n * n, 2) * WeylElement::unit());
  for (int i = 2; i <= n; ++i)
    g.c.push_back(zhu_project(m.field("C[" + std::to_string(i) + "]")));
  return g;
}

struct PQPair {
  int n = 0;
  Poly P, Q;  // d d' + P(c) = 0 and d' d + Q(c) = 0
};

namespace detail {

/// All exponent tuples (e_1..e_n) with sum i * e_i <= n; the weight bound
/// that a degree-2n central element can involve.
inline std::vector<std::vector<unsigned>> casimir_tuples(int n) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur(size_t(n), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e * (i + 1) <= left; ++e) {
      cur[size_t(i)] = unsigned(e);
      rec(i + 1, left - e * (i + 1));
    }
    cur[size_t(i)] = 0;
  };
  rec(0, n);
  return out;
}

/// Writes `target` as a polynomial in the Casimir images by exact linear
/// algebra over the Weyl-word coordinates; throws if no rewriting exists.
inline Poly rewrite_in_casimirs(const WeylElement& target,
                                const ZhuGenerators& g, const std::string& who) {
  const int n = g.n;
  const auto tuples = casimir_tuples(n);
  std::vector<WeylElement> elems;
  elems.reserve(tuples.size());
  for (const auto& t : tuples) {
    WeylElement e = WeylElement::unit();
    for (int i = 0; i < n; ++i)
      for (unsigned k = 0; k < t[size_t(i)]; ++k)
        e = weyl_multiply(e, g.c[size_t(i)]);
    elems.push_back(std::move(e));
  }
  std::set<WeylWord> words;
  for (const auto& e : elems)
    for (const auto& [w, c] : e.terms()) words.insert(w);
  for (const auto& [w, c] : target.terms()) words.insert(w);
  std::map<WeylWord, size_t> row_of;
  for (const auto& w : words) row_of.emplace(w, row_of.size());
  Matrix a = zero_matrix(words.size(), tuples.size());
  Vec b(words.size(), 0);
  for (size_t t = 0; t < elems.size(); ++t)
    for (const auto& [w, c] : elems[t].terms()) a[row_of.at(w)][t] = c;
  for (const auto& [w, c] : target.terms()) b[row_of.at(w)] = c;
  auto sol = solve_unique(a, b);
  if (!sol)
    throw error(who + ": target is not a polynomial in the Casimir images");
  Poly out;
  for (size_t t = 0; t < tuples.size(); ++t) {
    if ((*sol)[t] == 0) continue;
    PolyMono mono;
    for (int i = 0; i < n; ++i)
      if (tuples[t][size_t(i)] > 0)
        mono.emplace_back("c" + std::to_string(i + 1), tuples[t][size_t(i)]);
    out.add_term(mono, (*sol)[t]);
  }
  return out;
}

}  // namespace detail

/// The two relation polynomials, recovered from the Weyl-algebra products.
inline PQPair compute_PQ(int n, const std::string& fixture_root = "fixtures") {
  ZhuGenerators g = zhu_generators(n, fixture_root);
  PQPair out;
  out.n = n;
  out.P = -detail::rewrite_in_casimirs(weyl_multiply(g.d, g.dp), g, "compute_PQ");
  out.Q = -detail::rewrite_in_casimirs(weyl_multiply(g.dp, g.d), g, "compute_PQ");
  return out;
}

// ---------------------------------------------------------------------------
// Bernstein top symbols and the Newton-Girard determinant.

/// Elementary symmetric polynomial E_n from the power sums p_1..p_n via the
/// classical recursion m E_m = sum_{k=1}^{m} (-1)^{k-1} p_k E_{m-k}.  Works
/// over any commutative ring type with rational scalar multiplication.
template <class T>
inline T newton_girard(const std::vector<T>& p) {
  const size_t n = p.size();
  std::vector<T> e;
  e.reserve(n + 1);
  e.push_back(T(1));
  for (size_t m = 1; m <= n; ++m) {
    T acc(0);
    for (size_t k = 1; k <= m; ++k) {
      T term = p[k - 1] * e[m - k];
      if (k % 2 == 1)
        acc = acc + term;
      else
        acc = acc - term;
    }
    e.push_back(Rational(1, long(m)) * acc);
  }
  return e[n];
}

namespace detail {
inline std::string sym_x(int i, int j) {
  return "x[" + std::to_string(i) + "," + std::to_string(j) + "]";
}
inline std::string sym_y(int i, int j) {
  return "y[" + std::to_string(i) + "," + std::to_string(j) + "]";
}
}  // namespace detail

/// Commutative polynomial of the top Bernstein-degree words, coordinates
/// x[i,j] for multiplication letters and y[i,j] for derivative letters.
inline Poly weyl_top_symbol(const WeylElement& e) {
  const int top = e.bernstein_degree();
  Poly out;
  for (const auto& [w, c] : e.terms()) {
    if (w.degree() != top) continue;
    std::map<std::string, unsigned> counts;
    for (WeylLetter l : w.xs) counts[detail::sym_x(weyl_row(l), weyl_col(l))]++;
    for (WeylLetter l : w.ds) counts[detail::sym_y(weyl_row(l), weyl_col(l))]++;
    PolyMono mono(counts.begin(), counts.end());
    out.add_term(mono, c);
  }
  return out;
}

/// Symbol matrix X with X[p][q] = sum_b y[p,b] x[q,b]; the traces of its
/// powers are the top symbols of the Casimir images up to lower-order
/// Casimirs, and det X is the product of the two determinant symbols.
inline std::vector<std::vector<Poly>> symbol_matrix(int n) {
  std::vector<std::vector<Poly>> x(size_t(n),
                                   std::vector<Poly>(size_t(n), Poly::zero()));
  for (int p = 1; p <= n; ++p)
    for (int q = 1; q <= n; ++q)
      for (int b = 1; b <= n; ++b)
        x[size_t(p - 1)][size_t(q - 1)] +=
            Poly::var(detail::sym_y(p, b)) * Poly::var(detail::sym_x(q, b));
  return x;
}

/// Power sums p_k = tr(X^k), k = 1..n, of the symbol matrix.
inline std::vector<Poly> symbol_power_sums(int n) {
  auto x = symbol_matrix(n);
  std::vector<Poly> out;
  std::vector<std::vector<Poly>> acc = x;
  for (int k = 1; k <= n; ++k) {
    if (k > 1) {
      std::vector<std::vector<Poly>> next(
          size_t(n), std::vector<Poly>(size_t(n), Poly::zero()));
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l)
          for (int j = 0; j < n; ++j)
            next[size_t(i)][size_t(j)] +=
                acc[size_t(i)][size_t(l)] * x[size_t(l)][size_t(j)];
      acc = next;
    }
    Poly tr;
    for (int i = 0; i < n; ++i) tr += acc[size_t(i)][size_t(i)];
    out.push_back(tr);
  }
  return out;
}

}  // namespace freeva
