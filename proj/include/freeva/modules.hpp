// SPDX-License-Identifier: MIT
//
// Classification of the finite-dimensional irreducible modules of the
// invariant-operator algebra generated by the two determinants d, d' and the
// Casimir images c_1..c_n subject to d d' + P(c) = 0, d' d + Q(c) = 0.  A
// lowest-weight module of dimension m has basis v, d v, ..., d^{m-1} v with
// d' v = 0, c_1 v = a v, c_i v = lambda_i v; c_1 shifts by -n along d.
// Existence of the dimension-m quotient pins P(a, lambda) = 0 together with
// Q(a - n(m-1), lambda) = 0, and irreducibility adds the inequations
// Q(a - n(m-i), lambda) != 0 for i = 2..m.  The solver eliminates the
// highest Casimir eigenvalue from the first equation (P is linear in c_n
// with constant coefficient), then the next one from the shifted second
// equation, leaving the documented free parameters; division by the
// m-dependent linear coefficient is exact polynomial division.

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "freeva/linalg.hpp"
#include "freeva/poly.hpp"
#include "freeva/zhu.hpp"

namespace freeva {

/// One solved family of candidate modules for a fixed rank and dimension.
/// `solved` expresses the pinned parameters as polynomials in the free ones
/// (plus the symbol "m" when the dimension is symbolic, dim = 0); the
/// `exclusions` are the irreducibility inequations (!= 0), one surviving
/// polynomial per excluded index, constants already dropped.
struct ModuleFamily {
  int n = 0;
  int dim = 0;  // 0 when the dimension is kept symbolic as the variable "m"
  std::vector<std::string> free_params;           // e.g. {"a"} or {"a", "l2"}
  std::vector<std::pair<std::string, Poly>> solved;  // e.g. ("l2", ...)
  std::vector<Poly> exclusions;
};

namespace detail {

inline std::string lambda_name(int i) { return "l" + std::to_string(i); }

/// Substitution c_1 -> shift, c_i -> l_i (i >= 2) into a relation polynomial.
inline Poly casimir_substitution(const Poly& rel, int n, const Poly& c1value) {
  std::map<std::string, Poly> subs;
  subs["c1"] = c1value;
  for (int i = 2; i <= n; ++i) subs["c" + std::to_string(i)] = Poly::var(lambda_name(i));
  return rel.substitute(subs);
}

/// Solves a polynomial linear in `v` for v; the division by the coefficient
/// of v must be exact in the remaining variables.
inline Poly solve_linear(const Poly& eq, const std::string& v) {
  if (eq.degree_in(v) != 1)
    throw error("classify_modules: equation is not linear in " + v);
  Poly a = eq.coeff_of(v, 1);
  Poly b = eq.coeff_of(v, 0);
  auto q = poly_try_divide(-b, a);
  if (!q)
    throw error("classify_modules: elimination of " + v + " is not exact");
  return *q;
}

inline ModuleFamily classify_core(const PQPair& pq, const Poly& mval, int mint) {
  const int n = pq.n;
  ModuleFamily fam;
  fam.n = n;
  fam.dim = mint > 0 ? mint : 0;
  const Poly a = Poly::var("a");
  const Poly shift1 = a - Rational(n) * (mval - Poly(1));
  Poly eq_p = casimir_substitution(pq.P, n, a);
  Poly eq_q = casimir_substitution(pq.Q, n, shift1);

  // Eliminate the top eigenvalue from the first condition, then the next one
  // from the shifted second; rank 2 has no variable left except a itself.
  std::vector<std::pair<std::string, Poly>> solved;
  if (n == 2) {
    Poly l2 = solve_linear(eq_p, "l2");
    Poly rest = eq_q.substitute({{"l2", l2}});
    Poly a_sol = solve_linear(rest, "a");
    solved.emplace_back("a", a_sol);
    solved.emplace_back("l2", l2.substitute({{"a", a_sol}}));
  } else {
    const std::string top = lambda_name(n);
    const std::string next = lambda_name(n - 1);
    Poly ltop = solve_linear(eq_p, top);
    Poly rest = eq_q.substitute({{top, ltop}});
    Poly lnext = solve_linear(rest, next);
    solved.emplace_back(next, lnext);
    solved.emplace_back(top, ltop.substitute({{next, lnext}}));
    fam.free_params.push_back("a");
    for (int i = 2; i <= n - 2; ++i) fam.free_params.push_back(lambda_name(i));
  }
  fam.solved = std::move(solved);

  if (mint > 0) {
    std::map<std::string, Poly> param_subs;
    for (const auto& [name, val] : fam.solved) param_subs[name] = val;
    for (int i = 2; i <= mint; ++i) {
      Poly shift_i = a - Poly(n * (mint - i));
      Poly ex = casimir_substitution(pq.Q, n, shift_i).substitute(param_subs);
      if (ex.is_zero())
        throw error("classify_modules: no irreducible module of dimension " +
                    std::to_string(mint) + " exists (index " +
                    std::to_string(i) + " vanishes identically)");
      if (ex.is_constant()) continue;  // nonzero constant: vacuous inequation
      fam.exclusions.push_back(ex);
    }
  }
  return fam;
}

}  // namespace detail

/// Classification with the dimension kept symbolic ("m"); exclusions are not
/// enumerated since their count depends on the dimension.
inline ModuleFamily classify_modules_symbolic(int n, const PQPair& pq) {
  if (pq.n != n) throw error("classify_modules_symbolic: rank mismatch");
  return detail::classify_core(pq, Poly::var("m"), -1);
}

/// Classification for a concrete dimension m >= 1.
inline ModuleFamily classify_modules(int n, int m,
                                     const std::string& fixture_root = "fixtures") {
  if (m < 1) throw error("classify_modules: dimension must be positive");
  PQPair pq = compute_PQ(n, fixture_root);
  return detail::classify_core(pq, Poly(m), m);
}

inline ModuleFamily classify_modules(const PQPair& pq, int m) {
  if (m < 1) throw error("classify_modules: dimension must be positive");
  return detail::classify_core(pq, Poly(m), m);
}

// ---------------------------------------------------------------------------
// Concrete module action.

/// Matrix of a word in {d, d', c1..cn} on the dimension-m module with basis
/// e_k = d^k v, k = 0..m-1 (columns act on basis coefficients):
///   d  : e_k -> e_{k+1}, e_{m-1} -> 0
///   d' : e_k -> -Q(a - n(k-1), lambda) e_{k-1}, e_0 -> 0
///   c_1: e_k -> (a - k n) e_k,   c_i: e_k -> lambda_i e_k.
/// The word acts leftmost-outermost, so the matrix is the ordered product of
/// the letter matrices.  Requires (a, lambda) to satisfy both module
/// conditions; violated irreducibility inequations are reported through
/// `warnings` (the matrix is still returned, the module is just reducible).
inline Matrix verma_action(const PQPair& pq, int m_dim, const Rational& a,
                           const std::vector<Rational>& lambda,
                           const std::vector<std::string>& word,
                           std::vector<std::string>* warnings = nullptr) {
  const int n = pq.n;
  if (m_dim < 1) throw error("verma_action: dimension must be positive");
  if (int(lambda.size()) != n - 1)
    throw error("verma_action: expected " + std::to_string(n - 1) +
                " Casimir eigenvalues lambda_2..lambda_n");
  auto eval_at = [&](const Poly& rel, const Rational& c1) {
    std::map<std::string, Rational> vals;
    vals["c1"] = c1;
    for (int i = 2; i <= n; ++i)
      vals["c" + std::to_string(i)] = lambda[size_t(i - 2)];
    return rel.eval(vals);
  };
  if (eval_at(pq.P, a) != 0 ||
      eval_at(pq.Q, a - Rational(n) * (m_dim - 1)) != 0)
    throw error("verma_action: (a, lambda) does not satisfy the dimension-" +
                std::to_string(m_dim) + " module conditions");
  if (warnings) {
    for (int i = 2; i <= m_dim; ++i)
      if (eval_at(pq.Q, a - Rational(n) * (m_dim - i)) == 0)
        warnings->push_back(
            "irreducibility fails at index " + std::to_string(i) +
            ": the module has a proper submodule; matrix returned anyway");
  }
  auto letter = [&](const std::string& s) {
    Matrix mat = zero_matrix(size_t(m_dim));
    if (s == "d") {
      for (int k = 0; k + 1 < m_dim; ++k) mat[size_t(k + 1)][size_t(k)] = 1;
    } else if (s == "d'") {
      for (int k = 1; k < m_dim; ++k)
        mat[size_t(k - 1)][size_t(k)] = -eval_at(pq.Q, a - Rational(n) * (k - 1));
    } else if (s == "c1") {
      for (int k = 0; k < m_dim; ++k)
        mat[size_t(k)][size_t(k)] = a - Rational(n) * k;
    } else {
      for (int i = 2; i <= n; ++i)
        if (s == "c" + std::to_string(i)) {
          for (int k = 0; k < m_dim; ++k)
            mat[size_t(k)][size_t(k)] = lambda[size_t(i - 2)];
          return mat;
        }
      throw error("verma_action: unknown operator '" + s + "'");
    }
    return mat;
  };
  Matrix out = identity_matrix(size_t(m_dim));
  for (const std::string& s : word) out = matmul(out, letter(s));
  return out;
}

inline Matrix verma_action(int n, int m_dim, const Rational& a,
                           const std::vector<Rational>& lambda,
                           const std::vector<std::string>& word,
                           std::vector<std::string>* warnings = nullptr,
                           const std::string& fixture_root = "fixtures") {
  return verma_action(compute_PQ(n, fixture_root), m_dim, a, lambda, word,
                      warnings);
}

}  // namespace freeva
