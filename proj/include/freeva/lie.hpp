// SPDX-License-Identifier: MIT
//
// Finite-dimensional Lie (super)algebra data.
//
// Two layers:
//  * plain matrix Lie algebras over the rationals (sl_n bases, trace form),
//    built on the dense linalg helpers;
//  * the abstract superalgebra gl(n|n) in the E/F presentation, with its
//    exact bracket table.  The even part is gl_n + gl_n spanned by
//    E+^{ab}, E-^{ab}; the odd part is spanned by F+^{ab}, F-^{ab}.  The
//    element C = sum_a (E+^{aa} + E-^{aa}) is central, and the quotient by
//    C is the algebra whose currents the free-field realization produces
//    (the realization kills C identically, so brackets computed here can be
//    pushed through the current map without further normalization).

#pragma once

#include <string>
#include <vector>

#include "freeva/linalg.hpp"

namespace freeva {

// ---------------------------------------------------------------------------
// sl_n over the rationals
// ---------------------------------------------------------------------------

/// Standard basis of sl_n: E_ij for i != j, then H_i = E_11 - E_{i+1,i+1}
/// for i = 1..n-1.  Order matches the usual off-diagonal-then-Cartan listing.
struct SlBasis {
  std::vector<Matrix> mats;
  std::vector<std::string> names;  // "L[i,j]" and "LH[i]"
};

inline SlBasis sl_basis(size_t n) {
  SlBasis b;
  for (size_t i = 1; i <= n; ++i)
    for (size_t j = 1; j <= n; ++j) {
      if (i == j) continue;
      b.mats.push_back(matrix_unit(n, i, j));
      b.names.push_back("L[" + std::to_string(i) + "," + std::to_string(j) + "]");
    }
  for (size_t i = 1; i < n; ++i) {
    b.mats.push_back(mat_add(matrix_unit(n, 1, 1), matrix_unit(n, i + 1, i + 1), -1));
    b.names.push_back("LH[" + std::to_string(i) + "]");
  }
  return b;
}

/// Gram matrix of the trace form on a list of matrices.
inline Matrix gram_matrix(const std::vector<Matrix>& basis) {
  Matrix g = zero_matrix(basis.size(), basis.size());
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = 0; j < basis.size(); ++j) g[i][j] = trace_form(basis[i], basis[j]);
  return g;
}

// ---------------------------------------------------------------------------
// gl(n|n) in the E/F presentation
// ---------------------------------------------------------------------------

enum class GlKind : uint8_t { Ep = 0, Em = 1, Fp = 2, Fm = 3 };

inline bool odd(GlKind k) { return k == GlKind::Fp || k == GlKind::Fm; }

inline const char* gl_kind_name(GlKind k) {
  switch (k) {
    case GlKind::Ep: return "E+";
    case GlKind::Em: return "E-";
    case GlKind::Fp: return "F+";
    default: return "F-";
  }
}

/// Basis vector X^{ab} of kind X, with 1-indexed a, b.
struct GlGen {
  GlKind kind;
  int a, b;
  friend bool operator==(const GlGen&, const GlGen&) = default;
};

inline std::string to_string(const GlGen& g) {
  return std::string(gl_kind_name(g.kind)) + "[" + std::to_string(g.a) + "," +
         std::to_string(g.b) + "]";
}

/// Sparse element: basis index -> coefficient.
using LieElt = std::map<int, Rational>;

inline void lie_add(LieElt& x, int idx, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = x.emplace(idx, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) x.erase(it);
  }
}

constexpr int pack(GlKind x, GlKind y) { return int(x) * 4 + int(y); }

class GlSuper {
 public:
  explicit GlSuper(int n) : n_(n) {
    if (n < 1) throw error("GlSuper: rank must be positive");
  }

  int n() const { return n_; }
  int dim() const { return 4 * n_ * n_; }

  int index(const GlGen& g) const {
    return (int(g.kind) * n_ + (g.a - 1)) * n_ + (g.b - 1);
  }
  GlGen gen(int idx) const {
    int b = idx % n_ + 1;
    int rest = idx / n_;
    int a = rest % n_ + 1;
    return GlGen{GlKind(rest / n_), a, b};
  }
  bool odd_index(int idx) const { return odd(gen(idx).kind); }

  /// Super-bracket of two basis vectors.
  LieElt bracket(const GlGen& x, const GlGen& y) const {
    LieElt out;
    const int a = x.a, b = x.b, c = y.a, d = y.b;
    auto add = [&](GlKind k, int p, int q, int sign) {
      lie_add(out, index(GlGen{k, p, q}), sign);
    };
    switch (pack(x.kind, y.kind)) {
      case pack(GlKind::Ep, GlKind::Ep):
        if (b == c) add(GlKind::Ep, a, d, 1);
        if (a == d) add(GlKind::Ep, c, b, -1);
        break;
      case pack(GlKind::Em, GlKind::Em):
        if (b == c) add(GlKind::Em, a, d, 1);
        if (a == d) add(GlKind::Em, c, b, -1);
        break;
      case pack(GlKind::Ep, GlKind::Em):
      case pack(GlKind::Em, GlKind::Ep):
      case pack(GlKind::Fp, GlKind::Fp):
      case pack(GlKind::Fm, GlKind::Fm):
        break;
      case pack(GlKind::Ep, GlKind::Fp):
        if (b == c) add(GlKind::Fp, a, d, 1);
        break;
      case pack(GlKind::Fp, GlKind::Ep):
        if (d == a) add(GlKind::Fp, c, b, -1);
        break;
      case pack(GlKind::Em, GlKind::Fm):
        if (b == c) add(GlKind::Fm, a, d, 1);
        break;
      case pack(GlKind::Fm, GlKind::Em):
        if (d == a) add(GlKind::Fm, c, b, -1);
        break;
      case pack(GlKind::Ep, GlKind::Fm):
        if (a == d) add(GlKind::Fm, c, b, -1);
        break;
      case pack(GlKind::Fm, GlKind::Ep):
        if (c == b) add(GlKind::Fm, a, d, 1);
        break;
      case pack(GlKind::Em, GlKind::Fp):
        if (a == d) add(GlKind::Fp, c, b, -1);
        break;
      case pack(GlKind::Fp, GlKind::Em):
        if (c == b) add(GlKind::Fp, a, d, 1);
        break;
      case pack(GlKind::Fp, GlKind::Fm):
        if (b == c) add(GlKind::Ep, a, d, 1);
        if (a == d) add(GlKind::Em, c, b, 1);
        break;
      case pack(GlKind::Fm, GlKind::Fp):
        // both odd: the super-bracket is symmetric in its arguments
        if (d == a) add(GlKind::Ep, c, b, 1);
        if (c == b) add(GlKind::Em, a, d, 1);
        break;
    }
    return out;
  }

  LieElt bracket(const LieElt& x, const LieElt& y) const {
    LieElt out;
    for (const auto& [i, ci] : x)
      for (const auto& [j, cj] : y)
        for (const auto& [k, ck] : bracket(gen(i), gen(j)))
          lie_add(out, k, ci * cj * ck);
    return out;
  }

  /// C = sum_a (E+^{aa} + E-^{aa}).
  LieElt center() const {
    LieElt c;
    for (int a = 1; a <= n_; ++a) {
      lie_add(c, index(GlGen{GlKind::Ep, a, a}), 1);
      lie_add(c, index(GlGen{GlKind::Em, a, a}), 1);
    }
    return c;
  }

  bool is_central(const LieElt& x) const {
    for (int i = 0; i < dim(); ++i)
      if (!bracket(x, LieElt{{i, 1}}).empty()) return false;
    return true;
  }

 private:
  int n_;
};

}  // namespace freeva
