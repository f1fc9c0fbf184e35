// SPDX-License-Identifier: MIT
//
// Concrete free-field systems and named composite fields.
//
// A ModelContext fixes the rank n and which families exist (the even
// beta/gamma system over the n x n matrix space, the odd b/c system, or the
// combined system), carries the write-once registry of named fields, and
// feeds the parser.  On top of it this header builds conformal vectors,
// gl_n (+) gl_n currents acting by left/right matrix multiplication, the
// gl(n|n) free-field realization, determinant and Casimir fields, and
// Sugawara vectors with honest critical-level detection.

#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "freeva/expr.hpp"
#include "freeva/lie.hpp"
#include "freeva/linalg.hpp"
#include "freeva/ope.hpp"
#include "freeva/parse.hpp"
#include "freeva/rational.hpp"
#include "freeva/sha256.hpp"
#include "freeva/symbol.hpp"

namespace freeva {

enum class ModelKind { bg, bc, bcbg };
enum class Side { beta, gamma };

class ModelContext {
 public:
  ModelContext(int n, ModelKind kind) : n_(n), kind_(kind) {
    if (n < 2) throw error("build_model: rank must be at least 2");
    if (kind != ModelKind::bc)
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
          roster_.push_back({Family::Beta, i, j});
          roster_.push_back({Family::Gamma, i, j});
        }
    if (kind != ModelKind::bg)
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
          roster_.push_back({Family::B, i, j});
          roster_.push_back({Family::C, i, j});
        }
  }

  int n() const { return n_; }
  ModelKind kind() const { return kind_; }
  bool has_bosonic() const { return kind_ != ModelKind::bc; }
  bool has_fermionic() const { return kind_ != ModelKind::bg; }
  const std::vector<GeneratorSymbol>& roster() const { return roster_; }

  void register_field(const std::string& name, FieldExpr e) {
    if (registry_.count(name))
      throw error("register_field: duplicate name '" + name + "'");
    registry_.emplace(name, std::move(e));
  }
  bool has_field(const std::string& name) const { return registry_.count(name) != 0; }
  const FieldExpr& field(const std::string& name) const {
    auto it = registry_.find(name);
    if (it == registry_.end()) throw error("field: unknown name '" + name + "'");
    return it->second;
  }
  std::vector<std::string> field_names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : registry_) out.push_back(k);
    return out;
  }

  /// Parser environment backed by this model's registry.  Valid while the
  /// model is alive.
  ParseEnv parse_env() const {
    ParseEnv env;
    env.rank = n_;
    env.allow_bosonic = has_bosonic();
    env.allow_fermionic = has_fermionic();
    env.resolve = [this](const std::string& s) { return field(s); };
    return env;
  }

 private:
  int n_;
  ModelKind kind_;
  std::vector<GeneratorSymbol> roster_;
  std::map<std::string, FieldExpr> registry_;
};

inline FieldExpr parse(const std::string& text, const ModelContext& m) {
  return parse_expr(text, m.parse_env());
}

inline FieldExpr gen(Family f, int i, int j) {
  return FieldExpr::generator({f, i, j});
}

/// Model with conformal vectors registered: L_S = (1/2) sum :beta d(gamma): -
/// (1/2) sum :d(beta) gamma: on the even side, L_E = (1/2) sum :d(b) c: -
/// (1/2) sum :b d(c): on the odd side, and L their sum.  All generators are
/// primary of weight 1/2.
inline ModelContext build_model(int n, ModelKind kind) {
  ModelContext m(n, kind);
  FieldExpr total = FieldExpr::zero();
  Rational half(1, 2);
  if (m.has_bosonic()) {
    FieldExpr ls = FieldExpr::zero();
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        ls = ls + half * wick(gen(Family::Beta, i, j), derivative(gen(Family::Gamma, i, j))) -
            half * wick(derivative(gen(Family::Beta, i, j)), gen(Family::Gamma, i, j));
    m.register_field("L_S", ls);
    total = total + ls;
  }
  if (m.has_fermionic()) {
    FieldExpr le = FieldExpr::zero();
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        le = le + half * wick(derivative(gen(Family::B, i, j)), gen(Family::C, i, j)) -
            half * wick(gen(Family::B, i, j), derivative(gen(Family::C, i, j)));
    m.register_field("L_E", le);
    total = total + le;
  }
  m.register_field("L", total);
  return m;
}

// ---------------------------------------------------------------------------
// gl_n (+) gl_n currents on the matrix space.
//
// The even fields are indexed by the n x n matrix space V: beta[i,j] pairs
// with gamma[i,j].  For xi acting on V, the current is
// theta^xi = - sum_i :gamma^{x'_i} beta^{rho(xi) x_i}: over a basis x_i of V,
// with rho(E_pq, left) x = E_pq x and rho(E_pq, right) x = -x E_pq.

inline FieldExpr theta_left(const ModelContext& m, int p, int q) {
  if (!m.has_bosonic())
    throw error("theta_left: model has no beta/gamma system");
  FieldExpr acc = FieldExpr::zero();
  for (int b = 1; b <= m.n(); ++b)
    acc = acc - wick(gen(Family::Beta, p, b), gen(Family::Gamma, q, b));
  return acc;
}

inline FieldExpr theta_right(const ModelContext& m, int p, int q) {
  if (!m.has_bosonic())
    throw error("theta_right: model has no beta/gamma system");
  FieldExpr acc = FieldExpr::zero();
  for (int c = 1; c <= m.n(); ++c)
    acc = acc + wick(gen(Family::Gamma, c, p), gen(Family::Beta, c, q));
  return acc;
}

enum class AlgebraTag { GlPair, Pgl };

/// Element of either gl_n (+) gl_n (tag GlPair, index side*n^2 + (p-1)n +
/// (q-1) with side 0 = left, 1 = right) or gl(n|n) mod center (tag Pgl,
/// GlSuper indexing).
struct LieElement {
  AlgebraTag tag;
  int n;
  LieElt coeffs;
};

inline LieElement left_gl(int n, const Matrix& M) {
  LieElement x{AlgebraTag::GlPair, n, {}};
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (M[p][q] != 0) x.coeffs[p * n + q] = M[p][q];
  return x;
}

inline LieElement right_gl(int n, const Matrix& M) {
  LieElement x{AlgebraTag::GlPair, n, {}};
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (M[p][q] != 0) x.coeffs[n * n + p * n + q] = M[p][q];
  return x;
}

inline LieElement pgl_elt(int n, LieElt coeffs) {
  return {AlgebraTag::Pgl, n, std::move(coeffs)};
}

inline FieldExpr current(const ModelContext& m, const LieElement& xi) {
  if (xi.tag != AlgebraTag::GlPair)
    throw error("current: wrong algebra tag (expected a gl_n (+) gl_n element)");
  if (xi.n != m.n()) throw error("current: rank mismatch");
  const int n = m.n();
  FieldExpr acc = FieldExpr::zero();
  for (const auto& [idx, c] : xi.coeffs) {
    int side = idx / (n * n), rest = idx % (n * n);
    int p = rest / n + 1, q = rest % n + 1;
    acc = acc + c * (side == 0 ? theta_left(m, p, q) : theta_right(m, p, q));
  }
  return acc;
}

/// Action of a gl_n (+) gl_n element on the n^2-dimensional matrix space,
/// rows/columns indexed by E_ab at (a-1)n + (b-1).
inline Matrix rep_on_matrix_space(const LieElement& xi) {
  if (xi.tag != AlgebraTag::GlPair)
    throw error("rep_on_matrix_space: wrong algebra tag");
  const int n = xi.n;
  Matrix M = zero_matrix(n * n);
  for (const auto& [idx, c] : xi.coeffs) {
    int side = idx / (n * n), rest = idx % (n * n);
    int p = rest / n + 1, q = rest % n + 1;
    if (side == 0) {
      // E_pq . E_ab = delta_{qa} E_pb
      for (int b = 1; b <= n; ++b)
        M[(p - 1) * n + (b - 1)][(q - 1) * n + (b - 1)] += c;
    } else {
      // -E_ab . E_pq = -delta_{bp} E_aq
      for (int a = 1; a <= n; ++a)
        M[(a - 1) * n + (q - 1)][(a - 1) * n + (p - 1)] -= c;
    }
  }
  return M;
}

/// Invariant form B(xi, eta) = -tr_V(rho(xi) rho(eta)); the current algebra
/// realizes level-1 of this form, i.e. pole 2 of theta^xi theta^eta is
/// exactly B(xi, eta).
inline Rational bilinear_B(const LieElement& xi, const LieElement& eta) {
  return -trace(matmul(rep_on_matrix_space(xi), rep_on_matrix_space(eta)));
}

// ---------------------------------------------------------------------------
// gl(n|n) realization on the combined bc-beta-gamma system.

inline std::string gl_name(GlKind k, int a, int b) {
  static const char* base[] = {"E+", "E-", "F+", "F-"};
  return std::string(base[int(k)]) + "[" + std::to_string(a) + "," +
         std::to_string(b) + "]";
}

/// Registers B+-[a,b], E+-[a,b], F+-[a,b]:
///   B+[a,b] = -sum_c :beta[a,c] gamma[b,c]:     (left gl_n current)
///   B-[a,b] =  sum_c :gamma[c,a] beta[c,b]:     (right gl_n current)
///   E+[a,b] = B+[a,b] - sum_c :b[b,c] c[a,c]:
///   E-[a,b] = B-[a,b] + sum_c :b[c,a] c[c,b]:
///   F-[a,b] = -b[b,a]
///   F+[a,b] = -sum_c :c[c,b] B+[a,c]: - sum_c :c[a,c] B-[c,b]:
///             - sum_{c,d} :b[c,d] c[c,b] c[a,d]:
/// and checks that sum_a (E+[a,a] + E-[a,a]) vanishes identically.
inline void build_pgl_realization(ModelContext& m) {
  if (m.kind() != ModelKind::bcbg)
    throw error("build_pgl_realization: needs the combined bc-beta-gamma model");
  const int n = m.n();
  std::vector<std::vector<FieldExpr>> Bp(n + 1, std::vector<FieldExpr>(n + 1)),
      Bm(n + 1, std::vector<FieldExpr>(n + 1));
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      Bp[a][b] = theta_left(m, a, b);
      Bm[a][b] = theta_right(m, a, b);
      m.register_field("B+[" + std::to_string(a) + "," + std::to_string(b) + "]", Bp[a][b]);
      m.register_field("B-[" + std::to_string(a) + "," + std::to_string(b) + "]", Bm[a][b]);
    }
  FieldExpr center_sum = FieldExpr::zero();
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      FieldExpr ep = Bp[a][b], em = Bm[a][b];
      for (int c = 1; c <= n; ++c) {
        ep = ep - wick(gen(Family::B, b, c), gen(Family::C, a, c));
        em = em + wick(gen(Family::B, c, a), gen(Family::C, c, b));
      }
      FieldExpr fm = -gen(Family::B, b, a);
      FieldExpr fp = FieldExpr::zero();
      for (int c = 1; c <= n; ++c)
        fp = fp - wick(gen(Family::C, c, b), Bp[a][c]) -
            wick(gen(Family::C, a, c), Bm[c][b]);
      for (int c = 1; c <= n; ++c)
        for (int d = 1; d <= n; ++d)
          fp = fp - nested_wick({gen(Family::B, c, d), gen(Family::C, c, b),
                                 gen(Family::C, a, d)});
      m.register_field(gl_name(GlKind::Ep, a, b), ep);
      m.register_field(gl_name(GlKind::Em, a, b), em);
      m.register_field(gl_name(GlKind::Fp, a, b), fp);
      m.register_field(gl_name(GlKind::Fm, a, b), fm);
      if (a == b) center_sum = center_sum + ep + em;
    }
  if (!center_sum.is_zero())
    throw error("build_pgl_realization: the central sum did not cancel");
}

inline FieldExpr realized_current(const ModelContext& m, GlGen g) {
  return m.field(gl_name(g.kind, g.a, g.b));
}

inline FieldExpr realized_current(const ModelContext& m, const LieElement& xi) {
  if (xi.tag != AlgebraTag::Pgl)
    throw error("realized_current: wrong algebra tag (expected gl(n|n))");
  GlSuper g(xi.n);
  FieldExpr acc = FieldExpr::zero();
  for (const auto& [idx, c] : xi.coeffs)
    acc = acc + c * realized_current(m, g.gen(idx));
  return acc;
}

// ---------------------------------------------------------------------------
// Commutant generators: determinants and Casimir fields.

/// D (beta side) = sum_{sigma} sgn(sigma) :beta[1,sigma(1)] ... beta[n,sigma(n)]:,
/// and D' the same in gamma.  The factors mutually commute, so the nesting
/// order is immaterial.
inline FieldExpr determinant_field(const ModelContext& m, Side side) {
  if (!m.has_bosonic())
    throw error("determinant_field: model has no beta/gamma system");
  const int n = m.n();
  Family fam = side == Side::beta ? Family::Beta : Family::Gamma;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i + 1;
  FieldExpr acc = FieldExpr::zero();
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inv;
    std::vector<FieldExpr> fs;
    for (int i = 0; i < n; ++i) fs.push_back(gen(fam, i + 1, perm[i]));
    FieldExpr term = nested_wick(fs);
    acc = (inv % 2 == 0) ? acc + term : acc - term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

/// Registers the left-copy sl_n currents L[i,j] = theta^{E_ij} (i != j) and
/// LH[i] = theta^{E_11 - E_{i+1,i+1}} used by the stored Casimir expressions.
inline void ensure_sl_currents(ModelContext& m) {
  const int n = m.n();
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      std::string name = "L[" + std::to_string(i) + "," + std::to_string(j) + "]";
      if (!m.has_field(name)) m.register_field(name, theta_left(m, i, j));
    }
  for (int i = 1; i < n; ++i) {
    std::string name = "LH[" + std::to_string(i) + "]";
    if (!m.has_field(name))
      m.register_field(name, theta_left(m, 1, 1) - theta_left(m, i + 1, i + 1));
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// checksums.txt lines are "<sha256-hex>  <relative path>".
inline std::map<std::string, std::string> load_checksums(const std::string& root) {
  std::map<std::string, std::string> out;
  std::istringstream in(read_file(root + "/checksums.txt"));
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string hash, rel;
    if (ls >> hash >> rel) out[rel] = hash;
  }
  return out;
}

/// Loads, checksum-verifies, and parses one stored expression.
inline FieldExpr load_fixture_expr(const ModelContext& m, const std::string& root,
                                   const std::string& rel) {
  std::string body = read_file(root + "/" + rel);
  auto sums = load_checksums(root);
  auto it = sums.find(rel);
  if (it == sums.end()) throw error("no checksum recorded for '" + rel + "'");
  if (sha256_hex(body) != it->second)
    throw error("checksum mismatch for '" + rel + "'");
  return parse_expr(body, m.parse_env());
}

/// C_1 = sum_{ij} :beta[i,j] gamma[i,j]:.  For i >= 2 the field is the image
/// of a central element of the critical-level sl_n vertex algebra under the
/// left current embedding: for n = 2 the dual-basis quadratic with the
/// normalization pinned by the quadratic D-D' relation, for n = 3, 4 the
/// stored expansions over L[i,j], LH[i].  Supported table: i = 1 for all n;
/// i in {2} for n = 2; {2, 3} for n = 3; {2, 3, 4} for n = 4.
inline FieldExpr casimir_field(ModelContext& m, int i,
                               const std::string& fixture_root = "fixtures") {
  const int n = m.n();
  if (!m.has_bosonic())
    throw error("casimir_field: model has no beta/gamma system");
  if (i == 1) {
    FieldExpr acc = FieldExpr::zero();
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b)
        acc = acc + wick(gen(Family::Beta, a, b), gen(Family::Gamma, a, b));
    return acc;
  }
  if (n == 2 && i == 2) {
    ensure_sl_currents(m);
    const FieldExpr &e12 = m.field("L[1,2]"), &e21 = m.field("L[2,1]"),
                    &h = m.field("LH[1]");
    // Dual-basis quadratic for the trace form: B(E12,E21)=1, B(H,H)=2.
    FieldExpr q = wick(e12, e21) + wick(e21, e12) + Rational(1, 2) * wick(h, h);
    // Normalization alpha from -2:DD': + (1/2):C1C1: + d(C1) = alpha q.
    FieldExpr d = determinant_field(m, Side::beta);
    FieldExpr dp = determinant_field(m, Side::gamma);
    FieldExpr c1 = casimir_field(m, 1, fixture_root);
    FieldExpr r = Rational(-2) * wick(d, dp) + Rational(1, 2) * wick(c1, c1) +
                  derivative(c1);
    if (q.is_zero() || r.is_zero())
      throw error("casimir_field: degenerate quadratic");
    const auto& [m0, c0] = *q.terms().begin();
    auto it = r.terms().find(m0);
    if (it == r.terms().end())
      throw error("casimir_field: quadratic normalization failed");
    Rational alpha = it->second / c0;
    if (!(r == q * alpha))
      throw error("casimir_field: quadratic not proportional to the dual-basis Casimir");
    return q * alpha;
  }
  if ((n == 3 && (i == 2 || i == 3)) || (n == 4 && (i >= 2 && i <= 4))) {
    ensure_sl_currents(m);
    std::string rel = "n" + std::to_string(n) + "/C" + std::to_string(i) + ".expr";
    FieldExpr e = load_fixture_expr(m, fixture_root, rel);
    if (weight(e) != Rational(i))
      throw error("casimir_field: stored C_" + std::to_string(i) +
                  " is not weight-homogeneous of weight " + std::to_string(i));
    return e;
  }
  throw error("casimir_field: C_" + std::to_string(i) +
              " is not available for rank " + std::to_string(n));
}

/// Registers D, D', the left sl_n currents, and every available C_i
/// (generators C_1..C_{n-1} plus the central C_n when a stored expansion
/// exists, i.e. n <= 4).
inline void build_commutant_generators(ModelContext& m,
                                       const std::string& fixture_root = "fixtures") {
  m.register_field("D", determinant_field(m, Side::beta));
  m.register_field("D'", determinant_field(m, Side::gamma));
  ensure_sl_currents(m);
  const int n = m.n();
  int top = n <= 4 ? n : 1;
  for (int i = 1; i <= top; ++i)
    m.register_field("C[" + std::to_string(i) + "]",
                     casimir_field(m, i, fixture_root));
}

// ---------------------------------------------------------------------------
// Sugawara vectors.

/// Eigenvalue lambda of the adjoint Casimir sum_i ad(x_i) ad(x^i) on a simple
/// (or anyway ad-scalar) matrix Lie algebra, with duals taken against the
/// given invariant form; the dual Coxeter number for that form is lambda / 2.
inline Rational casimir_ad_eigenvalue(const std::vector<Matrix>& basis,
                                      const Matrix& gram) {
  const size_t dim = basis.size();
  Matrix inv = invert(gram);
  std::optional<Rational> lambda;
  for (const Matrix& y : basis) {
    Matrix total = zero_matrix(y.size());
    for (size_t i = 0; i < dim; ++i) {
      Matrix dual_i = zero_matrix(y.size());
      for (size_t j = 0; j < dim; ++j)
        if (inv[j][i] != 0) dual_i = mat_add(dual_i, basis[j], inv[j][i]);
      total = mat_add(total, commutator(basis[i], commutator(dual_i, y)));
    }
    // total must equal lambda * y entrywise.
    std::optional<Rational> lam_here;
    bool zero_y = true;
    for (size_t r = 0; r < y.size(); ++r)
      for (size_t c = 0; c < y.size(); ++c)
        if (y[r][c] != 0) {
          zero_y = false;
          Rational ratio = total[r][c] / y[r][c];
          if (lam_here && *lam_here != ratio)
            throw error("casimir_ad_eigenvalue: basis vector is not an eigenvector");
          lam_here = ratio;
        }
    if (zero_y) throw error("casimir_ad_eigenvalue: zero basis vector");
    for (size_t r = 0; r < y.size(); ++r)
      for (size_t c = 0; c < y.size(); ++c)
        if (total[r][c] != *lam_here * y[r][c])
          throw error("casimir_ad_eigenvalue: basis vector is not an eigenvector");
    if (lambda && *lambda != *lam_here)
      throw error("casimir_ad_eigenvalue: adjoint Casimir is not scalar");
    lambda = lam_here;
  }
  if (!lambda) throw error("casimir_ad_eigenvalue: empty basis");
  return *lambda;
}

/// Level k measured from the currents themselves: pole 2 of J_i J_j must be
/// the constant k * gram_{ij} for every pair.
inline Rational measured_level(const std::vector<FieldExpr>& currents,
                               const Matrix& gram) {
  std::optional<Rational> k;
  for (size_t i = 0; i < currents.size(); ++i)
    for (size_t j = 0; j < currents.size(); ++j) {
      FieldExpr p2 = circle(currents[i], currents[j], 1);
      Rational val(0);
      if (!p2.is_zero()) {
        if (p2.terms().size() != 1 || !p2.terms().begin()->first.empty())
          throw error("measured_level: pole 2 is not a constant");
        val = p2.terms().begin()->second;
      }
      if (gram[i][j] == 0) {
        if (val != 0) throw error("measured_level: pole 2 off the form's support");
        continue;
      }
      Rational here = val / gram[i][j];
      if (k && *k != here) throw error("measured_level: inconsistent level");
      k = here;
    }
  if (!k) throw error("measured_level: form vanishes on the basis");
  return *k;
}

struct SugawaraResult {
  FieldExpr vector;
  Rational dual_coxeter;
  Rational level;
  Rational central_charge;
};

/// L = (1 / (2(k + h))) sum_i :J_i J^i: with J^i dual to J_i under the form;
/// h is the dual Coxeter number of the form.  Throws at the critical level
/// k = -h, where no such vector exists.
inline SugawaraResult sugawara(const std::vector<FieldExpr>& currents,
                               const std::vector<Matrix>& basis,
                               const Matrix& gram, const Rational& k) {
  if (currents.size() != basis.size())
    throw error("sugawara: basis/current size mismatch");
  Rational h = casimir_ad_eigenvalue(basis, gram) / 2;
  if (k + h == 0) throw error("Sugawara undefined at critical level");
  Matrix inv = invert(gram);
  FieldExpr acc = FieldExpr::zero();
  for (size_t i = 0; i < currents.size(); ++i) {
    FieldExpr dual_i = FieldExpr::zero();
    for (size_t j = 0; j < currents.size(); ++j)
      if (inv[j][i] != 0) dual_i = dual_i + inv[j][i] * currents[j];
    acc = acc + wick(currents[i], dual_i);
  }
  Rational norm = Rational(1) / (2 * (k + h));
  Rational c = k * Rational(Int(basis.size())) / (k + h);
  return {acc * norm, h, k, c};
}

/// Dual Coxeter number of gl(n|n) for the supertrace form, found honestly:
/// solve sum_i [x_i, [x^i, y}} = lambda y + mu C over the whole basis, C the
/// center.  The duals satisfy str(x^i x_j) = delta^i_j — for an odd pair the
/// order matters, and this is the order for which sum_i x_i x^i is central:
/// E+[a,b] <-> E+[b,a], E-[a,b] <-> -E-[b,a], F+[a,b] <-> -F-[b,a],
/// F-[a,b] <-> F+[b,a].
inline Rational super_dual_coxeter(const GlSuper& g) {
  const int n = g.n();
  const int dim = 4 * n * n;
  auto dual_of = [&](int idx) -> std::pair<int, Rational> {
    GlGen x = g.gen(idx);
    switch (x.kind) {
      case GlKind::Ep: return {g.index({GlKind::Ep, x.b, x.a}), Rational(1)};
      case GlKind::Em: return {g.index({GlKind::Em, x.b, x.a}), Rational(-1)};
      case GlKind::Fp: return {g.index({GlKind::Fm, x.b, x.a}), Rational(-1)};
      default: return {g.index({GlKind::Fp, x.b, x.a}), Rational(1)};
    }
  };
  LieElt center = g.center();
  std::optional<Rational> lambda;
  for (int yi = 0; yi < dim; ++yi) {
    LieElt y{{yi, Rational(1)}};
    LieElt total;
    for (int i = 0; i < dim; ++i) {
      auto [di, ds] = dual_of(i);
      LieElt xi{{i, Rational(1)}}, xdual{{di, ds}};
      for (const auto& [idx, v] : g.bracket(xi, g.bracket(xdual, y)))
        lie_add(total, idx, v);
    }
    // Solve total = lambda * y + mu * center exactly.
    Matrix A(dim, Vec(2, Rational(0)));
    Vec rhs(dim, Rational(0));
    for (int r = 0; r < dim; ++r) {
      auto ity = y.find(r);
      auto itc = center.find(r);
      if (ity != y.end()) A[r][0] = ity->second;
      if (itc != center.end()) A[r][1] = itc->second;
    }
    for (const auto& [r, v] : total) rhs[r] = v;
    auto sol = solve_unique(A, rhs);
    if (!sol) throw error("super_dual_coxeter: Casimir not scalar mod center");
    if (lambda && *lambda != (*sol)[0])
      throw error("super_dual_coxeter: inconsistent eigenvalue");
    lambda = (*sol)[0];
  }
  return *lambda / 2;
}

/// Sugawara attempt for the realized gl(n|n) currents at level k; always
/// rejected at k = 0 because the supertrace dual Coxeter number vanishes.
inline SugawaraResult sugawara_pgl(const ModelContext& m, const Rational& k) {
  GlSuper g(m.n());
  Rational h = super_dual_coxeter(g);
  if (k + h == 0) throw error("Sugawara undefined at critical level");
  const int dim = 4 * m.n() * m.n();
  FieldExpr acc = FieldExpr::zero();
  for (int i = 0; i < dim; ++i) {
    GlGen x = g.gen(i);
    GlGen xd;
    Rational s(1);
    switch (x.kind) {
      case GlKind::Ep: xd = {GlKind::Ep, x.b, x.a}; break;
      case GlKind::Em: xd = {GlKind::Em, x.b, x.a}; s = -1; break;
      case GlKind::Fp: xd = {GlKind::Fm, x.b, x.a}; s = -1; break;
      default: xd = {GlKind::Fp, x.b, x.a}; break;
    }
    acc = acc + s * wick(realized_current(m, x), realized_current(m, xd));
  }
  Rational norm = Rational(1) / (2 * (k + h));
  return {acc * norm, h, k, Rational(0)};
}

/// Rescaled one-pair toy: sl_2 currents E = (1/2):beta beta:,
/// H = -:beta gamma:, F = -(1/2):gamma gamma: built on the beta[1,1] pair,
/// with the invariant form B'(x, y) = -(1/2) tr(xy).  The measured level is
/// 1 and the dual Coxeter number for B' is -4, so the Sugawara vector exists.
struct ToyModel {
  ModelContext model;
  std::vector<FieldExpr> currents;
  std::vector<Matrix> basis;
  Matrix gram;
};

inline ToyModel build_metaplectic_toy() {
  ToyModel t{build_model(2, ModelKind::bg), {}, {}, {}};
  FieldExpr beta = gen(Family::Beta, 1, 1), gamma = gen(Family::Gamma, 1, 1);
  t.currents = {Rational(1, 2) * wick(beta, beta), -wick(beta, gamma),
                Rational(-1, 2) * wick(gamma, gamma)};
  t.basis = {matrix_unit(2, 1, 2),
             mat_add(matrix_unit(2, 1, 1), matrix_unit(2, 2, 2), Rational(-1)),
             matrix_unit(2, 2, 1)};
  t.gram = zero_matrix(3);
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j)
      t.gram[i][j] = Rational(-1, 2) * trace_form(t.basis[i], t.basis[j]);
  return t;
}

}  // namespace freeva
