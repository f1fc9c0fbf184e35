// SPDX-License-Identifier: MIT
//
// Commutant verification and the generator OPE tables.
//
// A field v lies in the commutant of a set of currents when every nonnegative
// product theta(j)v vanishes; verify_membership collects the nonzero
// residuals of that test.  generator_ope_tables builds the complete table map
// over the strong generators {D, D', C[1..n-1]}, recomputing every reversed
// product directly and cross-checking it against the skew-symmetry rewrite of
// the forward table, and insists that the C[i] with i >= 2 are central.
// leading_ope evaluates the two top products of the determinant pair at any
// rank.  Pair-level jobs are pure and may run on FREEVA_THREADS workers.

#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "freeva/model.hpp"

namespace freeva {

/// Worker count for pair-level parallelism: FREEVA_THREADS, default 1.
inline unsigned thread_count() {
  if (const char* s = std::getenv("FREEVA_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(s, &end, 10);
    if (end != s && v >= 1) return unsigned(v);
  }
  return 1;
}

/// Runs fn(0), ..., fn(count-1) across thread_count() workers.  Each call
/// must be pure apart from writes into its own result slot; the first
/// exception thrown by any job is rethrown after all workers join.
template <class F>
inline void parallel_for(size_t count, F&& fn) {
  size_t workers = std::min<size_t>(thread_count(), count);
  if (workers <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::mutex emu;
  std::exception_ptr first;
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(emu);
          if (!first) first = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (first) std::rethrow_exception(first);
}

/// A field together with its display name.
struct NamedField {
  std::string name;
  FieldExpr expr;
};

/// Throws unless every generator occurring in e belongs to the model: its
/// family must be present and both indices must lie within the rank.
inline void check_in_model(const ModelContext& m, const FieldExpr& e,
                           const std::string& who) {
  for (const auto& [mono, c] : e.terms())
    for (Factor f : mono) {
      Family fam = factor_family(f);
      bool family_ok = odd(fam) ? m.has_fermionic() : m.has_bosonic();
      int r = factor_row(f), cc = factor_col(f);
      if (!family_ok || r < 1 || r > m.n() || cc < 1 || cc > m.n())
        throw error(who + ": expression does not lie in the model");
    }
}

/// Both traceless current copies: the 2(n^2 - 1) fields L[i,j]/LH[i] built
/// from the left gl_n currents and R[i,j]/RH[i] from the right ones.
inline std::vector<NamedField> sl_current_copies(const ModelContext& m) {
  const int n = m.n();
  std::vector<NamedField> out;
  auto tag = [](const char* base, int i, int j) {
    return std::string(base) + "[" + std::to_string(i) + "," +
           std::to_string(j) + "]";
  };
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) out.push_back({tag("L", i, j), theta_left(m, i, j)});
  for (int i = 1; i < n; ++i)
    out.push_back({"LH[" + std::to_string(i) + "]",
                   theta_left(m, 1, 1) - theta_left(m, i + 1, i + 1)});
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) out.push_back({tag("R", i, j), theta_right(m, i, j)});
  for (int i = 1; i < n; ++i)
    out.push_back({"RH[" + std::to_string(i) + "]",
                   theta_right(m, 1, 1) - theta_right(m, i + 1, i + 1)});
  return out;
}

/// Every realized gl(n|n) current, even and odd, in kind-major order (4n^2
/// fields; the central sum vanishes identically, so they span a copy of
/// pgl(n|n)).  build_pgl_realization must have run on the model.
inline std::vector<NamedField> pgl_current_family(const ModelContext& m) {
  std::vector<NamedField> out;
  for (GlKind k : {GlKind::Ep, GlKind::Em, GlKind::Fp, GlKind::Fm})
    for (int a = 1; a <= m.n(); ++a)
      for (int b = 1; b <= m.n(); ++b) {
        std::string name = gl_name(k, a, b);
        out.push_back({name, m.field(name)});
      }
  return out;
}

/// A basis of the currents of the derived subalgebra psl(n|n): all odd F+/F-,
/// the off-diagonal even E+/E-, and the diagonal differences within each even
/// block (4n^2 - 2 fields).  This is the family whose commutant the two
/// determinant fields and the C[i] belong to; the excluded direction
/// sum_a (E+[a,a] - E-[a,a]) has bosonic part -2 C[1] and acts on them by
/// their C[1]-charge.
inline std::vector<NamedField> psl_current_family(const ModelContext& m) {
  const int n = m.n();
  std::vector<NamedField> out;
  for (GlKind k : {GlKind::Fp, GlKind::Fm})
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b) {
        std::string name = gl_name(k, a, b);
        out.push_back({name, m.field(name)});
      }
  for (GlKind k : {GlKind::Ep, GlKind::Em}) {
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b)
        if (a != b) {
          std::string name = gl_name(k, a, b);
          out.push_back({name, m.field(name)});
        }
    for (int i = 1; i < n; ++i) {
      std::string hi = gl_name(k, i, i), lo = gl_name(k, i + 1, i + 1);
      out.push_back({hi + "-" + lo, m.field(hi) - m.field(lo)});
    }
  }
  return out;
}

/// Membership report for one field against a set of currents.  Only nonzero
/// residuals are stored, so pass == residuals.empty() restates the defining
/// condition "every residual is the zero expression"; checked counts every
/// (current, product) pair examined.
struct CommutantReport {
  struct Residual {
    std::string current;
    int product;  // the j with circle(current, field, j) != 0
    FieldExpr value;
  };
  std::string field;
  std::vector<Residual> residuals;
  size_t checked = 0;
  bool pass = true;
};

/// Evaluates circle(theta, v, j) for every current theta and every j from 0
/// to weight(theta) + weight(v) - 1 (deeper products vanish by the weight
/// bound).  Currents are processed in parallel.
inline CommutantReport verify_membership(const ModelContext& m,
                                         const NamedField& v,
                                         const std::vector<NamedField>& currents) {
  check_in_model(m, v.expr, "verify_membership");
  CommutantReport rep;
  rep.field = v.name;
  const int w2v = max_weight2(v.expr);
  std::vector<std::vector<CommutantReport::Residual>> slots(currents.size());
  std::vector<size_t> counts(currents.size(), 0);
  parallel_for(currents.size(), [&](size_t i) {
    const NamedField& th = currents[i];
    const int w2t = max_weight2(th.expr);
    for (int j = 0; w2t + w2v - 2 * j - 2 >= 0; ++j) {
      FieldExpr r = circle(th.expr, v.expr, j);
      ++counts[i];
      if (!r.is_zero()) slots[i].push_back({th.name, j, std::move(r)});
    }
  });
  for (size_t i = 0; i < currents.size(); ++i) {
    rep.checked += counts[i];
    for (auto& r : slots[i]) rep.residuals.push_back(std::move(r));
  }
  rep.pass = rep.residuals.empty();
  return rep;
}

using PairKey = std::pair<std::string, std::string>;
using GeneratorTables = std::map<PairKey, OPETable>;

namespace detail {
inline bool central_generator_name(const std::string& name) {
  if (name.size() < 4 || name.compare(0, 2, "C[") != 0) return false;
  return std::atoi(name.c_str() + 2) >= 2;
}
}  // namespace detail

/// The OPE tables of all unordered generator pairs.  For every pair the
/// reversed product is computed directly and compared with the skew-symmetry
/// rewrite of the forward table; a mismatch or a non-central C[i] (i >= 2)
/// is an engine error, not a report entry.
inline GeneratorTables generator_ope_tables(const ModelContext& m) {
  if (!m.has_field("D") || !m.has_field("D'") || !m.has_field("C[1]"))
    throw error("generator_ope_tables: generators not built");
  std::vector<std::string> names = {"D", "D'"};
  for (int i = 1; i < m.n(); ++i) names.push_back("C[" + std::to_string(i) + "]");

  std::vector<PairKey> keys;
  for (size_t i = 0; i < names.size(); ++i)
    for (size_t j = i; j < names.size(); ++j) keys.push_back({names[i], names[j]});

  std::vector<OPETable> fwd(keys.size());
  parallel_for(keys.size(), [&](size_t k) {
    const FieldExpr& a = m.field(keys[k].first);
    const FieldExpr& b = m.field(keys[k].second);
    fwd[k] = ope_singular(a, b);
    OPETable rev = ope_singular(b, a);
    const int pmax = (max_weight2(a) + max_weight2(b)) / 2;
    for (int p = 1; p <= pmax; ++p) {
      FieldExpr direct =
          rev.poles.count(p) ? rev.poles.at(p) : FieldExpr::zero();
      if (!(circle_via_skew(a, b, p - 1) - direct).is_zero())
        throw error("generator_ope_tables: skew-symmetry cross-check failed for (" +
                    keys[k].first + ", " + keys[k].second + ")");
    }
  });

  GeneratorTables out;
  for (size_t k = 0; k < keys.size(); ++k) {
    if ((detail::central_generator_name(keys[k].first) ||
         detail::central_generator_name(keys[k].second)) &&
        !fwd[k].poles.empty())
      throw error("generator_ope_tables: (" + keys[k].first + ", " +
                  keys[k].second + ") should be regular but is not");
    out.emplace(keys[k], std::move(fwd[k]));
  }
  return out;
}

/// Note attached to the C[1]-C[1] table: the computed singular part is the
/// scalar -n^2 sitting at pole order 2, as forced by the weight bookkeeping
/// for a pair of weight-one currents; listings that attach this scalar to the
/// first-order pole disagree with the computed order.
inline std::string c1_c1_annotation(int n) {
  return "C[1](z) C[1](w) ~ -" + std::to_string(n * n) +
         " (z-w)^{-2}: the computed pole order is 2; listings placing this "
         "scalar at (z-w)^{-1} disagree with the weight bookkeeping.";
}

/// True iff expr fully expands to the zero field.  The expression must lie
/// in the model (families present, indices within rank).
inline bool relation_check(const ModelContext& m, const FieldExpr& e) {
  check_in_model(m, e, "relation_check");
  return e.is_zero();
}

/// The two leading products of the determinant pair at any rank:
/// (D(n-1)D', D(n-2)D') = (n! * 1, (n-1)! * C_1).
inline std::pair<FieldExpr, FieldExpr> leading_ope(const ModelContext& m) {
  FieldExpr d = determinant_field(m, Side::beta);
  FieldExpr dp = determinant_field(m, Side::gamma);
  const int n = m.n();
  return {circle(d, dp, n - 1), circle(d, dp, n - 2)};
}

}  // namespace freeva
