// SPDX-License-Identifier: MIT
//
// The Fock-space oracle: an independent mode-by-mode product implementation
// that the symbolic engine must agree with on truncated state spaces.

#include <catch2/catch_amalgamated.hpp>

#include "freeva/fock.hpp"
#include "freeva/model.hpp"

using namespace freeva;

namespace {
FieldExpr bge(Family f, int i, int j, unsigned deriv = 0) {
  return FieldExpr::monomial(Mono{make_factor(f, i, j, deriv)});
}
}  // namespace

TEST_CASE("state expansion of simple fields") {
  FieldExpr beta = bge(Family::Beta, 1, 1);
  FockState s = state_of(beta);
  CHECK(!s.terms.empty());
  // The zero field has the empty state.
  CHECK(state_of(FieldExpr::zero()).terms.empty());
  // Truncation is monotone: a weight-3 composite vanishes below its weight.
  FieldExpr heavy = wick(derivative(beta, 2), bge(Family::Gamma, 1, 1));
  CHECK(state_of(heavy, Rational(1)).terms.empty());
}

TEST_CASE("hand-picked products agree with the oracle") {
  FieldExpr beta = bge(Family::Beta, 1, 1), gamma = bge(Family::Gamma, 1, 1);
  CHECK(agree(beta, gamma, 0));
  CHECK(agree(beta, gamma, -1));
  CHECK(agree(gamma, beta, -1));
  CHECK(agree(derivative(beta), gamma, -1));
  CHECK(agree(derivative(beta), gamma, 1));

  FieldExpr b = bge(Family::B, 1, 2), c = bge(Family::C, 1, 2);
  CHECK(agree(b, c, 0));
  CHECK(agree(b, c, -1));
  CHECK(agree(c, b, -1));
}

TEST_CASE("random composite pairs agree, bosonic model") {
  ModelContext m = build_model(2, ModelKind::bg);
  Rng rng(424242);
  const Rational cutoff(5);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    FieldExpr a = random_expr(rng, m.roster());
    FieldExpr b = random_expr(rng, m.roster());
    for (int n = -3; n <= 3; ++n) {
      if (Rational(max_weight2(a) + max_weight2(b) - 2 * n - 2) / 2 > cutoff)
        continue;
      ++checked;
      CHECK(agree(a, b, n, cutoff));
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("random composite pairs agree, combined model") {
  ModelContext m = build_model(2, ModelKind::bcbg);
  Rng rng(7);
  const Rational cutoff(4);
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    FieldExpr a = random_expr(rng, m.roster(), 2, 2, 2);
    FieldExpr b = random_expr(rng, m.roster(), 2, 2, 2);
    for (int n = -2; n <= 2; ++n) {
      if (Rational(max_weight2(a) + max_weight2(b) - 2 * n - 2) / 2 > cutoff)
        continue;
      ++checked;
      CHECK(agree(a, b, n, cutoff));
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("rng streams are deterministic") {
  Rng a(1), b(1);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
  Rng c(2);
  CHECK(c.next() != Rng(1).next());
}
