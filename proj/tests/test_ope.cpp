// SPDX-License-Identifier: MIT
//
// The circle-product kernel: contractions, Wick products, derivatives, the
// weight bound, and skew-symmetry as an independent cross-check.

#include <catch2/catch_amalgamated.hpp>

#include "freeva/fock.hpp"
#include "freeva/model.hpp"
#include "freeva/ope.hpp"

using namespace freeva;

namespace {
FieldExpr bge(Family f, int i, int j, unsigned deriv = 0) {
  return FieldExpr::monomial(Mono{make_factor(f, i, j, deriv)});
}
}  // namespace

TEST_CASE("bare contractions") {
  FieldExpr beta = bge(Family::Beta, 1, 1), gamma = bge(Family::Gamma, 1, 1);
  CHECK(circle(beta, gamma, 0) == FieldExpr::unit());
  CHECK(circle(gamma, beta, 0) == -FieldExpr::unit());
  CHECK(circle(beta, bge(Family::Gamma, 1, 2), 0).is_zero());
  CHECK(circle(beta, beta, 0).is_zero());

  // Symmetric fermionic pairing.
  FieldExpr b = bge(Family::B, 2, 1), c = bge(Family::C, 2, 1);
  CHECK(circle(b, c, 0) == FieldExpr::unit());
  CHECK(circle(c, b, 0) == FieldExpr::unit());
}

TEST_CASE("weight bound kills deep products") {
  // u(n)v = 0 whenever wt u + wt v - n - 1 < 0.
  FieldExpr beta = bge(Family::Beta, 1, 1), gamma = bge(Family::Gamma, 1, 1);
  CHECK(circle(beta, gamma, 1).is_zero());
  CHECK(circle(derivative(beta), gamma, 2).is_zero());
  FieldExpr comp = wick(beta, gamma);
  CHECK(circle(comp, comp, 2).is_zero());
  CHECK(!circle(comp, comp, 1).is_zero());
}

TEST_CASE("translation axiom") {
  // (da)(n)b = -n a(n-1)b, checked on bare and composite samples.
  FieldExpr beta = bge(Family::Beta, 1, 2), gamma = bge(Family::Gamma, 1, 2);
  CHECK(circle(derivative(beta), gamma, 1) == -circle(beta, gamma, 0));
  FieldExpr comp = wick(beta, bge(Family::Gamma, 2, 2));
  for (int n = 0; n <= 2; ++n) {
    FieldExpr lhs = circle(derivative(comp), comp, n);
    FieldExpr rhs = Rational(-n) * circle(comp, comp, n - 1);
    CHECK((lhs - rhs).is_zero());
  }
  // And the derivative is a derivation of the Wick product.
  FieldExpr prod = wick(beta, gamma);
  FieldExpr leibniz = wick(derivative(beta), gamma) + wick(beta, derivative(gamma));
  CHECK(derivative(prod) == leibniz);
}

TEST_CASE("singular table of a free pair") {
  OPETable t = ope_singular(bge(Family::Beta, 1, 1), bge(Family::Gamma, 1, 1));
  REQUIRE(t.poles.size() == 1);
  CHECK(t.poles.at(1) == FieldExpr::unit());
  CHECK(ope_singular(bge(Family::Beta, 1, 1), bge(Family::Beta, 2, 2))
            .poles.empty());
}

TEST_CASE("commutes detects regular pairs") {
  FieldExpr beta = bge(Family::Beta, 1, 1);
  CHECK(commutes(beta, bge(Family::Beta, 2, 1)));
  CHECK(!commutes(beta, bge(Family::Gamma, 1, 1)));
}

TEST_CASE("skew-symmetry cross-check on random pairs") {
  ModelContext m = build_model(2, ModelKind::bcbg);
  Rng rng(20260825);
  for (int trial = 0; trial < 25; ++trial) {
    FieldExpr a = random_expr(rng, m.roster());
    FieldExpr b = random_expr(rng, m.roster());
    for (int n = 0; n <= 3; ++n) {
      FieldExpr direct = circle(b, a, n);
      FieldExpr via = circle_via_skew(a, b, n);
      CHECK((direct - via).is_zero());
    }
  }
}

TEST_CASE("right-nested normal order matches manual nesting") {
  FieldExpr a = bge(Family::Beta, 1, 1), b = bge(Family::Gamma, 1, 1),
            c = bge(Family::Beta, 2, 2);
  CHECK(nested_wick({a, b, c}) == wick(a, wick(b, c)));
  CHECK(nested_wick({a}) == a);
}

TEST_CASE("circle results are reproducible across repeated calls") {
  // The memo layer must be a pure cache: identical inputs, identical
  // outputs, no dependence on call history.
  ModelContext m = build_model(2, ModelKind::bg);
  Rng rng(99);
  FieldExpr a = random_expr(rng, m.roster());
  FieldExpr b = random_expr(rng, m.roster());
  FieldExpr first = circle(a, b, 0);
  for (int i = 0; i < 3; ++i) CHECK(circle(a, b, 0) == first);
}
