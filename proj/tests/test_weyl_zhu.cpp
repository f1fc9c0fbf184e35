// SPDX-License-Identifier: MIT
//
// The Weyl-algebra layer: normal ordering, the star product and projection
// to the associative quotient, the invariant generators d, d', c_i, the
// relation polynomials P and Q, and the Bernstein leading symbols.

#include <catch2/catch_amalgamated.hpp>

#include "freeva/fock.hpp"
#include "freeva/model.hpp"
#include "freeva/poly.hpp"
#include "freeva/weyl.hpp"
#include "freeva/zhu.hpp"

using namespace freeva;

namespace {
Poly pv(const char* s) { return Poly::var(s); }
}  // namespace

TEST_CASE("weyl normal ordering") {
  WeylElement x = WeylElement::x(1, 1), d = WeylElement::d(1, 1);
  CHECK(weyl_commutator(d, x) == WeylElement::unit());
  CHECK(weyl_commutator(d, WeylElement::x(1, 2)).is_zero());
  CHECK(d * x == x * d + WeylElement::unit());

  // (x^2 d^2) x = x^3 d^2 + 2 x^2 d.
  WeylElement a = x * x * d * d;
  CHECK(a * x == x * x * x * d * d + Rational(2) * (x * x * d));
  CHECK(a.bernstein_degree() == 4);
  CHECK(WeylElement::zero().bernstein_degree() == -1);

  // Commutators drop the filtration degree by at least two.
  Rng rng(13);
  auto random_elt = [&](int len) {
    WeylElement e = WeylElement::unit();
    for (int i = 0; i < len; ++i) {
      int r = 1 + int(rng.below(2)), c = 1 + int(rng.below(2));
      e = rng.below(2) ? e * WeylElement::x(r, c) : e * WeylElement::d(r, c);
    }
    return e;
  };
  for (int trial = 0; trial < 20; ++trial) {
    WeylElement u = random_elt(3), v = random_elt(3);
    WeylElement c = weyl_commutator(u, v);
    if (!c.is_zero())
      CHECK(c.bernstein_degree() <=
            u.bernstein_degree() + v.bernstein_degree() - 2);
  }
}

TEST_CASE("star product anchors") {
  FieldExpr beta = gen(Family::Beta, 1, 1), gamma = gen(Family::Gamma, 1, 1);
  CHECK(zhu_star(beta, gamma) ==
        wick(beta, gamma) + Rational(1, 2) * FieldExpr::unit());
  CHECK(zhu_star(gamma, beta) ==
        wick(gamma, beta) - Rational(1, 2) * FieldExpr::unit());
}

TEST_CASE("projection anchors at rank 2") {
  ModelContext m = build_model(2, ModelKind::bg);
  build_commutant_generators(m);
  WeylElement d = zhu_project(m.field("D"));
  WeylElement dp = zhu_project(m.field("D'"));
  WeylElement detx = WeylElement::x(1, 1) * WeylElement::x(2, 2) -
                     WeylElement::x(1, 2) * WeylElement::x(2, 1);
  WeylElement detd = WeylElement::d(1, 1) * WeylElement::d(2, 2) -
                     WeylElement::d(1, 2) * WeylElement::d(2, 1);
  CHECK(dp == detx);
  CHECK(d == detd);

  // The raw class of C[1] is the Euler operator plus n^2/2; the generator
  // set shifts it to the plain Euler operator.
  WeylElement c1raw = zhu_project(m.field("C[1]"));
  WeylElement euler;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      euler += WeylElement::x(i, j) * WeylElement::d(i, j);
  CHECK(c1raw == euler + Rational(2) * WeylElement::unit());

  ZhuGenerators g2 = zhu_generators(2);
  CHECK(g2.c[0] == euler);

  // Derivatives of weight-1 fields flip sign in the quotient.
  CHECK(zhu_project(derivative(m.field("C[1]"))) == -c1raw);

  // sl_2 in the normalized generators.
  CHECK(weyl_commutator(g2.c[0], g2.dp) == Rational(2) * g2.dp);
  CHECK(weyl_commutator(g2.c[0], g2.d) == Rational(-2) * g2.d);
  CHECK(weyl_commutator(g2.d, g2.dp) == g2.c[0] + Rational(2) * WeylElement::unit());

  // c_2 is central against both determinants.
  CHECK(weyl_commutator(g2.c[1], g2.d).is_zero());
  CHECK(weyl_commutator(g2.c[1], g2.dp).is_zero());

  // The projection is multiplicative through the star product.
  for (const char* name : {"C[1]", "D'"}) {
    FieldExpr a = m.field(name), b = m.field("D");
    CHECK(zhu_project(zhu_star(a, b)) ==
          weyl_multiply(zhu_project(a), zhu_project(b)));
  }
}

TEST_CASE("relation polynomials at rank 2") {
  PQPair pq = compute_PQ(2);
  Poly c1 = pv("c1"), c2 = pv("c2");
  CHECK(pq.P == Rational(1, 2) * c2 - Rational(1, 4) * c1 * c1 -
                    Rational(3, 2) * c1 - Poly(2));
  CHECK(pq.Q == Rational(1, 2) * c2 - Rational(1, 4) * c1 * c1 -
                    Rational(1, 2) * c1);
  // Conjugating by the raising operator shifts the weight-one generator.
  CHECK(pq.P == pq.Q.substitute({{"c1", pv("c1") + Poly(2)}}));
}

TEST_CASE("relation polynomials at rank 3") {
  PQPair pq = compute_PQ(3);
  Poly c1 = pv("c1"), c2 = pv("c2"), c3 = pv("c3");
  Poly P = Rational(-1, 27) * c3 + Rational(1, 6) * c2 * c1 -
           Rational(1, 27) * c1.pow(3) + Rational(3, 2) * c2 -
           Rational(2, 3) * c1 * c1 - Rational(11, 3) * c1 - Poly(6);
  Poly Q = Rational(-1, 27) * c3 + Rational(1, 6) * c2 * c1 -
           Rational(1, 27) * c1.pow(3) + c2 - Rational(1, 3) * c1 * c1 -
           Rational(2, 3) * c1;
  CHECK(pq.P == P);
  CHECK(pq.Q == Q);
  CHECK(pq.P == pq.Q.substitute({{"c1", pv("c1") + Poly(3)}}));
}

TEST_CASE("leading symbols and the graded relation") {
  for (int n : {2, 3}) {
    ZhuGenerators g = zhu_generators(n);
    PQPair pq = compute_PQ(n);
    Poly sd = weyl_top_symbol(g.d), sdp = weyl_top_symbol(g.dp);

    // det X three ways: classical recursion, cofactor oracle, and the
    // product of the two determinant symbols.
    Poly det_ng = newton_girard<Poly>(symbol_power_sums(n));
    CHECK(det_ng == determinant_cofactor<Poly>(symbol_matrix(n)));
    CHECK(det_ng == sd * sdp);

    // Top Bernstein parts of P and Q coincide and evaluate to
    // -sigma(d) sigma(d') at the Casimir top symbols.
    std::map<std::string, int> w;
    for (int i = 1; i <= n; ++i) w["c" + std::to_string(i)] = i;
    Poly ptop = pq.P.top_part(w);
    CHECK(ptop == pq.Q.top_part(w));
    std::map<std::string, Poly> subs;
    for (int i = 1; i <= n; ++i)
      subs["c" + std::to_string(i)] = weyl_top_symbol(g.c[size_t(i - 1)]);
    CHECK(ptop.substitute(subs) == -(sd * sdp));
  }
}

TEST_CASE("newton_girard classical identities") {
  // Identity 2x2: power sums (2, 2), determinant 1.
  CHECK(newton_girard<Rational>({2, 2}) == 1);
  // diag(1,2,3): power sums (6, 14, 36), determinant 6.
  CHECK(newton_girard<Rational>({6, 14, 36}) == 6);
  // Random integer matrices against the cofactor oracle.
  Rng rng(31337);
  for (int trial = 0; trial < 10; ++trial) {
    size_t k = 2 + rng.below(3);
    Matrix a(k, Vec(k));
    for (auto& row : a)
      for (auto& v : row) v = Rational(long(rng.below(11)) - 5);
    std::vector<Rational> p;
    Matrix pw = a;
    for (size_t i = 1; i <= k; ++i) {
      p.push_back(trace(pw));
      if (i < k) pw = matmul(pw, a);
    }
    std::vector<std::vector<Rational>> aa;
    for (auto& r : a) aa.push_back(r);
    CHECK(newton_girard<Rational>(p) == determinant_cofactor<Rational>(aa));
  }
}

TEST_CASE("polynomial helper edge cases") {
  Poly z = Poly::zero();
  CHECK(z.is_zero());
  CHECK(Poly(3).is_constant());
  CHECK_THROWS_AS(pv("x").constant_value(), error);
  Poly f = pv("x") * pv("x") - Poly(1);
  CHECK(f.degree_in("x") == 2);
  CHECK(f.coeff_of("x", 2) == Poly(1));
  CHECK(f.eval({{"x", Rational(3)}}) == 8);
  CHECK_THROWS_AS(f.eval({}), error);
  auto q = poly_try_divide(f, pv("x") - Poly(1));
  REQUIRE(q);
  CHECK(*q == pv("x") + Poly(1));
  CHECK(!poly_try_divide(f, pv("y")));
}
