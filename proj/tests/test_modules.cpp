// SPDX-License-Identifier: MIT
//
// Finite-dimensional module classification from the relation polynomials,
// and the explicit matrix action on the cyclic basis.

#include <catch2/catch_amalgamated.hpp>

#include "freeva/modules.hpp"

using namespace freeva;

namespace {
Poly pv(const char* s) { return Poly::var(s); }

const PQPair& pq2() {
  static PQPair pq = compute_PQ(2);
  return pq;
}
const PQPair& pq3() {
  static PQPair pq = compute_PQ(3);
  return pq;
}
}  // namespace

TEST_CASE("rank 2 classification in a symbolic dimension") {
  ModuleFamily sym = classify_modules_symbolic(2, pq2());
  CHECK(sym.free_params.empty());
  REQUIRE(sym.solved.size() == 2);
  Poly mv = pv("m");
  CHECK(sym.solved[0].first == "a");
  CHECK(sym.solved[0].second == mv - Poly(3));
  CHECK(sym.solved[1].first == "l2");
  CHECK(sym.solved[1].second == Rational(1, 2) * (mv * mv - Poly(1)));
  CHECK(sym.exclusions.empty());
}

TEST_CASE("rank 2 classification for small concrete dimensions") {
  for (int m = 1; m <= 10; ++m) {
    ModuleFamily f = classify_modules(pq2(), m);
    CHECK(f.dim == m);
    CHECK(f.solved[0].second == Poly(m - 3));
    CHECK(f.solved[1].second == Poly::constant(Rational(m * m - 1, 2)));
    CHECK(f.exclusions.empty());
  }
  CHECK_THROWS_AS(classify_modules(pq2(), 0), error);
  CHECK_THROWS_AS(classify_modules_symbolic(3, pq2()), error);
}

TEST_CASE("rank 3 classification and excluded parameter triples") {
  Poly a = pv("a"), m = pv("m");
  ModuleFamily sym = classify_modules_symbolic(3, pq3());
  CHECK(sym.free_params == std::vector<std::string>{"a"});
  REQUIRE(sym.solved.size() == 2);

  Poly l2_gold = Rational(2, 3) * (Poly(33) + Poly(12) * a + a * a -
                                   Poly(18) * m - Poly(3) * a * m +
                                   Poly(3) * m * m);
  Poly l3_gold = (Poly(9) + a) * (Poly(81) + Poly(27) * a + Poly(2) * a * a -
                                  Poly(54) * m - Poly(9) * a * m +
                                  Poly(9) * m * m);
  CHECK(sym.solved[0].first == "l2");
  CHECK(sym.solved[0].second == l2_gold);
  CHECK(sym.solved[1].first == "l3");
  CHECK(sym.solved[1].second == l3_gold);

  // The i-th irreducibility inequation, with the solved lambdas plugged in.
  auto inequation = [&](int i) {
    Poly shift = a - Poly(3) * (m - Poly(i));
    return pq3().Q.substitute(
        {{"c1", shift}, {"c2", l2_gold}, {"c3", l3_gold}});
  };

  // i = 2: the excluded locus is a = -7 + 2m with the displayed lambdas.
  {
    Poly a2 = Poly(-7) + Poly(2) * m;
    CHECK(inequation(2).substitute({{"a", a2}}).is_zero());
    CHECK(l2_gold.substitute({{"a", a2}}) ==
          Rational(2, 3) * (Poly(-2) - m + m * m));
    CHECK(l3_gold.substitute({{"a", a2}}) ==
          Poly(-2) * (Poly(10) + Poly(3) * m - Poly(6) * m * m + m * m * m));
  }
  // i = 3: a = -8 + 2m.
  {
    Poly a3 = Poly(-8) + Poly(2) * m;
    CHECK(inequation(3).substitute({{"a", a3}}).is_zero());
    CHECK(l2_gold.substitute({{"a", a3}}) ==
          Rational(2, 3) * (Poly(1) - Poly(2) * m + m * m));
    CHECK(l3_gold.substitute({{"a", a3}}) ==
          Poly(-7) - Poly(6) * m + Poly(15) * m * m - Poly(2) * m * m * m);
  }

  // Concrete dimension: each excluded value of a shows up as a nonconstant
  // polynomial constraint.
  ModuleFamily f4 = classify_modules(pq3(), 4);
  CHECK(f4.dim == 4);
  CHECK(f4.exclusions.size() == 3);
  for (const Poly& ex : f4.exclusions) CHECK(!ex.is_constant());
}

TEST_CASE("rank 4 classification") {
  PQPair pq = compute_PQ(4);
  Poly a = pv("a"), m = pv("m"), l2 = pv("l2");
  ModuleFamily sym = classify_modules_symbolic(4, pq);
  CHECK((sym.free_params == std::vector<std::string>{"a", "l2"}));
  REQUIRE(sym.solved.size() == 2);

  Poly l3_gold =
      Rational(1, 2) *
      (Poly(800) + Poly(280) * a + Poly(30) * a * a + a * a * a -
       Poly(56) * l2 - Poly(4) * a * l2 - Poly(560) * m - Poly(120) * a * m -
       Poly(6) * a * a * m + Poly(8) * l2 * m + Poly(160) * m * m +
       Poly(16) * a * m * m - Poly(16) * m * m * m);
  Poly l4_gold = (Poly(16) + a) * (Poly(16) + a - Poly(4) * m) *
                 (Poly(176) + Poly(48) * a + Poly(3) * a * a - Poly(8) * l2 -
                  Poly(96) * m - Poly(12) * a * m + Poly(16) * m * m);
  CHECK(sym.solved[0].first == "l3");
  CHECK(sym.solved[0].second == l3_gold);
  CHECK(sym.solved[1].first == "l4");
  CHECK(sym.solved[1].second == l4_gold);
}

TEST_CASE("matrix action on the cyclic basis, rank 2 dimension 3") {
  // Family point: a = 0, l2 = 4.
  std::vector<std::string> warn;
  Matrix c1 = verma_action(pq2(), 3, 0, {4}, {"c1"}, &warn);
  CHECK(warn.empty());
  CHECK(c1[0][0] == 0);
  CHECK(c1[1][1] == -2);
  CHECK(c1[2][2] == -4);
  CHECK(c1[0][1] == 0);

  // d is nilpotent of exact order m.
  Matrix d3 = verma_action(pq2(), 3, 0, {4}, {"d", "d", "d"});
  for (const auto& row : d3)
    for (const auto& v : row) CHECK(v == 0);
  Matrix d2 = verma_action(pq2(), 3, 0, {4}, {"d", "d"});
  CHECK(d2[2][0] == 1);
  Matrix w2 = verma_action(pq2(), 3, 0, {4}, {"d'", "d'", "d", "d"});
  CHECK(w2[0][0] != 0);

  // d d' and d' d realize -P and -Q at the shifted weights.
  Matrix ddp = verma_action(pq2(), 3, 0, {4}, {"d", "d'"});
  Matrix dpd = verma_action(pq2(), 3, 0, {4}, {"d'", "d"});
  for (int k = 0; k < 3; ++k) {
    Rational c1v = Rational(-2) * k;
    CHECK(ddp[size_t(k)][size_t(k)] ==
          -pq2().P.eval({{"c1", c1v}, {"c2", 4}}));
    CHECK(dpd[size_t(k)][size_t(k)] ==
          -pq2().Q.eval({{"c1", c1v}, {"c2", 4}}));
  }

  // Points off the classified family are rejected.
  CHECK_THROWS_AS(verma_action(pq2(), 3, 1, {4}, {"c1"}), error);
  // Wrong number of eigenvalues is rejected.
  CHECK_THROWS_AS(verma_action(pq2(), 3, 0, {4, 1}, {"c1"}), error);

  // The dimension-2 family point is clean as well.
  std::vector<std::string> warn2;
  verma_action(pq2(), 2, -1, {Rational(3, 2)}, {"c1"}, &warn2);
  CHECK(warn2.empty());
}
