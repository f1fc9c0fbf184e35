#include <iostream>

#include "freeva/fock.hpp"

using namespace freeva;

static Factor F(Family f, unsigned r, unsigned c, unsigned d = 0) {
  return make_factor(f, r, c, d);
}

int main() {
  // D and D' for n = 2.
  ExprBuilder db, dpb;
  db.add({F(Family::Beta, 1, 1), F(Family::Beta, 2, 2)}, 1);
  db.add({F(Family::Beta, 1, 2), F(Family::Beta, 2, 1)}, -1);
  FieldExpr D = db.take();
  dpb.add({F(Family::Gamma, 1, 1), F(Family::Gamma, 2, 2)}, 1);
  dpb.add({F(Family::Gamma, 1, 2), F(Family::Gamma, 2, 1)}, -1);
  FieldExpr Dp = dpb.take();

  std::cout << "D  = " << render(D) << "\n";
  std::cout << "D' = " << render(Dp) << "\n";
  std::cout << "wt D = " << to_string(weight(D)) << "\n";

  FieldExpr p2 = circle(D, Dp, 1);
  FieldExpr p1 = circle(D, Dp, 0);
  std::cout << "D(1)D' = " << render(p2) << "\n";
  std::cout << "D(0)D' = " << render(p1) << "\n";

  ExprBuilder c1b;
  for (unsigned i = 1; i <= 2; ++i)
    for (unsigned j = 1; j <= 2; ++j)
      c1b.add({F(Family::Beta, i, j), F(Family::Gamma, i, j)}, 1);
  FieldExpr C1 = c1b.take();
  std::cout << "C1 = " << render(C1) << "\n";
  std::cout << "D(0)D' == C1: " << (p1 == C1) << "\n";
  std::cout << "D(1)D' == 2:  " << (p2 == FieldExpr::unit() * Rational(2)) << "\n";

  FieldExpr c11 = circle(C1, C1, 1);
  std::cout << "C1(1)C1 = " << render(c11) << "\n";
  FieldExpr c1d = circle(C1, D, 0);
  std::cout << "C1(0)D = " << render(c1d) << "\n";

  // Oracle agreement on the same pairs.
  std::cout << "agree(D,D',1): " << states_agree(D, Dp, 1) << "\n";
  std::cout << "agree(D,D',0): " << states_agree(D, Dp, 0) << "\n";
  std::cout << "agree(C1,C1,1): " << states_agree(C1, C1, 1) << "\n";
  std::cout << "agree(C1,D,0): " << states_agree(C1, D, 0) << "\n";

  // Random sampled agreement.
  std::vector<GeneratorSymbol> roster;
  for (unsigned i = 1; i <= 2; ++i)
    for (unsigned j = 1; j <= 2; ++j) {
      roster.push_back({Family::Beta, i, j});
      roster.push_back({Family::Gamma, i, j});
      roster.push_back({Family::B, i, j});
      roster.push_back({Family::C, i, j});
    }
  Rng rng(42);
  int checked = 0;
  for (int t = 0; t < 40; ++t) {
    FieldExpr a = random_expr(rng, roster, 2, 2, 2);
    FieldExpr b = random_expr(rng, roster, 2, 2, 2);
    int n = int(rng.below(6)) - 3;
    if (!states_agree(a, b, n, 20)) {
      std::cout << "MISMATCH at t=" << t << " n=" << n << "\n  a=" << render(a)
                << "\n  b=" << render(b) << "\n";
      return 1;
    }
    ++checked;
  }
  std::cout << "random agreement: " << checked << "/40 ok\n";

  // Skew-symmetry cross-check.
  for (int t = 0; t < 20; ++t) {
    FieldExpr a = random_expr(rng, roster, 2, 2, 2);
    FieldExpr b = random_expr(rng, roster, 2, 2, 2);
    int n = int(rng.below(5)) - 2;
    FieldExpr lhs = circle(b, a, n);
    FieldExpr rhs = circle_via_skew(a, b, n);
    if (!(lhs == rhs)) {
      std::cout << "SKEW MISMATCH t=" << t << " n=" << n << "\n  a=" << render(a)
                << "\n  b=" << render(b) << "\n  lhs=" << render(lhs)
                << "\n  rhs=" << render(rhs) << "\n";
      return 1;
    }
  }
  std::cout << "skew cross-check: 20/20 ok\n";
  return 0;
}
