// SPDX-License-Identifier: MIT
//
// A short tour of the OPE kernel: free-field generators, circle products,
// normally ordered products, and the first commutant generators of the
// rank-2 matrix model.  Build and run from the repository root:
//
//   ./build/sample-ope-basics

#include <iostream>

#include "freeva/freeva.hpp"

using namespace freeva;

int main() {
  // The rank-2 beta-gamma system: four beta[i,j] / gamma[i,j] pairs of
  // conformal weight 1/2 with contraction beta x gamma -> 1.
  ModelContext m = build_model(2, ModelKind::bg);

  FieldExpr beta11 = parse("beta[1,1]", m);
  FieldExpr gamma11 = parse("gamma[1,1]", m);

  // circle(a, b, j) is the coefficient of (z-w)^{-j-1} in the OPE a(z)b(w);
  // j = -1 is the normally ordered (Wick) product.
  std::cout << "beta[1,1](z) gamma[1,1](w):\n";
  std::cout << "  pole 1     : " << render(circle(beta11, gamma11, 0)) << "\n";
  std::cout << "  normal ord : " << render(circle(beta11, gamma11, -1)) << "\n\n";

  // The parser understands derivatives and right-nested normal ordering,
  // and render() round-trips every canonical expression.
  FieldExpr composite =
      parse("NO(beta[1,1], d(gamma[2,1])) - 1/2 * d(NO(beta[1,2], gamma[1,2]))", m);
  std::cout << "composite  : " << render(composite) << "\n";
  std::cout << "weight     : " << to_string(weight(composite)) << "\n\n";

  // The commutant generators of the rank-2 model: the two determinants and
  // the weight-one current C[1].  Their leading products recover the scalar
  // n! and (n-1)! C[1].
  build_commutant_generators(m);
  FieldExpr d = m.field("D");
  FieldExpr dp = m.field("D'");
  std::cout << "D          : " << render(d) << "\n";
  std::cout << "D (1) D'   : " << render(circle(d, dp, 1)) << "\n";
  std::cout << "D (0) D'   : " << render(circle(d, dp, 0)) << "\n\n";

  // The complete singular OPE of a pair, as a table keyed by pole order.
  OPETable t = ope_singular(m.field("C[1]"), d);
  for (const auto& [k, e] : t.poles)
    std::cout << "C[1] pole " << k << " with D: " << render(e) << "\n";

  return 0;
}
