// SPDX-License-Identifier: MIT
//
// Commutant layer: membership of the generators against the current
// families, the golden generator tables, the normally ordered relations
// with negative controls, and the general-rank leading products.

#include <catch2/catch_amalgamated.hpp>

#include "freeva/commutant.hpp"
#include "freeva/golden.hpp"
#include "freeva/model.hpp"

using namespace freeva;

TEST_CASE("generators lie in the commutant of both current copies") {
  ModelContext m = build_model(2, ModelKind::bg);
  build_commutant_generators(m);
  auto currents = sl_current_copies(m);
  CHECK(currents.size() == 6);  // (n^2 - 1) currents per copy

  for (const char* name : {"D", "D'", "C[1]", "C[2]"}) {
    CommutantReport rep = verify_membership(m, {name, m.field(name)}, currents);
    CHECK(rep.pass);
    CHECK(rep.checked > 0);
    CHECK(rep.residuals.empty());
  }

  // Negative control: a bare field is not invariant, and the report says
  // which product is at fault.
  FieldExpr beta = gen(Family::Beta, 1, 1);
  CommutantReport bad = verify_membership(m, {"beta[1,1]", beta}, currents);
  CHECK(!bad.pass);
  CHECK(!bad.residuals.empty());
}

TEST_CASE("membership extends to the odd currents of the combined model") {
  ModelContext m = build_model(2, ModelKind::bcbg);
  build_pgl_realization(m);
  build_commutant_generators(m);
  auto family = psl_current_family(m);
  CHECK(family.size() == 4 * 2 * 2 - 2);

  bool has_odd = false;
  for (const auto& cur : family)
    if (cur.name.rfind("F", 0) == 0) has_odd = true;
  CHECK(has_odd);

  CommutantReport rep = verify_membership(m, {"D", m.field("D")}, family);
  CHECK(rep.pass);

  // Negative control: the diagonal direction that the quotient removes.
  // Its even part is a multiple of C[1], which visibly moves D.
  FieldExpr K = FieldExpr::zero();
  for (int a = 1; a <= 2; ++a)
    K = K + realized_current(m, GlGen{GlKind::Ep, a, a}) -
        realized_current(m, GlGen{GlKind::Em, a, a});
  CommutantReport kbad = verify_membership(m, {"D", m.field("D")}, {{"K", K}});
  CHECK(!kbad.pass);
}

TEST_CASE("generator tables match the golden data at rank 2") {
  ModelContext m = build_model(2, ModelKind::bg);
  build_commutant_generators(m);
  GeneratorTables tables = generator_ope_tables(m);
  CHECK(tables.size() == 6);  // unordered pairs over {D, D', C[1]}

  auto checks =
      check_golden_tables(m, tables, load_golden_tables(golden_tables_path(2)));
  for (const auto& c : checks) {
    INFO(c.label << ": " << c.detail);
    CHECK(c.pass);
  }
}

TEST_CASE("relations hold and perturbed coefficients fail") {
  ModelContext m = build_model(2, ModelKind::bg);
  build_commutant_generators(m);
  for (const auto& c :
       check_golden_relations(m, load_golden_relations(golden_relations_path(2)))) {
    INFO(c.label << ": " << c.detail);
    CHECK(c.pass);
  }

  // Negative control: 1/2 -> 1/3 on the C[2] coefficient.
  FieldExpr wrong = parse(
      "NO(D, D') + 1/3 * C[2] - 1/4 * NO(C[1], C[1]) - 1/2 * d(C[1])", m);
  CHECK(!relation_check(m, wrong));

  // And an expression outside the model is rejected outright.
  ModelContext big = build_model(3, ModelKind::bg);
  FieldExpr out_of_rank = gen(Family::Beta, 3, 3);
  CHECK_THROWS_AS(relation_check(m, out_of_rank), error);
}

TEST_CASE("leading products at low rank") {
  for (int n : {2, 3}) {
    ModelContext m = build_model(n, ModelKind::bg);
    m.register_field("C[1]", casimir_field(m, 1));
    auto [top, next] = leading_ope(m);
    CHECK(top == Rational(factorial(unsigned(n))) * FieldExpr::unit());
    CHECK(next == Rational(factorial(unsigned(n - 1))) * m.field("C[1]"));
  }
}

TEST_CASE("charge bookkeeping of the weight-one current") {
  for (int n : {2, 3}) {
    ModelContext m = build_model(n, ModelKind::bg);
    build_commutant_generators(m);
    FieldExpr c1 = m.field("C[1]");
    CHECK(circle(c1, m.field("D"), 0) == Rational(-n) * m.field("D"));
    CHECK(circle(c1, m.field("D'"), 0) == Rational(n) * m.field("D'"));
    OPETable self = ope_singular(c1, c1);
    REQUIRE(self.poles.count(2));
    CHECK(self.poles.at(2) == Rational(-n * n) * FieldExpr::unit());
    CHECK(!self.poles.count(1));
  }
  std::string note = c1_c1_annotation(2);
  CHECK(note.find("pole order is 2") != std::string::npos);
}
