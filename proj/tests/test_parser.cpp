// SPDX-License-Identifier: MIT
//
// Grammar round-trips, canonical rendering, and parse errors with positions.

#include <catch2/catch_amalgamated.hpp>

#include "freeva/fock.hpp"
#include "freeva/golden.hpp"
#include "freeva/model.hpp"
#include "freeva/parse.hpp"

using namespace freeva;

TEST_CASE("basic forms parse to canonical expressions") {
  ModelContext m = build_model(2, ModelKind::bg);
  CHECK(parse("beta[1,1]", m) == gen(Family::Beta, 1, 1));
  CHECK(parse("NO(beta[1,1], gamma[1,1])", m) ==
        wick(gen(Family::Beta, 1, 1), gen(Family::Gamma, 1, 1)));
  CHECK(parse("2 + 0 * beta[1,1]", m) == Rational(2) * FieldExpr::unit());
  CHECK(parse("d^2(beta[1,2])", m) == derivative(gen(Family::Beta, 1, 2), 2));
  CHECK(parse("d(beta[1,2])", m) == derivative(gen(Family::Beta, 1, 2)));
  CHECK(parse("-3/32 * gamma[2,1]", m) ==
        Rational(-3, 32) * gen(Family::Gamma, 2, 1));
  // Multi-argument normal order is right-nested.
  FieldExpr b = gen(Family::Beta, 1, 1);
  CHECK(parse("NO(beta[1,1], beta[1,1], beta[1,1])", m) == wick(b, wick(b, b)));
}

TEST_CASE("rendering is canonical and round-trips") {
  ModelContext m = build_model(2, ModelKind::bcbg);
  CHECK(render(FieldExpr::zero()) == "0");
  CHECK(render(derivative(gen(Family::Beta, 1, 1))) == "d^1(beta[1,1])");

  Rng rng(2468);
  for (int trial = 0; trial < 40; ++trial) {
    FieldExpr e = random_expr(rng, m.roster());
    CHECK(parse(render(e), m) == e);
  }
}

TEST_CASE("named atoms resolve through the model registry") {
  ModelContext m = build_model(2, ModelKind::bg);
  build_commutant_generators(m);
  CHECK(parse("D'", m) == m.field("D'"));
  CHECK(parse("C[2]", m) == m.field("C[2]"));
  CHECK(parse("2 * D - D", m) == m.field("D"));
  // Round-trip: named fields render in expanded canonical form, which
  // parses back to the same expression.
  for (const char* name : {"D", "D'", "C[1]", "C[2]"}) {
    FieldExpr e = m.field(name);
    CHECK(parse(render(e), m) == e);
  }
}

TEST_CASE("fixture files round-trip through the grammar") {
  for (int n : {3, 4}) {
    ModelContext m = build_model(n, ModelKind::bg);
    ensure_sl_currents(m);
    for (int i = 2; i <= n; ++i) {
      std::string rel =
          "n" + std::to_string(n) + "/C" + std::to_string(i) + ".expr";
      FieldExpr e = load_fixture_expr(m, "fixtures", rel);
      CHECK(parse(render(e), m) == e);
    }
  }
}

TEST_CASE("golden table entries round-trip through the grammar") {
  for (int n : {2, 3, 4}) {
    ModelContext m = build_model(n, ModelKind::bg);
    build_commutant_generators(m);
    for (const auto& block : load_golden_tables(golden_tables_path(n)))
      for (const auto& [k, text] : block.poles) {
        FieldExpr e = parse(text, m);
        CHECK(parse(render(e), m) == e);
      }
    for (const auto& text : load_golden_relations(golden_relations_path(n))) {
      FieldExpr e = parse(text, m);
      CHECK(parse(render(e), m) == e);
    }
  }
}

TEST_CASE("errors carry positions and reasons") {
  ModelContext m = build_model(2, ModelKind::bg);
  auto message_of = [&](const std::string& text) {
    try {
      parse(text, m);
    } catch (const error& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };

  CHECK(message_of("beta[1,1] +").rfind("parse error at position", 0) == 0);
  CHECK(message_of("beta[3,1]").find("rank") != std::string::npos);
  CHECK(message_of("frob[1,1]") != "no error");
  CHECK(message_of("beta[1,1] junk").find("trailing") != std::string::npos);
  // Fermionic atoms are rejected in a purely bosonic model.
  CHECK(message_of("b[1,1]") != "no error");
  // Scalar-by-scalar is fine; field-by-field multiplication is not part of
  // the grammar.
  CHECK(message_of("beta[1,1] * gamma[1,1]") != "no error");
}
