// SPDX-License-Identifier: MIT
//
// Batch command-line driver for the freeva library.
//
//   ope       --n N --left EXPR --right EXPR   singular OPE of two expressions
//   tables    --n N                            generator tables vs. golden data
//   verify    --n N [--full-w]                 commutant membership report
//   relations --n N                            normally ordered relation checks
//   zhu       --n N                            relation polynomials P and Q
//   classify  --n N --dim M                    finite-dimensional module family
//   oracle    --n N --samples K --cutoff W --seed S
//                                              symbolic vs. Fock-space agreement
//
// Every subcommand prints a human-readable report on stdout.  Any failed
// check makes the process exit nonzero after emitting a single-line JSON
// object {"status":"fail", ...} on stderr, so scripted callers never have to
// scrape the prose.  Reports are deterministic: map iteration orders are
// fixed and the oracle subcommand records its seed.  Rationals are always
// serialized exactly, as "num/den" strings inside rendered expressions.
//
// FREEVA_THREADS controls pair-level parallelism; FREEVA_CACHE_BUDGET bounds
// the kernel's product cache.  Both are read by the library, not here.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "freeva/freeva.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace freeva;

void fail_json(const json& detail) {
  json out = {{"status", "fail"}};
  for (auto& [k, v] : detail.items()) out[k] = v;
  std::cerr << out.dump() << "\n";
}

/// Builds the beta-gamma model with the commutant generators registered.
/// Ranks 5 and up have no Casimir fixtures, so only D, D' and C[1] exist.
ModelContext commutant_model(int n, const std::string& fixtures) {
  ModelContext m = build_model(n, ModelKind::bg);
  if (n <= 4) {
    build_commutant_generators(m, fixtures);
  } else {
    ensure_sl_currents(m);
    m.register_field("D", determinant_field(m, Side::beta));
    m.register_field("D'", determinant_field(m, Side::gamma));
    m.register_field("C[1]", casimir_field(m, 1));
  }
  return m;
}

void print_table(const std::string& a, const std::string& b,
                 const OPETable& t) {
  std::cout << "pair (" << a << ", " << b << ")\n";
  if (t.poles.empty()) {
    std::cout << "  regular (no singular part)\n";
    return;
  }
  for (const auto& [k, e] : t.poles)
    std::cout << "  pole " << k << ": " << render(e) << "\n";
}

json table_json(const std::string& a, const std::string& b,
                const OPETable& t) {
  json poles = json::object();
  for (const auto& [k, e] : t.poles) poles[std::to_string(k)] = render(e);
  return json{{"pair", {a, b}}, {"poles", poles}};
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw error("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int run_ope(int n, const std::string& left, const std::string& right,
            const std::string& json_path, const std::string& fixtures) {
  ModelContext m = commutant_model(n, fixtures);
  FieldExpr a = parse(left, m);
  FieldExpr b = parse(right, m);
  OPETable t = ope_singular(a, b);
  print_table(left, right, t);
  if (!json_path.empty())
    write_json_file(json_path, table_json(left, right, t));
  return 0;
}

int run_tables(int n, const std::string& json_path, bool check,
               const std::string& golden_root, const std::string& fixtures) {
  ModelContext m = commutant_model(n, fixtures);
  GeneratorTables tables = generator_ope_tables(m);
  json arr = json::array();
  for (const auto& [key, t] : tables) {
    print_table(key.first, key.second, t);
    arr.push_back(table_json(key.first, key.second, t));
  }
  std::cout << "note: " << c1_c1_annotation(n) << "\n";
  if (!json_path.empty()) write_json_file(json_path, arr);

  if (!check) return 0;
  auto checks =
      check_golden_tables(m, tables, load_golden_tables(golden_tables_path(n, golden_root)));
  int bad = 0;
  for (const auto& c : checks) {
    std::cout << "golden " << c.label << ": " << (c.pass ? "ok" : "MISMATCH")
              << (c.pass ? "" : " -- " + c.detail) << "\n";
    if (!c.pass) ++bad;
  }
  if (bad) {
    json details = json::array();
    for (const auto& c : checks)
      if (!c.pass) details.push_back({{"pair", c.label}, {"detail", c.detail}});
    fail_json({{"command", "tables"}, {"n", n}, {"mismatches", details}});
    return 1;
  }
  std::cout << "all " << checks.size() << " golden blocks match\n";
  return 0;
}

int run_verify(int n, bool full_w, const std::string& fixtures) {
  ModelContext m = full_w ? build_model(n, ModelKind::bcbg)
                          : build_model(n, ModelKind::bg);
  if (full_w) build_pgl_realization(m);
  build_commutant_generators(m, fixtures);

  std::vector<NamedField> currents =
      full_w ? psl_current_family(m) : sl_current_copies(m);
  std::cout << "checking against " << currents.size()
            << (full_w ? " even and odd currents\n" : " currents (both copies)\n");

  std::vector<NamedField> targets = {{"D", m.field("D")}, {"D'", m.field("D'")}};
  for (int i = 1; i <= n; ++i) {
    std::string name = "C[" + std::to_string(i) + "]";
    if (m.has_field(name)) targets.push_back({name, m.field(name)});
  }

  int bad = 0;
  json failures = json::array();
  for (const auto& v : targets) {
    CommutantReport rep = verify_membership(m, v, currents);
    std::cout << v.name << ": " << (rep.pass ? "in commutant" : "NOT in commutant")
              << " (" << rep.checked << " products checked)\n";
    for (const auto& r : rep.residuals) {
      std::cout << "  residual: circle(" << r.current << ", " << v.name << ", "
                << r.product << ") = " << render(r.value) << "\n";
      failures.push_back({{"field", v.name},
                          {"current", r.current},
                          {"product", r.product},
                          {"value", render(r.value)}});
    }
    if (!rep.pass) ++bad;
  }
  if (bad) {
    fail_json({{"command", "verify"}, {"n", n}, {"residuals", failures}});
    return 1;
  }
  return 0;
}

int run_relations(int n, const std::string& golden_root,
                  const std::string& fixtures) {
  ModelContext m = commutant_model(n, fixtures);
  auto texts = load_golden_relations(golden_relations_path(n, golden_root));
  auto checks = check_golden_relations(m, texts);
  int bad = 0;
  for (const auto& c : checks) {
    std::cout << c.label << ": " << (c.pass ? "holds" : "FAILS")
              << (c.pass ? "" : " -- " + c.detail) << "\n";
    if (!c.pass) ++bad;
  }
  if (bad) {
    json details = json::array();
    for (const auto& c : checks)
      if (!c.pass) details.push_back({{"relation", c.label}, {"detail", c.detail}});
    fail_json({{"command", "relations"}, {"n", n}, {"failed", details}});
    return 1;
  }
  return 0;
}

int run_zhu(int n, const std::string& fixtures) {
  PQPair pq = compute_PQ(n, fixtures);
  std::cout << "P = " << pq.P.to_string() << "\n";
  std::cout << "Q = " << pq.Q.to_string() << "\n";
  return 0;
}

int run_classify(int n, int dim, const std::string& fixtures) {
  ModuleFamily fam = classify_modules(n, dim, fixtures);
  std::cout << "rank " << fam.n << ", dimension " << fam.dim << "\n";
  if (fam.free_params.empty()) {
    std::cout << "free parameters: none\n";
  } else {
    std::cout << "free parameters:";
    for (const auto& p : fam.free_params) std::cout << " " << p;
    std::cout << "\n";
  }
  for (const auto& [name, value] : fam.solved)
    std::cout << name << " = " << value.to_string() << "\n";
  for (const auto& ex : fam.exclusions)
    std::cout << "excluded locus: " << ex.to_string() << " = 0\n";
  return 0;
}

int run_oracle(int n, int samples, int cutoff, uint64_t seed) {
  ModelContext m = build_model(n, ModelKind::bg);
  Rng rng(seed);
  const Rational cut(cutoff);
  int checks = 0, disagreements = 0;
  json bad = json::array();
  for (int s = 0; s < samples; ++s) {
    // Keep each side at conformal weight <= 3 so every product up to the
    // fourth-order pole stays within the state-space cutoff.
    FieldExpr a, b;
    do a = random_expr(rng, m.roster());
    while (max_weight2(a) > 6);
    do b = random_expr(rng, m.roster());
    while (max_weight2(b) > 6);
    for (int j = -4; j <= 4; ++j) {
      if (Rational(max_weight2(a) + max_weight2(b) - 2 * j - 2) / 2 > cut)
        continue;
      ++checks;
      if (!agree(a, b, j, cut)) {
        ++disagreements;
        bad.push_back({{"sample", s},
                       {"product", j},
                       {"left", render(a)},
                       {"right", render(b)}});
      }
    }
  }
  std::cout << "seed " << seed << ": " << samples << " sample pairs, " << checks
            << " products compared, " << disagreements << " disagreements\n";
  if (disagreements) {
    fail_json({{"command", "oracle"},
               {"n", n},
               {"seed", seed},
               {"disagreements", bad}});
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact OPE engine for free-field vertex algebras"};
  app.require_subcommand(1);

  int n = 2, dim = 1, samples = 100, cutoff = 5;
  uint64_t seed = 1;
  std::string left, right, json_path, fixtures = "fixtures", golden_root = "golden";
  bool full_w = false, no_check = false;

  auto add_n = [&](CLI::App* sub) {
    sub->add_option("--n", n, "rank of the matrix model")->required();
  };
  auto add_fixtures = [&](CLI::App* sub) {
    sub->add_option("--fixtures", fixtures, "fixture directory (default fixtures)");
  };

  CLI::App* ope = app.add_subcommand("ope", "singular OPE of two expressions");
  add_n(ope);
  ope->add_option("--left", left, "left expression")->required();
  ope->add_option("--right", right, "right expression")->required();
  ope->add_option("--json", json_path, "also write the table as JSON");
  add_fixtures(ope);

  CLI::App* tables = app.add_subcommand("tables", "generator OPE tables");
  add_n(tables);
  tables->add_option("--json", json_path, "also write the tables as JSON");
  tables->add_flag("--no-check", no_check, "skip the golden comparison");
  tables->add_option("--golden-root", golden_root, "golden data directory");
  add_fixtures(tables);

  CLI::App* verify = app.add_subcommand("verify", "commutant membership");
  add_n(verify);
  verify->add_flag("--full-w", full_w,
                   "check against the full current family, odd ones included");
  add_fixtures(verify);

  CLI::App* relations = app.add_subcommand("relations", "normally ordered relations");
  add_n(relations);
  relations->add_option("--golden-root", golden_root, "golden data directory");
  add_fixtures(relations);

  CLI::App* zhu = app.add_subcommand("zhu", "relation polynomials P and Q");
  add_n(zhu);
  add_fixtures(zhu);

  CLI::App* classify = app.add_subcommand("classify", "finite-dimensional modules");
  add_n(classify);
  classify->add_option("--dim", dim, "module dimension")->required();
  add_fixtures(classify);

  CLI::App* oracle = app.add_subcommand("oracle", "symbolic vs. Fock-space check");
  add_n(oracle);
  oracle->add_option("--samples", samples, "number of random pairs (default 100)");
  oracle->add_option("--cutoff", cutoff, "state-space weight cutoff (default 5)");
  oracle->add_option("--seed", seed, "random seed (default 1)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (ope->parsed()) return run_ope(n, left, right, json_path, fixtures);
    if (tables->parsed())
      return run_tables(n, json_path, !no_check, golden_root, fixtures);
    if (verify->parsed()) return run_verify(n, full_w, fixtures);
    if (relations->parsed()) return run_relations(n, golden_root, fixtures);
    if (zhu->parsed()) return run_zhu(n, fixtures);
    if (classify->parsed()) return run_classify(n, dim, fixtures);
    if (oracle->parsed()) return run_oracle(n, samples, cutoff, seed);
  } catch (const std::exception& e) {
    fail_json({{"error", e.what()}});
    return 1;
  }
  return 0;
}
