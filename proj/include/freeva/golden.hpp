// SPDX-License-Identifier: MIT
//
// Reference data for the generator OPE tables and the normally ordered
// relations, stored as plain-text files in the expression grammar and
// compared structurally: every entry is parsed into a FieldExpr and checked
// by exact equality against the freshly computed value, never by string
// matching.  A tables file holds blocks
//
//   table <name> <name>
//   pole <k> = <expr>
//   end
//
// listing the complete singular part of the pair (empty block = regular
// OPE); pairs may be written in either orientation, and a reversed pair is
// recomputed directly rather than flipped by hand.  A relations file holds
// blocks "relation <expr>" (or a multi-line block closed by "end") whose
// expressions must expand to the zero field.  '#' starts a comment line.

#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "freeva/commutant.hpp"
#include "freeva/model.hpp"
#include "freeva/parse.hpp"

namespace freeva {

/// One golden table block: the pair of generator names and the expected
/// singular part, keyed by pole order, as unparsed expression text.
struct GoldenTable {
  std::string left, right;
  std::map<int, std::string, std::greater<int>> poles;
};

namespace golden_detail {

inline std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline bool content_line(const std::string& line, std::string& out) {
  std::string t = strip(line);
  if (t.empty() || t[0] == '#') return false;
  out = t;
  return true;
}

}  // namespace golden_detail

/// Parses a golden tables file.  Malformed structure throws; expression
/// bodies are kept as text and parsed only at comparison time, when a model
/// is available.
inline std::vector<GoldenTable> load_golden_tables(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<GoldenTable> out;
  GoldenTable cur;
  bool open = false;
  std::string raw, line;
  while (std::getline(in, raw)) {
    if (!golden_detail::content_line(raw, line)) continue;
    if (line.compare(0, 6, "table ") == 0) {
      if (open) throw error("load_golden_tables: missing 'end' in " + path);
      std::istringstream head(line.substr(6));
      cur = GoldenTable{};
      if (!(head >> cur.left >> cur.right))
        throw error("load_golden_tables: bad table header in " + path);
      open = true;
    } else if (line == "end") {
      if (!open) throw error("load_golden_tables: stray 'end' in " + path);
      out.push_back(cur);
      open = false;
    } else if (line.compare(0, 5, "pole ") == 0) {
      if (!open) throw error("load_golden_tables: pole outside table in " + path);
      size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw error("load_golden_tables: pole line without '=' in " + path);
      int k = std::stoi(line.substr(5, eq - 5));
      cur.poles[k] = golden_detail::strip(line.substr(eq + 1));
    } else {
      throw error("load_golden_tables: unrecognized line '" + line + "' in " + path);
    }
  }
  if (open) throw error("load_golden_tables: missing final 'end' in " + path);
  return out;
}

/// Parses a golden relations file into expression texts, one per relation.
inline std::vector<std::string> load_golden_relations(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> out;
  std::string raw, line;
  bool open = false;
  std::string acc;
  while (std::getline(in, raw)) {
    if (!golden_detail::content_line(raw, line)) continue;
    if (line.compare(0, 8, "relation") == 0 &&
        (line.size() == 8 || line[8] == ' ')) {
      if (open) throw error("load_golden_relations: missing 'end' in " + path);
      acc = golden_detail::strip(line.substr(8));
      if (acc.empty())
        open = true;  // multi-line block, closed by "end"
      else
        out.push_back(acc);
    } else if (line == "end") {
      if (!open) throw error("load_golden_relations: stray 'end' in " + path);
      out.push_back(acc);
      open = false;
    } else if (open) {
      acc += " " + line;
    } else {
      throw error("load_golden_relations: unrecognized line '" + line + "' in " + path);
    }
  }
  if (open) throw error("load_golden_relations: missing final 'end' in " + path);
  return out;
}

/// Result of checking one golden table block or relation.
struct GoldenCheck {
  std::string label;
  bool pass = false;
  std::string detail;  // empty on pass, first mismatch otherwise
};

/// Compares computed generator tables against golden blocks.  Every golden
/// block must match the computed singular part pole-for-pole (parsed, exact
/// field equality, no extra poles), and every computed pair must be covered
/// by some golden block in one orientation or the other.  Blocks whose pair
/// is stored reversed in `tables` are recomputed directly from the model.
inline std::vector<GoldenCheck> check_golden_tables(
    const ModelContext& m, const GeneratorTables& tables,
    const std::vector<GoldenTable>& gold) {
  std::vector<GoldenCheck> out;
  std::map<PairKey, bool> covered;
  for (const auto& [key, tab] : tables) covered[key] = false;

  for (const auto& g : gold) {
    GoldenCheck chk;
    chk.label = "(" + g.left + ", " + g.right + ")";
    const OPETable* computed = nullptr;
    OPETable scratch;
    auto fwd = tables.find({g.left, g.right});
    auto rev = tables.find({g.right, g.left});
    if (fwd != tables.end()) {
      computed = &fwd->second;
      covered[{g.left, g.right}] = true;
    } else if (rev != tables.end()) {
      scratch = ope_singular(m.field(g.left), m.field(g.right));
      computed = &scratch;
      covered[{g.right, g.left}] = true;
    } else {
      chk.detail = "pair not present in the computed tables";
      out.push_back(chk);
      continue;
    }

    std::string mismatch;
    for (const auto& [k, text] : g.poles) {
      FieldExpr want = parse(text, m);
      FieldExpr got = computed->poles.count(k) ? computed->poles.at(k)
                                               : FieldExpr::zero();
      if (!(want - got).is_zero()) {
        mismatch = "pole " + std::to_string(k) + ": computed " + render(got) +
                   ", expected " + render(want);
        break;
      }
    }
    if (mismatch.empty())
      for (const auto& [k, e] : computed->poles)
        if (!g.poles.count(k) && !e.is_zero()) {
          mismatch = "unexpected pole " + std::to_string(k) + ": " + render(e);
          break;
        }
    chk.pass = mismatch.empty();
    chk.detail = mismatch;
    out.push_back(chk);
  }

  for (const auto& [key, seen] : covered)
    if (!seen)
      out.push_back({"(" + key.first + ", " + key.second + ")", false,
                     "computed pair has no golden block"});
  return out;
}

/// Checks that every golden relation expands to the zero field.
inline std::vector<GoldenCheck> check_golden_relations(
    const ModelContext& m, const std::vector<std::string>& relations) {
  std::vector<GoldenCheck> out;
  for (size_t i = 0; i < relations.size(); ++i) {
    GoldenCheck chk;
    chk.label = "relation " + std::to_string(i + 1);
    FieldExpr e = parse(relations[i], m);
    chk.pass = relation_check(m, e);
    if (!chk.pass) chk.detail = "expands to " + render(e);
    out.push_back(chk);
  }
  return out;
}

/// Standard in-repository locations for the golden data of rank n.
inline std::string golden_tables_path(int n, const std::string& root = "golden") {
  return root + "/tables_n" + std::to_string(n) + ".golden";
}
inline std::string golden_relations_path(int n, const std::string& root = "golden") {
  return root + "/relations_n" + std::to_string(n) + ".golden";
}

}  // namespace freeva
