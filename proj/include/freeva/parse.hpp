// SPDX-License-Identifier: MIT
//
// Expression grammar and recursive-descent parser.
//
// Surface syntax (whitespace-insensitive except inside atom names):
//
//   expr    :=  term (('+' | '-') term)*
//   term    :=  unary ('*' unary)*          -- at least one side of '*' scalar
//   unary   :=  '-' unary | primary
//   primary :=  rational                    -- 3, -3/32 (sign via unary '-')
//             | 'd' ['^' int] '(' expr ')'  -- k-th derivative, default k = 1
//             | 'NO' '(' expr {',' expr} ')'-- right-nested normal order
//             | '(' expr ')'
//             | atom
//
// Atoms are either direct free-field generators -- beta[i,j], gamma[i,j],
// b[i,j], c[i,j] with 1-based indices bounded by the rank -- or named fields
// such as D, D', C[2], E+[1,2], F-[2,1], L[1,2], LH[1], L_S, resolved through
// a caller-supplied lookup.  A name absorbs an immediately following ' (as in
// D'), a + or - sign directly followed by a bracket (E+[1,2]), and a bracketed
// integer list; no whitespace is permitted inside an atom.
//
// render(parse(s)) is canonical and parse(render(e)) == e for canonical e.

#pragma once

#include <cctype>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "freeva/expr.hpp"
#include "freeva/ope.hpp"
#include "freeva/rational.hpp"
#include "freeva/symbol.hpp"

namespace freeva {

/// Everything the parser needs to know about the ambient model: the rank n
/// bounding generator indices, which free-field families exist, and how to
/// resolve named atoms.  model.hpp provides the wrapper that fills this from
/// a ModelContext; tests may build one by hand.
struct ParseEnv {
  int rank = 0;
  bool allow_bosonic = true;
  bool allow_fermionic = true;
  std::function<FieldExpr(const std::string&)> resolve;
};

namespace parse_detail {

class Parser {
 public:
  Parser(std::string_view text, const ParseEnv& env) : text_(text), env_(env) {}

  FieldExpr run() {
    FieldExpr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  std::string_view text_;
  const ParseEnv& env_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw error("parse error at position " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_])) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool eat(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  /// Raw character at the current position, no whitespace skipping: atom
  /// names are whitespace-sensitive.
  char raw(size_t off = 0) const {
    return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
  }

  Int integer() {
    skip_ws();
    if (!std::isdigit((unsigned char)raw())) fail("expected an integer");
    Int v = 0;
    while (std::isdigit((unsigned char)raw())) v = v * 10 + (raw() - '0'), ++pos_;
    return v;
  }

  Rational rational() {
    Int num = integer();
    if (raw() == '/' && std::isdigit((unsigned char)raw(1))) {
      ++pos_;
      Int den = integer();
      return Rational(num) / Rational(den);
    }
    return Rational(num);
  }

  FieldExpr expr() {
    FieldExpr acc = term();
    for (;;) {
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else return acc;
    }
  }

  FieldExpr term() {
    FieldExpr acc = unary();
    while (eat('*')) {
      FieldExpr rhs = unary();
      if (is_scalar(rhs)) acc = acc * scalar_value(rhs);
      else if (is_scalar(acc)) acc = rhs * scalar_value(acc);
      else fail("'*' is scalar multiplication; one operand must be a constant");
    }
    return acc;
  }

  static bool is_scalar(const FieldExpr& e) {
    for (const auto& [m, c] : e.terms())
      if (!m.empty()) return false;
    return true;
  }
  static Rational scalar_value(const FieldExpr& e) {
    return e.is_zero() ? Rational(0) : e.terms().begin()->second;
  }

  FieldExpr unary() {
    if (eat('-')) return unary() * Rational(-1);
    return primary();
  }

  FieldExpr primary() {
    char c = peek();
    if (std::isdigit((unsigned char)c)) return FieldExpr::unit() * rational();
    if (c == '(') {
      ++pos_;
      FieldExpr e = expr();
      expect(')');
      return e;
    }
    if (std::isalpha((unsigned char)c)) return keyword_or_atom();
    fail("expected an expression");
  }

  FieldExpr keyword_or_atom() {
    size_t start = pos_;
    std::string name;
    while (std::isalpha((unsigned char)raw()) || raw() == '_' ||
           std::isdigit((unsigned char)raw()))
      name.push_back(raw()), ++pos_;

    if (name == "d" && (raw() == '(' || raw() == '^')) {
      unsigned k = 1;
      if (raw() == '^') {
        ++pos_;
        Int kk = integer();
        if (kk < 0 || kk > 64) fail("derivative order out of range");
        k = (unsigned)int(kk);
      }
      expect('(');
      FieldExpr body = expr();
      expect(')');
      return derivative(body, k);
    }
    if (name == "NO" && peek() == '(') {
      ++pos_;
      std::vector<FieldExpr> fs;
      fs.push_back(expr());
      while (eat(',')) fs.push_back(expr());
      expect(')');
      return nested_wick(fs);
    }

    // Atom: absorb ', a sign glued to a bracket, and a bracketed index list.
    if (raw() == '\'') name.push_back('\''), ++pos_;
    if ((raw() == '+' || raw() == '-') && raw(1) == '[') name.push_back(raw()), ++pos_;
    std::vector<int> idx;
    bool has_idx = false;
    if (raw() == '[') {
      has_idx = true;
      ++pos_;
      for (;;) {
        Int v = integer();
        if (v < 0 || v > 1000000) fail("index out of range");
        idx.push_back(int(v));
        if (eat(',')) continue;
        expect(']');
        break;
      }
    }
    return atom(name, idx, has_idx, start);
  }

  FieldExpr atom(const std::string& name, const std::vector<int>& idx,
                 bool has_idx, size_t start) {
    Family fam;
    bool direct = true;
    if (name == "beta") fam = Family::Beta;
    else if (name == "gamma") fam = Family::Gamma;
    else if (name == "b") fam = Family::B;
    else if (name == "c") fam = Family::C;
    else direct = false;

    if (direct) {
      if (!has_idx || idx.size() != 2) {
        pos_ = start;
        fail("generator '" + name + "' needs two indices, as in " + name + "[1,1]");
      }
      bool fermionic = (fam == Family::B || fam == Family::C);
      if (fermionic ? !env_.allow_fermionic : !env_.allow_bosonic) {
        pos_ = start;
        fail("generator family '" + name + "' is not part of this model");
      }
      if (idx[0] < 1 || idx[0] > env_.rank || idx[1] < 1 || idx[1] > env_.rank) {
        pos_ = start;
        fail("index out of rank in " + name + "[" + std::to_string(idx[0]) +
             "," + std::to_string(idx[1]) + "] (rank " +
             std::to_string(env_.rank) + ")");
      }
      return FieldExpr::generator({fam, idx[0], idx[1]});
    }

    std::string full = name;
    if (has_idx) {
      full += '[';
      for (size_t i = 0; i < idx.size(); ++i) {
        if (i) full += ',';
        full += std::to_string(idx[i]);
      }
      full += ']';
    }
    if (!env_.resolve) {
      pos_ = start;
      fail("unknown atom '" + full + "' (no named-field resolver)");
    }
    try {
      return env_.resolve(full);
    } catch (const error& e) {
      pos_ = start;
      fail("unknown atom '" + full + "': " + e.what());
    }
  }
};

}  // namespace parse_detail

/// Parse an expression over the given environment; throws freeva::error with
/// a position on malformed input, unknown atoms, or out-of-rank indices.
inline FieldExpr parse_expr(std::string_view text, const ParseEnv& env) {
  return parse_detail::Parser(text, env).run();
}

}  // namespace freeva
