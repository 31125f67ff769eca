#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dds/expr.hpp"
#include "dds/network.hpp"

// Parser for the ".dds" network definition format. Line-oriented:
//
//   file        = { line } ;
//   line        = [ statement ] [ "#" comment ] EOL ;
//   statement   = domain-decl | rule-decl | table-row ;
//   domain-decl = "domain" IDENT SINT ".." SINT ;
//   rule-decl   = "rule" IDENT "=" expr ;
//   table-row   = SINT { SINT } "->" SINT { SINT } ;
//   expr        = or ;
//   or          = and { "or" and } ;
//   and         = cmp { "and" cmp } ;
//   cmp         = sum { ("<"|"<="|">"|">="|"=="|"!=") sum } ;
//   sum         = term { ("+"|"-") term } ;
//   term        = unary { "*" unary } ;
//   unary       = ("not"|"-") unary | primary ;
//   primary     = INT | IDENT | "(" expr ")"
//               | "min" "(" expr "," expr ")"
//               | "max" "(" expr "," expr ")"
//               | "if" "(" expr "," expr "," expr ")" ;
//   SINT        = [ "-" ] INT ;
//
// Declarations may appear in any order but must precede all rules and
// rows; a file carries either one rule per coordinate or a complete
// state table, never a mix.

namespace dds {

struct NetworkSpecText {
  std::vector<std::string> names;
  std::vector<int> lo, hi;
  // rule form: one expression per coordinate
  std::vector<std::optional<Expr>> rules;
  bool has_rules = false;
  // table form: (state coords, image coords, source line)
  struct Row {
    std::vector<int> state, image;
    int line;
  };
  std::vector<Row> rows;

  IntervalDomain domain() const { return IntervalDomain(lo, hi); }
};

namespace parse_detail {

enum class Tok { end, newline, ident, number, sym };

struct Token {
  Tok kind;
  std::string text;
  std::int64_t num = 0;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : s_(text) {}

  Token next() {
    skip_space();
    const int line = line_, col = col_;
    if (pos_ >= s_.size()) return {Tok::end, "", 0, line, col};
    char c = s_[pos_];
    if (c == '\n') {
      advance();
      return {Tok::newline, "\n", 0, line, col};
    }
    if (c == '#') {
      while (pos_ < s_.size() && s_[pos_] != '\n') advance();
      return next();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string t;
      while (pos_ < s_.size() &&
             std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        t += s_[pos_];
        advance();
      }
      std::int64_t v = 0;
      for (char d : t) {
        if (__builtin_mul_overflow(v, std::int64_t{10}, &v) ||
            __builtin_add_overflow(v, std::int64_t{d - '0'}, &v))
          throw error(errc::parse_error,
                      "integer literal out of range at line " +
                          std::to_string(line) + ", col " + std::to_string(col),
                      line, col);
      }
      return {Tok::number, t, v, line, col};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string t;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
              s_[pos_] == '_')) {
        t += s_[pos_];
        advance();
      }
      return {Tok::ident, t, 0, line, col};
    }
    // multi-char symbols first
    for (const char* sym : {"->", "..", "<=", ">=", "==", "!="}) {
      if (s_.compare(pos_, 2, sym) == 0) {
        advance();
        advance();
        return {Tok::sym, sym, 0, line, col};
      }
    }
    if (std::string("+-*()<>=,").find(c) != std::string::npos) {
      advance();
      return {Tok::sym, std::string(1, c), 0, line, col};
    }
    throw error(errc::parse_error,
                "unexpected character '" + std::string(1, c) + "' at line " +
                    std::to_string(line) + ", col " + std::to_string(col),
                line, col);
  }

 private:
  void skip_space() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' ||
                                s_[pos_] == '\r')) {
      advance();
    }
  }
  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) { bump(); }

  NetworkSpecText parse_file() {
    NetworkSpecText spec;
    std::map<std::string, int> index;
    bool saw_body = false;
    while (cur_.kind != Tok::end) {
      if (cur_.kind == Tok::newline) {
        bump();
        continue;
      }
      if (cur_.kind == Tok::ident && cur_.text == "domain") {
        if (saw_body)
          err("domain declarations must precede rules and table rows");
        bump();
        Token name = expect(Tok::ident, "variable name");
        if (index.count(name.text))
          err_at(name, "duplicate domain declaration '" + name.text + "'");
        const int lo = signed_int("lower bound");
        expect_sym("..");
        const int hi = signed_int("upper bound");
        index[name.text] = static_cast<int>(spec.names.size());
        spec.names.push_back(name.text);
        spec.lo.push_back(lo);
        spec.hi.push_back(hi);
        end_of_line();
        continue;
      }
      if (cur_.kind == Tok::ident && cur_.text == "rule") {
        saw_body = true;
        if (!spec.rows.empty()) err("cannot mix rules and table rows");
        bump();
        Token name = expect(Tok::ident, "variable name");
        auto it = index.find(name.text);
        if (it == index.end())
          err_at(name, "rule for undeclared variable '" + name.text + "'");
        expect_sym("=");
        Expr e = parse_expr(index, 0);
        end_of_line();
        spec.rules.resize(spec.names.size());
        if (spec.rules[it->second].has_value())
          err_at(name, "duplicate rule for '" + name.text + "'");
        spec.rules[it->second] = std::move(e);
        spec.has_rules = true;
        continue;
      }
      if (cur_.kind == Tok::number || (cur_.kind == Tok::sym && cur_.text == "-")) {
        saw_body = true;
        if (spec.has_rules) err("cannot mix rules and table rows");
        if (spec.names.empty()) err("table row before any domain declaration");
        NetworkSpecText::Row row;
        row.line = cur_.line;
        while (!(cur_.kind == Tok::sym && cur_.text == "->"))
          row.state.push_back(signed_int("state coordinate"));
        expect_sym("->");
        while (cur_.kind == Tok::number ||
               (cur_.kind == Tok::sym && cur_.text == "-"))
          row.image.push_back(signed_int("image coordinate"));
        end_of_line();
        const auto n = spec.names.size();
        if (row.state.size() != n || row.image.size() != n)
          throw error(errc::parse_error,
                      "table row at line " + std::to_string(row.line) +
                          " must have " + std::to_string(n) +
                          " coordinates on each side",
                      row.line, 1);
        spec.rows.push_back(std::move(row));
        continue;
      }
      err("expected 'domain', 'rule' or a table row");
    }
    if (spec.names.empty()) err("no domain declarations");
    if (spec.has_rules) {
      spec.rules.resize(spec.names.size());
      for (std::size_t i = 0; i < spec.names.size(); ++i)
        if (!spec.rules[i].has_value())
          err("missing rule for '" + spec.names[i] + "'");
    } else if (spec.rows.empty()) {
      err("no rules and no table rows");
    }
    return spec;
  }

 private:
  static constexpr int max_depth = 64;

  void bump() { cur_ = lex_.next(); }

  [[noreturn]] void err(const std::string& msg) { err_at(cur_, msg); }
  [[noreturn]] void err_at(const Token& t, const std::string& msg) {
    throw error(errc::parse_error,
                msg + " at line " + std::to_string(t.line) + ", col " +
                    std::to_string(t.col),
                t.line, t.col);
  }

  Token expect(Tok kind, const std::string& what) {
    if (cur_.kind != kind) err("expected " + what);
    Token t = cur_;
    bump();
    return t;
  }
  void expect_sym(const std::string& s) {
    if (cur_.kind != Tok::sym || cur_.text != s) err("expected '" + s + "'");
    bump();
  }
  void end_of_line() {
    if (cur_.kind == Tok::newline) {
      bump();
      return;
    }
    if (cur_.kind != Tok::end) err("trailing input");
  }

  int signed_int(const std::string& what) {
    bool negate = false;
    if (cur_.kind == Tok::sym && cur_.text == "-") {
      negate = true;
      bump();
    }
    Token t = expect(Tok::number, what);
    std::int64_t v = negate ? -t.num : t.num;
    if (v < INT32_MIN || v > INT32_MAX) err_at(t, what + " out of range");
    return static_cast<int>(v);
  }

  Expr parse_expr(const std::map<std::string, int>& index, int depth) {
    return parse_or(index, depth);
  }

  Expr parse_or(const std::map<std::string, int>& index, int depth) {
    check_depth(depth);
    Expr lhs = parse_and(index, depth + 1);
    while (cur_.kind == Tok::ident && cur_.text == "or") {
      bump();
      Expr rhs = parse_and(index, depth + 1);
      lhs = Expr::make(Expr::Op::log_or, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  Expr parse_and(const std::map<std::string, int>& index, int depth) {
    check_depth(depth);
    Expr lhs = parse_cmp(index, depth + 1);
    while (cur_.kind == Tok::ident && cur_.text == "and") {
      bump();
      Expr rhs = parse_cmp(index, depth + 1);
      lhs = Expr::make(Expr::Op::log_and, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  Expr parse_cmp(const std::map<std::string, int>& index, int depth) {
    check_depth(depth);
    Expr lhs = parse_sum(index, depth + 1);
    for (;;) {
      Expr::Op op;
      if (cur_.kind != Tok::sym) return lhs;
      if (cur_.text == "<") op = Expr::Op::lt;
      else if (cur_.text == "<=") op = Expr::Op::le;
      else if (cur_.text == ">") op = Expr::Op::gt;
      else if (cur_.text == ">=") op = Expr::Op::ge;
      else if (cur_.text == "==") op = Expr::Op::eq;
      else if (cur_.text == "!=") op = Expr::Op::ne;
      else return lhs;
      bump();
      Expr rhs = parse_sum(index, depth + 1);
      lhs = Expr::make(op, {std::move(lhs), std::move(rhs)});
    }
  }

  Expr parse_sum(const std::map<std::string, int>& index, int depth) {
    check_depth(depth);
    Expr lhs = parse_term(index, depth + 1);
    for (;;) {
      if (cur_.kind == Tok::sym && cur_.text == "+") {
        bump();
        lhs = Expr::make(Expr::Op::add,
                         {std::move(lhs), parse_term(index, depth + 1)});
      } else if (cur_.kind == Tok::sym && cur_.text == "-") {
        bump();
        lhs = Expr::make(Expr::Op::sub,
                         {std::move(lhs), parse_term(index, depth + 1)});
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term(const std::map<std::string, int>& index, int depth) {
    check_depth(depth);
    Expr lhs = parse_unary(index, depth + 1);
    while (cur_.kind == Tok::sym && cur_.text == "*") {
      bump();
      lhs = Expr::make(Expr::Op::mul,
                       {std::move(lhs), parse_unary(index, depth + 1)});
    }
    return lhs;
  }

  Expr parse_unary(const std::map<std::string, int>& index, int depth) {
    check_depth(depth);
    if (cur_.kind == Tok::ident && cur_.text == "not") {
      bump();
      return Expr::make(Expr::Op::log_not, {parse_unary(index, depth + 1)});
    }
    if (cur_.kind == Tok::sym && cur_.text == "-") {
      bump();
      return Expr::make(Expr::Op::neg, {parse_unary(index, depth + 1)});
    }
    return parse_primary(index, depth + 1);
  }

  Expr parse_primary(const std::map<std::string, int>& index, int depth) {
    check_depth(depth);
    if (cur_.kind == Tok::number) {
      Expr e = Expr::literal(cur_.num);
      bump();
      return e;
    }
    if (cur_.kind == Tok::sym && cur_.text == "(") {
      bump();
      Expr e = parse_expr(index, depth + 1);
      expect_sym(")");
      return e;
    }
    if (cur_.kind == Tok::ident) {
      const std::string name = cur_.text;
      if (name == "min" || name == "max" || name == "if") {
        bump();
        expect_sym("(");
        std::vector<Expr> kids;
        kids.push_back(parse_expr(index, depth + 1));
        expect_sym(",");
        kids.push_back(parse_expr(index, depth + 1));
        Expr::Op op = name == "min" ? Expr::Op::min_fn : Expr::Op::max_fn;
        if (name == "if") {
          expect_sym(",");
          kids.push_back(parse_expr(index, depth + 1));
          op = Expr::Op::if_fn;
        }
        expect_sym(")");
        return Expr::make(op, std::move(kids));
      }
      auto it = index.find(name);
      if (it == index.end()) err("undeclared variable '" + name + "'");
      bump();
      return Expr::variable(it->second);
    }
    err("expected expression");
  }

  void check_depth(int depth) {
    if (depth > max_depth) err("expression too deep");
  }

  Lexer lex_;
  Token cur_{Tok::end, "", 0, 1, 1};
};

}  // namespace parse_detail

inline NetworkSpecText parse(const std::string& text) {
  return parse_detail::Parser(text).parse_file();
}

// Tabulates the parsed spec into a Network. With clamp off, a rule value
// outside X_i aborts naming the offending state; with clamp on the value
// is clamped into X_i and the network is marked as clamped.
inline Network elaborate(const NetworkSpecText& spec, bool clamp = false) {
  IntervalDomain domain = spec.domain();
  if (domain.cardinality() > Network::max_states)
    fail(errc::network_too_large,
         "|X| = " + std::to_string(domain.cardinality()));
  std::vector<std::uint32_t> images(domain.cardinality());
  if (spec.has_rules) {
    State img(domain.n());
    for (const State& x : enumerate_states(domain)) {
      for (int i = 0; i < domain.n(); ++i) {
        std::int64_t v = eval_expr(*spec.rules[i], x);
        if (v < domain.lower(i) || v > domain.upper(i)) {
          if (!clamp)
            fail(errc::range_violation,
                 "rule for " + spec.names[i] + " yields " + std::to_string(v) +
                     " outside " + std::to_string(domain.lower(i)) + ".." +
                     std::to_string(domain.upper(i)) + " at state " +
                     format_state(x));
          v = std::clamp<std::int64_t>(v, domain.lower(i), domain.upper(i));
        }
        img[i] = static_cast<int>(v);
      }
      images[domain.rank(x)] = static_cast<std::uint32_t>(domain.rank(img));
    }
    return Network(domain, std::move(images), clamp);
  }
  std::vector<char> seen(domain.cardinality(), 0);
  for (const auto& row : spec.rows) {
    if (!domain.contains(row.state))
      throw error(errc::parse_error,
                  "table state " + format_state(row.state) +
                      " outside the domain at line " + std::to_string(row.line),
                  row.line, 1);
    if (!domain.contains(row.image))
      throw error(errc::parse_error,
                  "table image " + format_state(row.image) +
                      " outside the domain at line " + std::to_string(row.line),
                  row.line, 1);
    const std::uint64_t r = domain.rank(row.state);
    if (seen[r])
      throw error(errc::parse_error,
                  "duplicate table row for state " + format_state(row.state) +
                      " at line " + std::to_string(row.line),
                  row.line, 1);
    seen[r] = 1;
    images[r] = static_cast<std::uint32_t>(domain.rank(row.image));
  }
  int last_line = 1;
  for (const auto& row : spec.rows) last_line = std::max(last_line, row.line);
  for (std::uint64_t r = 0; r < domain.cardinality(); ++r)
    if (!seen[r])
      throw error(errc::parse_error,
                  "table misses state " + format_state(domain.unrank(r)) +
                      " (table ends at line " + std::to_string(last_line) + ")",
                  last_line, 1);
  return Network(domain, std::move(images));
}

inline Network parse_network(const std::string& text, bool clamp = false) {
  return elaborate(parse(text), clamp);
}

}  // namespace dds
