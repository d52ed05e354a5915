#pragma once

// Integer expression language for writing predicates over (x, y, a, b).
//
//   expr     := or
//   or       := xor  { ("or" | "||") xor }
//   xor      := and  { "xor" and }
//   and      := not  { ("and" | "&&") not }
//   not      := ("not" | "!") not | equality
//   equality := relation { ("==" | "!=") relation }
//   relation := sum { ("<" | "<=" | ">" | ">=") sum }
//   sum      := product { ("+" | "-") product }
//   product  := unary { ("*" | "%") unary }
//   unary    := "-" unary | primary
//   primary  := integer | x | y | a | b | "(" expr ")"
//
// Values are 64-bit integers. Comparisons and logical operators yield 0 or 1;
// any nonzero value is true. `%` is the mathematical modulus (result in
// [0, |divisor|)).

#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "nlgame/error.hpp"

namespace nlgame::dsl {

enum class Variable { kX = 0, kY = 1, kA = 2, kB = 3 };

enum class Op { kOr, kXor, kAnd, kNot, kEq, kNe, kLt, kLe, kGt, kGe, kAdd, kSub, kMul, kMod, kNeg };

/// Abstract syntax tree node.
struct Expr {
  enum class Kind { kLiteral, kVariable, kUnary, kBinary } kind;
  std::int64_t literal = 0;
  Variable variable = Variable::kX;
  Op op = Op::kAdd;
  std::unique_ptr<Expr> lhs;
  std::unique_ptr<Expr> rhs;
  std::size_t column = 0;  // 1-based source position of the node's operator or token
};

using Bindings = std::array<std::int64_t, 4>;  // values of x, y, a, b

namespace detail {

enum class Tok { kInt, kIdent, kSym, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::int64_t value = 0;
  std::size_t column = 0;
};

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t col = i + 1;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::int64_t v = 0;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
        if (v > (INT64_MAX - 9) / 10) throw ParseError("integer literal too large", 0, col);
        v = v * 10 + (src[i] - '0');
        ++i;
      }
      out.push_back({Tok::kInt, std::string(src.substr(col - 1, i - col + 1)), v, col});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::kIdent, std::string(src.substr(i, j - i)), 0, col});
      i = j;
      continue;
    }
    static constexpr std::array<std::string_view, 6> kTwoChar = {"==", "!=", "<=", ">=", "&&", "||"};
    bool matched = false;
    for (auto op : kTwoChar)
      if (src.substr(i, 2) == op) {
        out.push_back({Tok::kSym, std::string(op), 0, col});
        i += 2;
        matched = true;
        break;
      }
    if (matched) continue;
    if (std::string_view("+-*%()<>!").find(c) != std::string_view::npos) {
      out.push_back({Tok::kSym, std::string(1, c), 0, col});
      ++i;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", 0, col);
  }
  out.push_back({Tok::kEnd, "", 0, src.size() + 1});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  std::unique_ptr<Expr> parse() {
    auto e = parse_or();
    if (peek().kind != Tok::kEnd) throw ParseError("unexpected token '" + peek().text + "'", 0, peek().column);
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  bool accept(std::string_view sym_or_word) {
    const Token& t = peek();
    if ((t.kind == Tok::kSym || t.kind == Tok::kIdent) && t.text == sym_or_word) {
      ++pos_;
      return true;
    }
    return false;
  }

  static std::unique_ptr<Expr> binary(Op op, std::unique_ptr<Expr> l, std::unique_ptr<Expr> r, std::size_t col) {
    auto e = std::make_unique<Expr>();
    e->kind = Expr::Kind::kBinary;
    e->op = op;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    e->column = col;
    return e;
  }
  static std::unique_ptr<Expr> unary(Op op, std::unique_ptr<Expr> operand, std::size_t col) {
    auto e = std::make_unique<Expr>();
    e->kind = Expr::Kind::kUnary;
    e->op = op;
    e->lhs = std::move(operand);
    e->column = col;
    return e;
  }

  std::unique_ptr<Expr> parse_or() {
    auto l = parse_xor();
    for (;;) {
      const std::size_t col = peek().column;
      if (accept("or") || accept("||"))
        l = binary(Op::kOr, std::move(l), parse_xor(), col);
      else
        return l;
    }
  }
  std::unique_ptr<Expr> parse_xor() {
    auto l = parse_and();
    for (;;) {
      const std::size_t col = peek().column;
      if (accept("xor"))
        l = binary(Op::kXor, std::move(l), parse_and(), col);
      else
        return l;
    }
  }
  std::unique_ptr<Expr> parse_and() {
    auto l = parse_not();
    for (;;) {
      const std::size_t col = peek().column;
      if (accept("and") || accept("&&"))
        l = binary(Op::kAnd, std::move(l), parse_not(), col);
      else
        return l;
    }
  }
  std::unique_ptr<Expr> parse_not() {
    const std::size_t col = peek().column;
    if (accept("not") || accept("!")) return unary(Op::kNot, parse_not(), col);
    return parse_equality();
  }
  std::unique_ptr<Expr> parse_equality() {
    auto l = parse_relation();
    for (;;) {
      const std::size_t col = peek().column;
      if (accept("=="))
        l = binary(Op::kEq, std::move(l), parse_relation(), col);
      else if (accept("!="))
        l = binary(Op::kNe, std::move(l), parse_relation(), col);
      else
        return l;
    }
  }
  std::unique_ptr<Expr> parse_relation() {
    auto l = parse_sum();
    for (;;) {
      const std::size_t col = peek().column;
      if (accept("<="))
        l = binary(Op::kLe, std::move(l), parse_sum(), col);
      else if (accept(">="))
        l = binary(Op::kGe, std::move(l), parse_sum(), col);
      else if (accept("<"))
        l = binary(Op::kLt, std::move(l), parse_sum(), col);
      else if (accept(">"))
        l = binary(Op::kGt, std::move(l), parse_sum(), col);
      else
        return l;
    }
  }
  std::unique_ptr<Expr> parse_sum() {
    auto l = parse_product();
    for (;;) {
      const std::size_t col = peek().column;
      if (accept("+"))
        l = binary(Op::kAdd, std::move(l), parse_product(), col);
      else if (accept("-"))
        l = binary(Op::kSub, std::move(l), parse_product(), col);
      else
        return l;
    }
  }
  std::unique_ptr<Expr> parse_product() {
    auto l = parse_unary();
    for (;;) {
      const std::size_t col = peek().column;
      if (accept("*"))
        l = binary(Op::kMul, std::move(l), parse_unary(), col);
      else if (accept("%"))
        l = binary(Op::kMod, std::move(l), parse_unary(), col);
      else
        return l;
    }
  }
  std::unique_ptr<Expr> parse_unary() {
    const std::size_t col = peek().column;
    if (accept("-")) return unary(Op::kNeg, parse_unary(), col);
    return parse_primary();
  }
  std::unique_ptr<Expr> parse_primary() {
    const Token t = peek();
    if (t.kind == Tok::kInt) {
      ++pos_;
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::kLiteral;
      e->literal = t.value;
      e->column = t.column;
      return e;
    }
    if (t.kind == Tok::kIdent) {
      static constexpr std::array<std::string_view, 4> kNames = {"x", "y", "a", "b"};
      for (std::size_t i = 0; i < kNames.size(); ++i)
        if (t.text == kNames[i]) {
          ++pos_;
          auto e = std::make_unique<Expr>();
          e->kind = Expr::Kind::kVariable;
          e->variable = static_cast<Variable>(i);
          e->column = t.column;
          return e;
        }
      throw ParseError("unknown identifier " + t.text, 0, t.column);
    }
    if (accept("(")) {
      auto e = parse_or();
      if (!accept(")")) throw ParseError("expected ')'", 0, peek().column);
      return e;
    }
    if (t.kind == Tok::kEnd) throw ParseError("unexpected end of expression", 0, t.column);
    throw ParseError("unexpected token '" + t.text + "'", 0, t.column);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

inline std::int64_t truth(bool b) { return b ? 1 : 0; }

}  // namespace detail

/// Parses an expression; throws ParseError with the 1-based column.
inline std::unique_ptr<Expr> parse(std::string_view src) { return detail::Parser(src).parse(); }

/// Evaluates an AST under the given variable values.
inline std::int64_t evaluate(const Expr& e, const Bindings& env) {
  using detail::truth;
  switch (e.kind) {
    case Expr::Kind::kLiteral:
      return e.literal;
    case Expr::Kind::kVariable:
      return env[static_cast<std::size_t>(e.variable)];
    case Expr::Kind::kUnary: {
      const std::int64_t v = evaluate(*e.lhs, env);
      return e.op == Op::kNot ? truth(v == 0) : -v;
    }
    case Expr::Kind::kBinary:
      break;
  }
  // Short-circuit forms first.
  if (e.op == Op::kOr) return truth(evaluate(*e.lhs, env) != 0 || evaluate(*e.rhs, env) != 0);
  if (e.op == Op::kAnd) return truth(evaluate(*e.lhs, env) != 0 && evaluate(*e.rhs, env) != 0);
  const std::int64_t l = evaluate(*e.lhs, env);
  const std::int64_t r = evaluate(*e.rhs, env);
  switch (e.op) {
    case Op::kXor: return truth((l != 0) != (r != 0));
    case Op::kEq: return truth(l == r);
    case Op::kNe: return truth(l != r);
    case Op::kLt: return truth(l < r);
    case Op::kLe: return truth(l <= r);
    case Op::kGt: return truth(l > r);
    case Op::kGe: return truth(l >= r);
    case Op::kAdd: return l + r;
    case Op::kSub: return l - r;
    case Op::kMul: return l * r;
    case Op::kMod: {
      if (r == 0) throw ParseError("modulus by zero", 0, e.column);
      const std::int64_t m = r < 0 ? -r : r;
      const std::int64_t q = l % m;
      return q < 0 ? q + m : q;
    }
    default: break;
  }
  throw Error("predicate expression: unknown operator");
}

/// Evaluates `expr` at every quadruple and returns the 0/1 table, row-major in
/// (x, y, a, b).
inline std::vector<double> predicate_table(std::string_view expr, std::size_t nx, std::size_t ny, std::size_t na,
                                           std::size_t nb) {
  const auto ast = parse(expr);
  std::vector<double> table;
  table.reserve(nx * ny * na * nb);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < nb; ++b) {
          const Bindings env = {static_cast<std::int64_t>(x), static_cast<std::int64_t>(y),
                                static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)};
          table.push_back(evaluate(*ast, env) != 0 ? 1.0 : 0.0);
        }
  return table;
}

}  // namespace nlgame::dsl
