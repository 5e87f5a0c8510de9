#pragma once

// Expressions in the single real variable `u`.
//
// Grammar (lowest to highest precedence):
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?            right associative
//   primary := number | 'u' | func '(' expr ')' | '(' expr ')'
//   func    := sin | cos | exp | log | sqrt
//
// A leading minus applied directly to a constant folds into a negative
// constant, so "-2" is Constant(-2) while "-2^2" is -(2^2).

#include <charconv>
#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>

#include "surf4/errors.hpp"

namespace surf4 {

enum class UnaryOp { neg, sin, cos, exp, log, sqrt };
enum class BinaryOp { add, sub, mul, div, pow };

struct ExprNode;

/// Immutable, shareable expression tree.
class Expr {
 public:
  static Expr constant(double value);
  static Expr variable();
  static Expr unary(UnaryOp op, Expr child);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);

  const ExprNode& node() const noexcept { return *node_; }

  template <class T>
  const T* as() const noexcept;

  bool is_constant(double value) const noexcept;
  bool is_variable() const noexcept;

 private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct ConstantNode {
  double value;
};
struct VariableNode {};
struct UnaryNode {
  UnaryOp op;
  Expr child;
};
struct BinaryNode {
  BinaryOp op;
  Expr lhs;
  Expr rhs;
};

struct ExprNode {
  std::variant<ConstantNode, VariableNode, UnaryNode, BinaryNode> data;
};

inline Expr Expr::constant(double value) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{ConstantNode{value}}));
}
inline Expr Expr::variable() {
  return Expr(std::make_shared<const ExprNode>(ExprNode{VariableNode{}}));
}
inline Expr Expr::unary(UnaryOp op, Expr child) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{UnaryNode{op, std::move(child)}}));
}
inline Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{BinaryNode{op, std::move(lhs), std::move(rhs)}}));
}

template <class T>
const T* Expr::as() const noexcept {
  return std::get_if<T>(&node_->data);
}

inline bool Expr::is_constant(double value) const noexcept {
  const auto* c = as<ConstantNode>();
  return c != nullptr && c->value == value;
}

inline bool Expr::is_variable() const noexcept { return as<VariableNode>() != nullptr; }

/// Structural equality.
inline bool operator==(const Expr& a, const Expr& b) {
  if (&a.node() == &b.node()) return true;
  if (a.node().data.index() != b.node().data.index()) return false;
  if (const auto* ca = a.as<ConstantNode>()) return ca->value == b.as<ConstantNode>()->value;
  if (a.is_variable()) return true;
  if (const auto* ua = a.as<UnaryNode>()) {
    const auto* ub = b.as<UnaryNode>();
    return ua->op == ub->op && ua->child == ub->child;
  }
  const auto* ba = a.as<BinaryNode>();
  const auto* bb = b.as<BinaryNode>();
  return ba->op == bb->op && ba->lhs == bb->lhs && ba->rhs == bb->rhs;
}

inline std::string_view op_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::neg: return "-";
    case UnaryOp::sin: return "sin";
    case UnaryOp::cos: return "cos";
    case UnaryOp::exp: return "exp";
    case UnaryOp::log: return "log";
    case UnaryOp::sqrt: return "sqrt";
  }
  return "?";
}

inline std::string_view op_name(BinaryOp op) {
  switch (op) {
    case BinaryOp::add: return "+";
    case BinaryOp::sub: return "-";
    case BinaryOp::mul: return "*";
    case BinaryOp::div: return "/";
    case BinaryOp::pow: return "^";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Printing

namespace detail {

// Binding strength used by the printer; mirrors the parser.
enum Prec : int { kAdd = 1, kMul = 2, kNeg = 3, kPow = 4, kAtom = 5 };

inline int precedence(const Expr& e) {
  if (const auto* c = e.as<ConstantNode>()) return std::signbit(c->value) ? kNeg : kAtom;
  if (e.is_variable()) return kAtom;
  if (const auto* un = e.as<UnaryNode>()) return un->op == UnaryOp::neg ? kNeg : kAtom;
  switch (e.as<BinaryNode>()->op) {
    case BinaryOp::add:
    case BinaryOp::sub: return kAdd;
    case BinaryOp::mul:
    case BinaryOp::div: return kMul;
    case BinaryOp::pow: return kPow;
  }
  return kAtom;
}

inline void format_number(double v, std::string& out) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

inline void print_into(const Expr& e, std::string& out);

inline void print_child(const Expr& e, int min_prec, std::string& out) {
  if (precedence(e) < min_prec) {
    out += '(';
    print_into(e, out);
    out += ')';
  } else {
    print_into(e, out);
  }
}

inline void print_into(const Expr& e, std::string& out) {
  if (const auto* c = e.as<ConstantNode>()) {
    format_number(c->value, out);
  } else if (e.is_variable()) {
    out += 'u';
  } else if (const auto* un = e.as<UnaryNode>()) {
    if (un->op == UnaryOp::neg) {
      out += '-';
      print_child(un->child, kNeg, out);
    } else {
      out += op_name(un->op);
      out += '(';
      print_into(un->child, out);
      out += ')';
    }
  } else {
    const auto& bn = *e.as<BinaryNode>();
    switch (bn.op) {
      case BinaryOp::add:
      case BinaryOp::sub:
        print_child(bn.lhs, kAdd, out);
        out += bn.op == BinaryOp::add ? " + " : " - ";
        print_child(bn.rhs, kAdd + 1, out);
        break;
      case BinaryOp::mul:
      case BinaryOp::div:
        print_child(bn.lhs, kMul, out);
        out += op_name(bn.op);
        print_child(bn.rhs, kMul + 1, out);
        break;
      case BinaryOp::pow:
        print_child(bn.lhs, kAtom, out);
        out += '^';
        print_child(bn.rhs, kNeg, out);
        break;
    }
  }
}

}  // namespace detail

/// Prints with minimal parentheses; the result parses back to the same tree
/// for every tree produced by `parse`.
inline std::string to_string(const Expr& e) {
  std::string out;
  detail::print_into(e, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr run() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("empty input", 0);
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(BinaryOp::add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = Expr::binary(BinaryOp::sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(BinaryOp::mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = Expr::binary(BinaryOp::div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) {
      Expr child = parse_unary();
      if (const auto* c = child.as<ConstantNode>()) return Expr::constant(-c->value);
      return Expr::unary(UnaryOp::neg, child);
    }
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (accept('^')) return Expr::binary(BinaryOp::pow, base, parse_unary());
    return base;
  }

  Expr parse_primary() {
    skip_ws();
    if (pos_ == text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if ((c >= '0' && c <= '9') || c == '.') return parse_number();
    if (is_ident_char(c)) return parse_identifier();
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  static bool is_ident_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  Expr parse_number() {
    const std::size_t start = pos_;
    std::size_t p = pos_;
    std::size_t digits = 0;
    while (p < text_.size() && is_digit(text_[p])) ++p, ++digits;
    if (p < text_.size() && text_[p] == '.') {
      ++p;
      while (p < text_.size() && is_digit(text_[p])) ++p, ++digits;
    }
    if (digits == 0) fail("malformed number");
    if (p < text_.size() && (text_[p] == 'e' || text_[p] == 'E')) {
      std::size_t q = p + 1;
      if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) ++q;
      if (q >= text_.size() || !is_digit(text_[q])) {
        pos_ = q;
        fail("malformed exponent");
      }
      while (q < text_.size() && is_digit(text_[q])) ++q;
      p = q;
    }
    double value = 0.0;
    auto res = std::from_chars(text_.data() + start, text_.data() + p, value);
    if (res.ec != std::errc{} || res.ptr != text_.data() + p) fail("malformed number");
    pos_ = p;
    return Expr::constant(value);
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (is_ident_char(text_[pos_]) || is_digit(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "u") return Expr::variable();
    UnaryOp op;
    if (name == "sin") {
      op = UnaryOp::sin;
    } else if (name == "cos") {
      op = UnaryOp::cos;
    } else if (name == "exp") {
      op = UnaryOp::exp;
    } else if (name == "log") {
      op = UnaryOp::log;
    } else if (name == "sqrt") {
      op = UnaryOp::sqrt;
    } else {
      throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    }
    if (!accept('(')) fail("expected '(' after " + std::string(name));
    Expr arg = parse_expr();
    if (!accept(')')) fail("expected ')'");
    return Expr::unary(op, arg);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `text`; throws ParseError carrying the byte offset on failure.
inline Expr parse(std::string_view text) { return detail::Parser(text).run(); }

// ---------------------------------------------------------------------------
// Evaluation

namespace detail {

inline bool is_integer(double x) { return std::isfinite(x) && std::floor(x) == x; }

inline double checked(double v, const Expr& e, const char* what) {
  if (!std::isfinite(v)) throw DomainError(what, to_string(e));
  return v;
}

}  // namespace detail

/// Evaluates `e` at `u`. Any non-finite intermediate raises DomainError
/// naming the offending subtree.
inline double eval(const Expr& e, double u) {
  if (const auto* c = e.as<ConstantNode>()) return c->value;
  if (e.is_variable()) return u;
  if (const auto* un = e.as<UnaryNode>()) {
    const double x = eval(un->child, u);
    switch (un->op) {
      case UnaryOp::neg: return -x;
      case UnaryOp::sin: return std::sin(x);
      case UnaryOp::cos: return std::cos(x);
      case UnaryOp::exp: return detail::checked(std::exp(x), e, "exp overflow");
      case UnaryOp::log:
        if (!(x > 0.0)) throw DomainError("log of non-positive value", to_string(e));
        return std::log(x);
      case UnaryOp::sqrt:
        if (x < 0.0) throw DomainError("sqrt of negative value", to_string(e));
        return std::sqrt(x);
    }
  }
  const auto& bn = *e.as<BinaryNode>();
  const double a = eval(bn.lhs, u);
  const double b = eval(bn.rhs, u);
  switch (bn.op) {
    case BinaryOp::add: return detail::checked(a + b, e, "overflow");
    case BinaryOp::sub: return detail::checked(a - b, e, "overflow");
    case BinaryOp::mul: return detail::checked(a * b, e, "overflow");
    case BinaryOp::div:
      if (b == 0.0) throw DomainError("division by zero", to_string(e));
      return detail::checked(a / b, e, "overflow");
    case BinaryOp::pow:
      if (a < 0.0 && !detail::is_integer(b))
        throw DomainError("negative base with non-integer exponent", to_string(e));
      if (a == 0.0 && b < 0.0) throw DomainError("division by zero", to_string(e));
      return detail::checked(std::pow(a, b), e, "overflow");
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Differentiation

namespace detail {

// Constructors that drop structural zeros and ones. This is not a
// simplifier; it only keeps derivative trees from carrying `0*x` terms
// whose evaluation could fail where the true derivative is defined.
inline Expr add(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  return Expr::binary(BinaryOp::add, a, b);
}

inline Expr sub(const Expr& a, const Expr& b) {
  if (b.is_constant(0.0)) return a;
  if (a.is_constant(0.0)) {
    if (const auto* c = b.as<ConstantNode>()) return Expr::constant(-c->value);
    return Expr::unary(UnaryOp::neg, b);
  }
  return Expr::binary(BinaryOp::sub, a, b);
}

inline Expr mul(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr::constant(0.0);
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  return Expr::binary(BinaryOp::mul, a, b);
}

inline Expr div(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0)) return Expr::constant(0.0);
  if (b.is_constant(1.0)) return a;
  return Expr::binary(BinaryOp::div, a, b);
}

inline Expr neg(const Expr& a) {
  if (const auto* c = a.as<ConstantNode>()) return Expr::constant(-c->value);
  return Expr::unary(UnaryOp::neg, a);
}

inline Expr call(UnaryOp op, const Expr& a) { return Expr::unary(op, a); }

inline Expr pow(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::pow, a, b); }

}  // namespace detail

/// Symbolic derivative with respect to `u`.
inline Expr differentiate(const Expr& e) {
  using namespace detail;
  if (e.as<ConstantNode>()) return Expr::constant(0.0);
  if (e.is_variable()) return Expr::constant(1.0);

  if (const auto* un = e.as<UnaryNode>()) {
    const Expr& x = un->child;
    const Expr dx = differentiate(x);
    if (dx.is_constant(0.0)) return Expr::constant(0.0);
    switch (un->op) {
      case UnaryOp::neg: return neg(dx);
      case UnaryOp::sin: return mul(call(UnaryOp::cos, x), dx);
      case UnaryOp::cos: return mul(neg(call(UnaryOp::sin, x)), dx);
      case UnaryOp::exp: return mul(e, dx);
      case UnaryOp::log: return div(dx, x);
      case UnaryOp::sqrt: return div(dx, mul(Expr::constant(2.0), e));
    }
  }

  const auto& bn = *e.as<BinaryNode>();
  const Expr& a = bn.lhs;
  const Expr& b = bn.rhs;
  const Expr da = differentiate(a);
  const Expr db = differentiate(b);
  switch (bn.op) {
    case BinaryOp::add: return add(da, db);
    case BinaryOp::sub: return sub(da, db);
    case BinaryOp::mul: return add(mul(da, b), mul(a, db));
    case BinaryOp::div:
      // (a'b - ab') / b^2
      return div(sub(mul(da, b), mul(a, db)), pow(b, Expr::constant(2.0)));
    case BinaryOp::pow:
      if (const auto* p = b.as<ConstantNode>()) {
        if (p->value == 0.0) return Expr::constant(0.0);
        const double lowered = p->value - 1.0;
        const Expr factor = lowered == 1.0 ? a : pow(a, Expr::constant(lowered));
        return mul(mul(b, factor), da);
      }
      if (db.is_constant(0.0)) {
        // Exponent is constant-valued but not a literal: b * a^(b-1) * a'.
        return mul(mul(b, pow(a, sub(b, Expr::constant(1.0)))), da);
      }
      if (a.as<ConstantNode>()) {
        // c^b = exp(b log c): derivative c^b log(c) b'
        return mul(mul(e, call(UnaryOp::log, a)), db);
      }
      // a^b (b' log a + b a'/a); requires a > 0, enforced by log at eval time.
      return mul(e, add(mul(db, call(UnaryOp::log, a)), div(mul(b, da), a)));
  }
  return Expr::constant(0.0);
}

}  // namespace surf4
