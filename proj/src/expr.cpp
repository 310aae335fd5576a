// Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0.

#include "solcheck/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>

#include "solcheck/error.hpp"

namespace solcheck {

struct Expr::Node {
  Op op = Op::Literal;
  double value = 0.0;
  int index = -1;
  Expr lhs_;
  Expr rhs_;
  int max_symbol = -1;
  std::size_t count = 1;
};

namespace {

const Expr& zero_expr() {
  static const Expr z = Expr::literal(0.0);
  return z;
}

const Expr::Node& null_node() {
  static const Expr::Node n{};
  return n;
}

struct FunctionEntry {
  const char* name;
  Op op;
};

constexpr FunctionEntry kFunctions[] = {
    {"exp", Op::Exp},   {"log", Op::Log},   {"sin", Op::Sin},
    {"cos", Op::Cos},   {"tan", Op::Tan},   {"sinh", Op::Sinh},
    {"cosh", Op::Cosh}, {"sqrt", Op::Sqrt},
};

}  // namespace

bool is_function(Op op) noexcept { return function_name(op) != nullptr; }

const char* function_name(Op op) noexcept {
  for (const auto& f : kFunctions) {
    if (f.op == op) return f.name;
  }
  return nullptr;
}

// A null node pointer stands for the literal 0, so default construction does
// not allocate (and Node can hold Expr children by value).
Expr::Expr() = default;

Expr Expr::make(Op op, double value, int index, Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->value = value;
  n->index = index;
  n->max_symbol = index;
  n->count = 1;
  const bool binary = op == Op::Add || op == Op::Sub || op == Op::Mul || op == Op::Div;
  const bool unary = op == Op::Neg || op == Op::Pow || is_function(op);
  if (binary || unary) {
    n->max_symbol = std::max(n->max_symbol, lhs.max_symbol_index());
    n->count += lhs.node_count();
    n->lhs_ = std::move(lhs);
  }
  if (binary) {
    n->max_symbol = std::max(n->max_symbol, rhs.max_symbol_index());
    n->count += rhs.node_count();
    n->rhs_ = std::move(rhs);
  }
  return Expr(std::move(n));
}

Expr Expr::literal(double value) {
  auto n = std::make_shared<Node>();
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::symbol(int index) { return make(Op::Symbol, 0.0, index, {}, {}); }

Expr Expr::function(Op op, Expr arg) {
  if (!is_function(op)) throw Error(ErrorCode::SyntaxError, "not a function op");
  return make(op, 0.0, -1, std::move(arg), {});
}

const Expr::Node& Expr::node() const noexcept { return node_ ? *node_ : null_node(); }

Op Expr::op() const noexcept { return node().op; }
double Expr::value() const noexcept { return node().value; }
int Expr::symbol_index() const noexcept { return node().index; }
const Expr& Expr::lhs() const { return node().lhs_; }
const Expr& Expr::rhs() const { return node().rhs_; }
int Expr::max_symbol_index() const noexcept { return node().max_symbol; }
std::size_t Expr::node_count() const noexcept { return node().count; }

bool Expr::is_literal(double v) const noexcept {
  return node().op == Op::Literal && node().value == v;
}

namespace {

bool finite_literal(double v) { return std::isfinite(v); }

}  // namespace

Expr operator+(const Expr& a, const Expr& b) {
  if (a.op() == Op::Literal && b.op() == Op::Literal && finite_literal(a.value() + b.value()))
    return Expr::literal(a.value() + b.value());
  if (a.is_literal(0.0)) return b;
  if (b.is_literal(0.0)) return a;
  return Expr::make(Op::Add, 0.0, -1, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.op() == Op::Literal && b.op() == Op::Literal && finite_literal(a.value() - b.value()))
    return Expr::literal(a.value() - b.value());
  if (b.is_literal(0.0)) return a;
  if (a.is_literal(0.0)) return -b;
  return Expr::make(Op::Sub, 0.0, -1, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.op() == Op::Literal && b.op() == Op::Literal && finite_literal(a.value() * b.value()))
    return Expr::literal(a.value() * b.value());
  if (a.is_literal(0.0) || b.is_literal(0.0)) return Expr::literal(0.0);
  if (a.is_literal(1.0)) return b;
  if (b.is_literal(1.0)) return a;
  return Expr::make(Op::Mul, 0.0, -1, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (a.op() == Op::Literal && b.op() == Op::Literal && b.value() != 0.0 &&
      finite_literal(a.value() / b.value()))
    return Expr::literal(a.value() / b.value());
  if (a.is_literal(0.0) && !b.is_literal(0.0)) return Expr::literal(0.0);
  if (b.is_literal(1.0)) return a;
  return Expr::make(Op::Div, 0.0, -1, a, b);
}

Expr operator-(const Expr& a) {
  if (a.op() == Op::Literal) return Expr::literal(-a.value());
  if (a.op() == Op::Neg) return a.lhs();
  return Expr::make(Op::Neg, 0.0, -1, a, {});
}

Expr pow(const Expr& base, double exponent) {
  if (exponent == 1.0) return base;
  if (exponent == 0.0) return Expr::literal(1.0);
  if (base.op() == Op::Literal) {
    const double v = std::pow(base.value(), exponent);
    if (std::isfinite(v)) return Expr::literal(v);
  }
  return Expr::make(Op::Pow, exponent, -1, base, {});
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::Literal:
      return std::memcmp(&a.node().value, &b.node().value, sizeof(double)) == 0;
    case Op::Symbol:
      return a.symbol_index() == b.symbol_index();
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case Op::Pow:
      return a.value() == b.value() && a.lhs() == b.lhs();
    default:
      return a.lhs() == b.lhs();
  }
}

Expr exp(const Expr& a) { return Expr::function(Op::Exp, a); }
Expr log(const Expr& a) { return Expr::function(Op::Log, a); }
Expr sin(const Expr& a) { return Expr::function(Op::Sin, a); }
Expr cos(const Expr& a) { return Expr::function(Op::Cos, a); }
Expr tan(const Expr& a) { return Expr::function(Op::Tan, a); }
Expr sinh(const Expr& a) { return Expr::function(Op::Sinh, a); }
Expr cosh(const Expr& a) { return Expr::function(Op::Cosh, a); }
Expr sqrt(const Expr& a) { return Expr::function(Op::Sqrt, a); }

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> coords)
      : text_(text), coords_(coords) {}

  Expr run() {
    for (std::size_t i = 0; i < text_.size(); ++i) {
      if (static_cast<unsigned char>(text_[i]) > 127)
        fail("non-ASCII character", static_cast<int>(i));
    }
    skip_space();
    if (pos_ >= text_.size()) fail("empty expression", 0);
    Expr e = expression();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    throw Error(ErrorCode::SyntaxError,
                what + " at column " + std::to_string(at + 1), static_cast<int>(at));
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r'))
      ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expression() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = lhs + term();
      } else if (accept('-')) {
        lhs = lhs - term();
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = lhs * unary();
      } else if (accept('/')) {
        lhs = lhs / unary();
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    skip_space();
    const std::size_t caret = pos_;
    if (accept('^')) {
      Expr exponent = unary();
      if (exponent.op() != Op::Literal) fail("exponent must be a numeric constant", caret);
      return pow(base, exponent.value());
    }
    return base;
  }

  Expr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = expression();
      if (!accept(')')) fail("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected '" + std::string(1, c) + "'", pos_);
  }

  Expr number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t q = pos_ + 1;
      if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) ++q;
      if (q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]))) {
        pos_ = q;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
          ++pos_;
      }
    }
    double v = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) fail("malformed number", start);
    return Expr::literal(v);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    skip_space();
    const bool call = pos_ < text_.size() && text_[pos_] == '(';
    const FunctionEntry* fn = nullptr;
    for (const auto& f : kFunctions) {
      if (name == f.name) fn = &f;
    }
    if (call && fn != nullptr) {
      ++pos_;
      std::vector<Expr> args;
      skip_space();
      if (!(pos_ < text_.size() && text_[pos_] == ')')) {
        args.push_back(expression());
        while (accept(',')) args.push_back(expression());
      }
      if (!accept(')')) fail("expected ')'", pos_);
      if (args.size() != 1) {
        throw Error(ErrorCode::ArityError,
                    "function '" + name + "' takes 1 argument, got " + std::to_string(args.size()),
                    static_cast<int>(start));
      }
      return Expr::function(fn->op, args.front());
    }
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (coords_[i] == name) return Expr::symbol(static_cast<int>(i));
    }
    if (fn != nullptr) fail("expected '(' after function '" + name + "'", pos_);
    throw Error(ErrorCode::UnknownIdentifier, "unknown identifier '" + name + "' at column " +
                                                  std::to_string(start + 1),
                static_cast<int>(start));
  }

  std::string_view text_;
  std::span<const std::string> coords_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expression(std::string_view text, std::span<const std::string> coords) {
  return Parser(text, coords).run();
}

// ---------------------------------------------------------------------------
// Differentiation

Expr differentiate(const Expr& e, int coord) {
  const auto d = [coord](const Expr& x) { return differentiate(x, coord); };
  switch (e.op()) {
    case Op::Literal:
      return zero_expr();
    case Op::Symbol:
      return Expr::literal(e.symbol_index() == coord ? 1.0 : 0.0);
    case Op::Add:
      return d(e.lhs()) + d(e.rhs());
    case Op::Sub:
      return d(e.lhs()) - d(e.rhs());
    case Op::Neg:
      return -d(e.lhs());
    case Op::Mul:
      return d(e.lhs()) * e.rhs() + e.lhs() * d(e.rhs());
    case Op::Div:
      return d(e.lhs()) / e.rhs() - e.lhs() * d(e.rhs()) / pow(e.rhs(), 2.0);
    case Op::Pow:
      return Expr::literal(e.value()) * pow(e.lhs(), e.value() - 1.0) * d(e.lhs());
    case Op::Exp:
      return e * d(e.lhs());
    case Op::Log:
      return d(e.lhs()) / e.lhs();
    case Op::Sin:
      return cos(e.lhs()) * d(e.lhs());
    case Op::Cos:
      return -(sin(e.lhs()) * d(e.lhs()));
    case Op::Tan:
      return d(e.lhs()) / pow(cos(e.lhs()), 2.0);
    case Op::Sinh:
      return cosh(e.lhs()) * d(e.lhs());
    case Op::Cosh:
      return sinh(e.lhs()) * d(e.lhs());
    case Op::Sqrt:
      return d(e.lhs()) / (Expr::literal(2.0) * e);
  }
  return zero_expr();
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

[[noreturn]] void domain_error(const char* what) {
  throw Error(ErrorCode::DomainError, std::string("evaluation error: ") + what);
}

double checked(double v) {
  if (!std::isfinite(v)) domain_error("non-finite value");
  return v;
}

}  // namespace

double evaluate(const Expr& e, std::span<const double> point) {
  switch (e.op()) {
    case Op::Literal:
      return e.value();
    case Op::Symbol:
      if (e.symbol_index() < 0 || static_cast<std::size_t>(e.symbol_index()) >= point.size())
        domain_error("coordinate index out of range");
      return point[static_cast<std::size_t>(e.symbol_index())];
    case Op::Add:
      return checked(evaluate(e.lhs(), point) + evaluate(e.rhs(), point));
    case Op::Sub:
      return checked(evaluate(e.lhs(), point) - evaluate(e.rhs(), point));
    case Op::Mul:
      return checked(evaluate(e.lhs(), point) * evaluate(e.rhs(), point));
    case Op::Div: {
      const double den = evaluate(e.rhs(), point);
      if (den == 0.0) domain_error("division by zero");
      return checked(evaluate(e.lhs(), point) / den);
    }
    case Op::Neg:
      return -evaluate(e.lhs(), point);
    case Op::Pow: {
      const double b = evaluate(e.lhs(), point);
      const double x = e.value();
      if (b < 0.0 && x != std::floor(x)) domain_error("fractional power of a negative value");
      if (b == 0.0 && x < 0.0) domain_error("division by zero");
      return checked(std::pow(b, x));
    }
    case Op::Exp:
      return checked(std::exp(evaluate(e.lhs(), point)));
    case Op::Log: {
      const double a = evaluate(e.lhs(), point);
      if (a <= 0.0) domain_error("log of a non-positive value");
      return std::log(a);
    }
    case Op::Sin:
      return std::sin(evaluate(e.lhs(), point));
    case Op::Cos:
      return std::cos(evaluate(e.lhs(), point));
    case Op::Tan:
      return checked(std::tan(evaluate(e.lhs(), point)));
    case Op::Sinh:
      return checked(std::sinh(evaluate(e.lhs(), point)));
    case Op::Cosh:
      return checked(std::cosh(evaluate(e.lhs(), point)));
    case Op::Sqrt: {
      const double a = evaluate(e.lhs(), point);
      if (a < 0.0) domain_error("sqrt of a negative value");
      return std::sqrt(a);
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Printing

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

namespace {

// Binding strength: 1 additive, 2 multiplicative, 3 unary minus, 4 power,
// 5 atoms and calls.
int precedence(const Expr& e) {
  switch (e.op()) {
    case Op::Add:
    case Op::Sub:
      return 1;
    case Op::Mul:
    case Op::Div:
      return 2;
    case Op::Neg:
      return 3;
    case Op::Pow:
      return 4;
    case Op::Literal:
      return e.value() < 0.0 || std::signbit(e.value()) ? 3 : 5;
    default:
      return 5;
  }
}

void print(const Expr& e, std::span<const std::string> coords, int min_prec, std::string& out) {
  const bool paren = precedence(e) < min_prec;
  if (paren) out += '(';
  switch (e.op()) {
    case Op::Literal:
      out += format_number(e.value());
      break;
    case Op::Symbol: {
      const auto i = static_cast<std::size_t>(e.symbol_index());
      out += i < coords.size() ? coords[i] : "_" + std::to_string(i);
      break;
    }
    case Op::Add:
    case Op::Sub:
      print(e.lhs(), coords, 1, out);
      out += e.op() == Op::Add ? " + " : " - ";
      print(e.rhs(), coords, 2, out);
      break;
    case Op::Mul:
    case Op::Div:
      print(e.lhs(), coords, 2, out);
      out += e.op() == Op::Mul ? "*" : "/";
      print(e.rhs(), coords, 3, out);
      break;
    case Op::Neg:
      out += '-';
      print(e.lhs(), coords, 3, out);
      break;
    case Op::Pow: {
      print(e.lhs(), coords, 5, out);
      out += '^';
      const std::string x = format_number(e.value());
      if (e.value() < 0.0) {
        out += '(' + x + ')';
      } else {
        out += x;
      }
      break;
    }
    default:
      out += function_name(e.op());
      out += '(';
      print(e.lhs(), coords, 0, out);
      out += ')';
      break;
  }
  if (paren) out += ')';
}

}  // namespace

std::string to_string(const Expr& e, std::span<const std::string> coords) {
  std::string out;
  print(e, coords, 0, out);
  return out;
}

}  // namespace solcheck
