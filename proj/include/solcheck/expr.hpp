// Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0.

#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace solcheck {

/// Node kinds of a scalar expression. Pow carries its exponent as a number,
/// never as a subtree.
enum class Op {
  Literal,
  Symbol,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
  Neg,
  Exp,
  Log,
  Sin,
  Cos,
  Tan,
  Sinh,
  Cosh,
  Sqrt,
};

bool is_function(Op op) noexcept;
/// "sin", "exp", ... for function ops; nullptr otherwise.
const char* function_name(Op op) noexcept;

/// Immutable scalar field over chart coordinates. Copies share the tree.
class Expr {
 public:
  /// The literal 0.
  Expr();

  static Expr literal(double value);
  static Expr symbol(int index);
  static Expr function(Op op, Expr arg);

  Op op() const noexcept;
  /// Literal value, or the exponent of a Pow node.
  double value() const noexcept;
  int symbol_index() const noexcept;
  /// First operand (the argument for unary and function nodes).
  const Expr& lhs() const;
  const Expr& rhs() const;

  bool is_literal(double v) const noexcept;
  /// Largest symbol index in the tree, -1 for constants.
  int max_symbol_index() const noexcept;
  std::size_t node_count() const noexcept;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr pow(const Expr& base, double exponent);

  /// Structural equality (same tree shape, same numbers bitwise).
  friend bool operator==(const Expr& a, const Expr& b);

  struct Node;

 private:
  const Node& node() const noexcept;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Expr make(Op op, double value, int index, Expr lhs, Expr rhs);
  std::shared_ptr<const Node> node_;
};

Expr exp(const Expr& a);
Expr log(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr tan(const Expr& a);
Expr sinh(const Expr& a);
Expr cosh(const Expr& a);
Expr sqrt(const Expr& a);

/// Parses the ASCII expression grammar documented in docs/expression_grammar.md.
/// Throws Error with UnknownIdentifier, SyntaxError (position set) or ArityError.
Expr parse_expression(std::string_view text, std::span<const std::string> coords);

/// Exact partial derivative with light constant folding.
Expr differentiate(const Expr& e, int coord);

/// Throws Error(DomainError) on log of non-positive values, division by zero,
/// square roots of negatives and any non-finite result.
double evaluate(const Expr& e, std::span<const double> point);

/// Prints with minimal parentheses; parse_expression(to_string(e)) == e for
/// every tree built through the public constructors.
std::string to_string(const Expr& e, std::span<const std::string> coords);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double v);

}  // namespace solcheck
