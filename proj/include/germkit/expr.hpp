#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "germkit/errors.hpp"

namespace germkit {

enum class UnaryOp { Neg, Sin, Cos, Exp, Log, Sqrt, Atan };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

namespace ast {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

enum class Kind { Number, Variable, Unary, Binary };

struct Node {
  Kind kind;
  double value = 0.0;      // Number
  UnaryOp uop{};           // Unary
  BinaryOp bop{};          // Binary
  NodePtr a;               // unary operand / binary lhs
  NodePtr b;               // binary rhs
  std::size_t pos = 0;     // source offset, kept for diagnostics
};

}  // namespace ast

// Immutable expression tree in one free variable `x`. Supported operators:
// + - * / ^ and sin, cos, exp, log, sqrt, atan. Integer exponents are
// evaluated exactly (by repeated multiplication); fractional exponents
// require a positive base. Safe for unrestricted concurrent reads.
class Expr {
 public:
  // Grammar:
  //   expr   := term (('+'|'-') term)*
  //   term   := factor (('*'|'/') factor)*
  //   factor := '-' factor | base ('^' factor)?
  //   base   := number | 'x' | func '(' expr ')' | '(' expr ')'
  // so "-x^2" reads as -(x^2) and "2^3^2" as 2^(3^2).
  static Expr parse(std::string_view text);

  static Expr number(double v);
  static Expr variable();

  // Evaluates at x; throws DomainError naming the offending sub-expression.
  double operator()(double x) const;

  Expr derivative() const;

  // Round-trips: parse(str()) evaluates identically.
  std::string str() const;

  bool depends_on_x() const;

  const ast::Node& root() const { return *root_; }
  explicit Expr(ast::NodePtr root) : root_(std::move(root)) {}

 private:
  ast::NodePtr root_;
};

}  // namespace germkit
