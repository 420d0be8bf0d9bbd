#pragma once

// Arithmetic expressions over one free variable.
//
// Grammar (whitespace is insignificant):
//
//   expr    := term   (('+' | '-') term)*
//   term    := unary  (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          // right-associative
//   primary := number | 'pi' | variable | func '(' expr ')' | '(' expr ')'
//   func    := exp | log | tanh | cosh | sinh | sqrt
//
// so `-r^2` is `-(r^2)` and `2^-t^2` is `2^(-(t^2))`. Numbers accept an
// optional fraction and exponent (`1.5e-3`).

#include <memory>
#include <string>
#include <string_view>

#include "gqe/jet.hpp"

namespace gqe {

enum class NodeKind { Constant, Variable, Add, Sub, Mul, Div, Pow, Neg, Call };
enum class Function { Exp, Log, Tanh, Cosh, Sinh, Sqrt };

std::string_view function_name(Function fn);

struct ExpressionNode {
  NodeKind kind = NodeKind::Constant;
  double constant = 0.0;
  Function function = Function::Exp;
  std::shared_ptr<const ExpressionNode> lhs;  // operand of Neg / Call
  std::shared_ptr<const ExpressionNode> rhs;
  bool depends_on_variable = false;
};

/// Immutable expression tree. Copies share nodes; safe to evaluate
/// concurrently.
class Expression {
 public:
  using NodePtr = std::shared_ptr<const ExpressionNode>;

  /// Throws SyntaxError (with byte position) on malformed text or an
  /// identifier that is neither `variable`, `pi`, nor a known function.
  static Expression parse(std::string_view text, std::string_view variable);

  static Expression constant(double c, std::string_view variable);
  static Expression var(std::string_view variable);
  static Expression call(Function fn, const Expression& arg);
  static Expression power(const Expression& base, const Expression& exponent);

  friend Expression operator+(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator/(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a);

  const std::string& variable() const noexcept { return variable_; }
  const ExpressionNode& root() const noexcept { return *root_; }

  /// Canonical text with the minimum parentheses needed to re-parse to the
  /// same tree.
  std::string to_string() const;

  double evaluate(double t) const;

  /// Value and first two derivatives at t. Throws EvaluationError carrying
  /// the failing sub-expression and t.
  Jet evaluate_jet(double t) const;

  bool structurally_equal(const Expression& other) const;

 private:
  Expression(NodePtr root, std::string variable)
      : root_(std::move(root)), variable_(std::move(variable)) {}

  NodePtr root_;
  std::string variable_;
};

}  // namespace gqe
