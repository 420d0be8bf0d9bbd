#include "gqe/expression.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>

#include "gqe/error.hpp"

namespace gqe {

namespace {

using NodePtr = Expression::NodePtr;

constexpr std::array<std::pair<std::string_view, Function>, 6> kFunctions{{
    {"exp", Function::Exp},
    {"log", Function::Log},
    {"tanh", Function::Tanh},
    {"cosh", Function::Cosh},
    {"sinh", Function::Sinh},
    {"sqrt", Function::Sqrt},
}};

std::optional<Function> lookup_function(std::string_view name) {
  for (const auto& [n, fn] : kFunctions) {
    if (n == name) return fn;
  }
  return std::nullopt;
}

NodePtr make_leaf(NodeKind kind, double c) {
  auto node = std::make_shared<ExpressionNode>();
  node->kind = kind;
  node->constant = c;
  node->depends_on_variable = (kind == NodeKind::Variable);
  return node;
}

NodePtr make_node(NodeKind kind, NodePtr lhs, NodePtr rhs = nullptr,
                  Function fn = Function::Exp) {
  auto node = std::make_shared<ExpressionNode>();
  node->kind = kind;
  node->function = fn;
  node->depends_on_variable =
      (lhs && lhs->depends_on_variable) || (rhs && rhs->depends_on_variable);
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return node;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(std::string_view text, std::string_view variable)
      : text_(text), variable_(variable) {}

  NodePtr parse() {
    NodePtr root = parse_expr();
    skip_space();
    if (pos_ < text_.size()) {
      throw SyntaxError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    }
    return root;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) {
        throw SyntaxError(std::string("expected '") + c + "' but reached end of input", pos_);
      }
      throw SyntaxError(std::string("expected '") + c + "'", pos_);
    }
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = make_node(NodeKind::Add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = make_node(NodeKind::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_node(NodeKind::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = make_node(NodeKind::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) {
      skip_space();
      const bool literal = pos_ < text_.size() &&
                           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.');
      NodePtr operand = parse_unary();
      // A minus directly on a numeric literal is a negative constant, which is
      // how negative constants print. Negating anything else, "-(4)" included,
      // stays a negation.
      if (literal && operand->kind == NodeKind::Constant) {
        return make_leaf(NodeKind::Constant, -operand->constant);
      }
      return make_node(NodeKind::Neg, operand);
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (accept('^')) return make_node(NodeKind::Pow, base, parse_unary());
    return base;
  }

  NodePtr parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    throw SyntaxError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw SyntaxError("malformed number", start);
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      const std::size_t save = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) {
        // `2e` or `2ex`: not an exponent; leave it for the caller to reject.
        pos_ = save;
      }
    }
    double value = 0.0;
    const auto* first = text_.data() + start;
    const auto* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) throw SyntaxError("malformed number", start);
    return make_leaf(NodeKind::Constant, value);
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == variable_) return make_leaf(NodeKind::Variable, 0.0);
    if (auto fn = lookup_function(name)) {
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != '(') {
        throw SyntaxError("function '" + std::string(name) + "' requires '('", pos_);
      }
      ++pos_;
      NodePtr arg = parse_expr();
      expect(')');
      return make_node(NodeKind::Call, arg, nullptr, *fn);
    }
    if (name == "pi") return make_leaf(NodeKind::Constant, std::numbers::pi);
    throw SyntaxError("unknown identifier '" + std::string(name) + "'", start);
  }

  std::string_view text_;
  std::string_view variable_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Printing

int precedence(const ExpressionNode& node) {
  switch (node.kind) {
    case NodeKind::Add:
    case NodeKind::Sub:
      return 1;
    case NodeKind::Mul:
    case NodeKind::Div:
      return 2;
    case NodeKind::Neg:
      return 3;
    case NodeKind::Pow:
      return 4;
    case NodeKind::Constant:
      return node.constant < 0.0 || std::signbit(node.constant) ? 3 : 5;
    case NodeKind::Variable:
    case NodeKind::Call:
      return 5;
  }
  return 5;
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::logic_error("number formatting failed");
  return std::string(buf.data(), ptr);
}

void print(const ExpressionNode& node, const std::string& var, std::string& out);

void print_child(const ExpressionNode& child, int min_prec, const std::string& var,
                 std::string& out) {
  if (precedence(child) < min_prec) {
    out += '(';
    print(child, var, out);
    out += ')';
  } else {
    print(child, var, out);
  }
}

void print(const ExpressionNode& node, const std::string& var, std::string& out) {
  switch (node.kind) {
    case NodeKind::Constant:
      out += format_number(node.constant);
      return;
    case NodeKind::Variable:
      out += var;
      return;
    case NodeKind::Neg:
      out += '-';
      if (node.lhs->kind == NodeKind::Constant && !std::signbit(node.lhs->constant)) {
        print_child(*node.lhs, 6, var, out);
      } else {
        print_child(*node.lhs, 3, var, out);
      }
      return;
    case NodeKind::Call:
      out += function_name(node.function);
      out += '(';
      print(*node.lhs, var, out);
      out += ')';
      return;
    case NodeKind::Pow:
      print_child(*node.lhs, 5, var, out);
      out += '^';
      print_child(*node.rhs, 3, var, out);
      return;
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div: {
      const int p = precedence(node);
      const char op = node.kind == NodeKind::Add   ? '+'
                      : node.kind == NodeKind::Sub ? '-'
                      : node.kind == NodeKind::Mul ? '*'
                                                   : '/';
      print_child(*node.lhs, p, var, out);
      out += op;
      print_child(*node.rhs, p + 1, var, out);
      return;
    }
  }
}

std::string node_text(const ExpressionNode& node, const std::string& var) {
  std::string s;
  print(node, var, s);
  return s;
}

// ---------------------------------------------------------------------------
// Evaluation

struct Evaluator {
  const std::string& var;
  double t;

  [[noreturn]] void fail(const std::string& what, const ExpressionNode& node) const {
    throw EvaluationError(what, node_text(node, var), t);
  }

  Jet checked(Jet j, const ExpressionNode& node) const {
    if (!std::isfinite(j.value) || !std::isfinite(j.d1) || !std::isfinite(j.d2)) {
      fail("non-finite result", node);
    }
    return j;
  }

  Jet eval(const ExpressionNode& node) const {
    switch (node.kind) {
      case NodeKind::Constant:
        return Jet::constant(node.constant);
      case NodeKind::Variable:
        return Jet::variable(t);
      case NodeKind::Add:
        return checked(eval(*node.lhs) + eval(*node.rhs), node);
      case NodeKind::Sub:
        return checked(eval(*node.lhs) - eval(*node.rhs), node);
      case NodeKind::Mul:
        return checked(eval(*node.lhs) * eval(*node.rhs), node);
      case NodeKind::Neg:
        return -eval(*node.lhs);
      case NodeKind::Div: {
        const Jet num = eval(*node.lhs);
        const Jet den = eval(*node.rhs);
        if (den.value == 0.0) fail("division by zero", node);
        return checked(num / den, node);
      }
      case NodeKind::Pow:
        return eval_pow(node);
      case NodeKind::Call:
        return eval_call(node);
    }
    fail("corrupt expression node", node);
  }

  Jet eval_pow(const ExpressionNode& node) const {
    const Jet base = eval(*node.lhs);
    const Jet exponent = eval(*node.rhs);
    if (!node.rhs->depends_on_variable) {
      const double p = exponent.value;
      const bool integral = std::floor(p) == p;
      if (base.value < 0.0 && !integral) fail("negative base with non-integer exponent", node);
      if (base.value == 0.0 && p < 2.0 && !(integral && p >= 0.0)) {
        fail("power not differentiable at zero base", node);
      }
      return checked(pow(base, p), node);
    }
    if (base.value <= 0.0) fail("variable exponent requires a positive base", node);
    return checked(exp(exponent * log(base)), node);
  }

  Jet eval_call(const ExpressionNode& node) const {
    const Jet a = eval(*node.lhs);
    switch (node.function) {
      case Function::Exp:
        return checked(exp(a), node);
      case Function::Log:
        if (a.value <= 0.0) fail("log of non-positive value", node);
        return checked(log(a), node);
      case Function::Sqrt:
        if (a.value < 0.0) fail("sqrt of negative value", node);
        if (a.value == 0.0) fail("sqrt not differentiable at zero", node);
        return checked(sqrt(a), node);
      case Function::Tanh:
        return checked(tanh(a), node);
      case Function::Cosh:
        return checked(cosh(a), node);
      case Function::Sinh:
        return checked(sinh(a), node);
    }
    fail("unknown function", node);
  }
};

bool equal_nodes(const ExpressionNode& a, const ExpressionNode& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::Constant:
      return a.constant == b.constant && std::signbit(a.constant) == std::signbit(b.constant);
    case NodeKind::Variable:
      return true;
    case NodeKind::Neg:
      return equal_nodes(*a.lhs, *b.lhs);
    case NodeKind::Call:
      return a.function == b.function && equal_nodes(*a.lhs, *b.lhs);
    default:
      return equal_nodes(*a.lhs, *b.lhs) && equal_nodes(*a.rhs, *b.rhs);
  }
}

}  // namespace

std::string_view function_name(Function fn) {
  for (const auto& [n, f] : kFunctions) {
    if (f == fn) return n;
  }
  return "?";
}

Expression Expression::parse(std::string_view text, std::string_view variable) {
  if (variable.empty()) throw InvalidArgument("expression variable name must not be empty");
  if (lookup_function(variable) || variable == "pi") {
    throw InvalidArgument("variable name '" + std::string(variable) + "' is reserved");
  }
  Parser parser(text, variable);
  return Expression(parser.parse(), std::string(variable));
}

Expression Expression::constant(double c, std::string_view variable) {
  return Expression(make_leaf(NodeKind::Constant, c), std::string(variable));
}

Expression Expression::var(std::string_view variable) {
  return Expression(make_leaf(NodeKind::Variable, 0.0), std::string(variable));
}

Expression Expression::call(Function fn, const Expression& arg) {
  return Expression(make_node(NodeKind::Call, arg.root_, nullptr, fn), arg.variable_);
}

Expression Expression::power(const Expression& base, const Expression& exponent) {
  return Expression(make_node(NodeKind::Pow, base.root_, exponent.root_), base.variable_);
}

Expression operator+(const Expression& a, const Expression& b) {
  return Expression(make_node(NodeKind::Add, a.root_, b.root_), a.variable_);
}
Expression operator-(const Expression& a, const Expression& b) {
  return Expression(make_node(NodeKind::Sub, a.root_, b.root_), a.variable_);
}
Expression operator*(const Expression& a, const Expression& b) {
  return Expression(make_node(NodeKind::Mul, a.root_, b.root_), a.variable_);
}
Expression operator/(const Expression& a, const Expression& b) {
  return Expression(make_node(NodeKind::Div, a.root_, b.root_), a.variable_);
}
Expression operator-(const Expression& a) {
  return Expression(make_node(NodeKind::Neg, a.root_), a.variable_);
}

std::string Expression::to_string() const { return node_text(*root_, variable_); }

double Expression::evaluate(double t) const { return evaluate_jet(t).value; }

Jet Expression::evaluate_jet(double t) const {
  Evaluator ev{variable_, t};
  return ev.eval(*root_);
}

bool Expression::structurally_equal(const Expression& other) const {
  return equal_nodes(*root_, *other.root_);
}

}  // namespace gqe
