#include "sklsc/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "sklsc/errors.hpp"

namespace sklsc {

struct FieldExpression::Node {
  enum class Kind { number, variable, t_var, negate, add, sub, mul, div, pow, sin, cos, exp };
  Kind kind;
  double value = 0.0;  // number literal or pow exponent
  int variable = 0;    // 1-based axis for Kind::variable
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using Node = FieldExpression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  Parser(const std::string& text, bool allow_t) : text_(text), allow_t_(allow_t) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

  int max_variable = 0;
  bool uses_t = false;

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("expression syntax error at line 1, column " +
                      std::to_string(pos_ + 1) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  NodePtr expr() {
    NodePtr lhs = term();
    while (true) {
      if (eat('+')) lhs = make(Node::Kind::add, lhs, term());
      else if (eat('-')) lhs = make(Node::Kind::sub, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    while (true) {
      if (eat('*')) lhs = make(Node::Kind::mul, lhs, factor());
      else if (eat('/')) lhs = make(Node::Kind::div, lhs, factor());
      else return lhs;
    }
  }

  NodePtr factor() {
    NodePtr base = atom();
    if (eat('^')) {
      skip_ws();
      NodePtr p = make(Node::Kind::pow, base);
      auto n = std::const_pointer_cast<Node>(p);
      n->value = number();
      return p;
    }
    return base;
  }

  double number() {
    skip_ws();
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  NodePtr func(Node::Kind kind) {
    if (!eat('(')) fail("expected '(' after function name");
    NodePtr arg = expr();
    if (!eat(')')) fail("unbalanced parentheses");
    return make(kind, arg);
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      return make(Node::Kind::negate, atom());
    }
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!eat(')')) fail("unbalanced parentheses");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::number;
      n->value = number();
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])))) ++end;
      const std::string name = text_.substr(pos_, end - pos_);
      if (name == "sin") { pos_ = end; return func(Node::Kind::sin); }
      if (name == "cos") { pos_ = end; return func(Node::Kind::cos); }
      if (name == "exp") { pos_ = end; return func(Node::Kind::exp); }
      if (name == "t" && allow_t_) {
        pos_ = end;
        uses_t = true;
        return make(Node::Kind::t_var);
      }
      if (name.size() >= 2 && name[0] == 'x') {
        bool digits = true;
        for (std::size_t i = 1; i < name.size(); ++i)
          digits = digits && std::isdigit(static_cast<unsigned char>(name[i]));
        if (digits) {
          const int axis = std::atoi(name.c_str() + 1);
          if (axis < 1) fail("variable index must be >= 1");
          pos_ = end;
          auto n = std::make_shared<Node>();
          n->kind = Node::Kind::variable;
          n->variable = axis;
          max_variable = std::max(max_variable, axis);
          return n;
        }
      }
      fail("unknown identifier '" + name + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& text_;
  bool allow_t_;
  std::size_t pos_ = 0;
};

double eval(const Node& n, std::span<const double> coords, double t) {
  switch (n.kind) {
    case Node::Kind::number: return n.value;
    case Node::Kind::variable: return coords[static_cast<std::size_t>(n.variable - 1)];
    case Node::Kind::t_var: return t;
    case Node::Kind::negate: return -eval(*n.lhs, coords, t);
    case Node::Kind::add: return eval(*n.lhs, coords, t) + eval(*n.rhs, coords, t);
    case Node::Kind::sub: return eval(*n.lhs, coords, t) - eval(*n.rhs, coords, t);
    case Node::Kind::mul: return eval(*n.lhs, coords, t) * eval(*n.rhs, coords, t);
    case Node::Kind::div: return eval(*n.lhs, coords, t) / eval(*n.rhs, coords, t);
    case Node::Kind::pow: return std::pow(eval(*n.lhs, coords, t), n.value);
    case Node::Kind::sin: return std::sin(eval(*n.lhs, coords, t));
    case Node::Kind::cos: return std::cos(eval(*n.lhs, coords, t));
    case Node::Kind::exp: return std::exp(eval(*n.lhs, coords, t));
  }
  return 0.0;
}

}  // namespace

double FieldExpression::evaluate(std::span<const double> coords) const {
  if (max_variable_ > static_cast<int>(coords.size()))
    throw UsageError("expression references x" + std::to_string(max_variable_) +
                     " but only " + std::to_string(coords.size()) +
                     " coordinates were supplied");
  return eval(*root_, coords, 0.0);
}

double FieldExpression::evaluate_at_t(double t) const {
  if (max_variable_ > 0)
    throw UsageError("expression in t may not reference grid coordinates");
  return eval(*root_, {}, t);
}

FieldExpression parse_expression(const std::string& text, bool allow_t) {
  Parser parser(text, allow_t);
  FieldExpression out;
  out.root_ = parser.parse();
  out.source_ = text;
  out.max_variable_ = parser.max_variable;
  out.uses_t_ = parser.uses_t;
  return out;
}

ScalarField evaluate_on_grid(const FieldExpression& expr, const GridPtr& grid) {
  if (expr.uses_t())
    throw UsageError("expression in t cannot be evaluated on a grid");
  if (expr.max_variable() > grid->dim())
    throw ConfigError("expression references x" + std::to_string(expr.max_variable()) +
                      " on a " + std::to_string(grid->dim()) + "-dimensional grid");
  ScalarField out(grid);
  std::vector<double> coords(static_cast<std::size_t>(grid->dim()));
  for (std::size_t i = 0; i < grid->size(); ++i) {
    for (int a = 0; a < grid->dim(); ++a)
      coords[static_cast<std::size_t>(a)] = grid->coord(a, grid->axis_index(a, i));
    out[i] = expr.evaluate(coords);
  }
  return out;
}

}  // namespace sklsc
