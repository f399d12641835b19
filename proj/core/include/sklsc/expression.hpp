#pragma once

#include <memory>
#include <span>
#include <string>

#include "sklsc/grid.hpp"

namespace sklsc {

// Arithmetic expressions over lattice coordinates x1..xd (or, for family
// scaling/warping functions, the single variable t):
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ('^' number)?
//   atom   := number | variable | 'sin(' expr ')' | 'cos(' expr ')'
//           | 'exp(' expr ')' | '(' expr ')' | '-' atom
class FieldExpression {
 public:
  struct Node;

  // Highest variable index referenced (0 when the expression is constant or
  // uses only t).
  int max_variable() const { return max_variable_; }
  bool uses_t() const { return uses_t_; }
  const std::string& source() const { return source_; }

  double evaluate(std::span<const double> coords) const;
  // Evaluate an expression in the single variable t.
  double evaluate_at_t(double t) const;

 private:
  friend FieldExpression parse_expression(const std::string&, bool);
  std::shared_ptr<const Node> root_;
  std::string source_;
  int max_variable_ = 0;
  bool uses_t_ = false;
};

// Throws ConfigError with a line/column annotation on syntax errors.  When
// allow_t is set the identifier 't' is accepted as the sole variable.
FieldExpression parse_expression(const std::string& text, bool allow_t = false);

// Sample an expression at every lattice site.
ScalarField evaluate_on_grid(const FieldExpression& expr, const GridPtr& grid);

}  // namespace sklsc
