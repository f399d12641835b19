#pragma once

#include <cmath>
#include <string>

#include "sklsc/curvature.hpp"
#include "sklsc/expression.hpp"
#include "sklsc/grid.hpp"

namespace sklsc::testing {

inline constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

inline GridPtr circle(int n_points = 64, double length = kTwoPi) {
  return make_grid({n_points}, {length});
}

inline ScalarField from_expr(const GridPtr& grid, const std::string& text) {
  return evaluate_on_grid(parse_expression(text), grid);
}

inline BalancedBaseData kahler_base(const GridPtr& grid, int n,
                                    const std::string& sc_expr) {
  BalancedBaseData base;
  base.n = n;
  base.grid = grid;
  base.kind = BaseKind::synthetic_kahler;
  base.SC_b = from_expr(grid, sc_expr);
  base.S_b = 2.0 * base.SC_b;
  validate(base);
  return base;
}

inline BalancedBaseData balanced_base(const GridPtr& grid, int n,
                                      const std::string& s_expr,
                                      const std::string& sc_expr) {
  BalancedBaseData base;
  base.n = n;
  base.grid = grid;
  base.kind = BaseKind::synthetic_balanced;
  base.S_b = from_expr(grid, s_expr);
  base.SC_b = from_expr(grid, sc_expr);
  validate(base);
  return base;
}

}  // namespace sklsc::testing
