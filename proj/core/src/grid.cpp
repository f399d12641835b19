#include "sklsc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sklsc {

TorusGrid::TorusGrid(std::vector<int> points, std::vector<double> lengths)
    : points_(std::move(points)), lengths_(std::move(lengths)) {
  if (points_.empty() || points_.size() != lengths_.size())
    throw UsageError("TorusGrid: dimension mismatch between points and lengths");
  size_ = 1;
  volume_ = 1.0;
  cell_volume_ = 1.0;
  for (std::size_t a = 0; a < points_.size(); ++a) {
    if (points_[a] < 4)
      throw UsageError("TorusGrid: need at least 4 points per axis");
    if (!(lengths_[a] > 0.0))
      throw UsageError("TorusGrid: axis lengths must be positive");
    size_ *= static_cast<std::size_t>(points_[a]);
    volume_ *= lengths_[a];
    spacing_.push_back(lengths_[a] / points_[a]);
    cell_volume_ *= spacing_.back();
  }
  strides_.assign(points_.size(), 1);
  for (int a = static_cast<int>(points_.size()) - 2; a >= 0; --a)
    strides_[a] = strides_[a + 1] * static_cast<std::size_t>(points_[a + 1]);
}

GridPtr make_grid(std::vector<int> points, std::vector<double> lengths) {
  return std::make_shared<const TorusGrid>(std::move(points), std::move(lengths));
}

ScalarField::ScalarField(GridPtr grid, double fill)
    : grid_(std::move(grid)), values_(grid_->size(), fill) {}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_->size())
    throw UsageError("ScalarField: value count does not match grid size");
}

void require_same_grid(const ScalarField& a, const ScalarField& b) {
  if (!a.grid() || !b.grid() || !a.grid()->same_shape(*b.grid()))
    throw UsageError("fields live on different grids");
}

ScalarField& ScalarField::operator+=(const ScalarField& rhs) {
  require_same_grid(*this, rhs);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += rhs[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& rhs) {
  require_same_grid(*this, rhs);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= rhs[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

ScalarField& ScalarField::operator+=(double s) {
  for (double& v : values_) v += s;
  return *this;
}

bool ScalarField::finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }
ScalarField operator+(ScalarField a, double s) { return a += s; }
ScalarField operator-(ScalarField a, double s) { return a += -s; }

ScalarField pointwise(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b);
  ScalarField out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= b[i];
  return out;
}

ScalarField map(const ScalarField& a, double (*fn)(double)) {
  ScalarField out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fn(a[i]);
  return out;
}

CovectorField::CovectorField(GridPtr grid) : grid_(std::move(grid)) {
  components_.assign(grid_->dim(), ScalarField(grid_));
}

namespace {

// Flat index of the periodic neighbor one step up/down along an axis.
inline std::size_t shift_up(const TorusGrid& g, int axis, std::size_t site) {
  const std::size_t s = g.stride(axis);
  const int i = g.axis_index(axis, site);
  return i + 1 == g.points(axis) ? site - s * (g.points(axis) - 1) : site + s;
}

inline std::size_t shift_down(const TorusGrid& g, int axis, std::size_t site) {
  const std::size_t s = g.stride(axis);
  const int i = g.axis_index(axis, site);
  return i == 0 ? site + s * (g.points(axis) - 1) : site - s;
}

}  // namespace

ScalarField laplacian(const ScalarField& u) {
  const TorusGrid& g = *u.grid();
  ScalarField out(u.grid());
  for (int a = 0; a < g.dim(); ++a) {
    const double inv_h2 = 1.0 / (g.spacing(a) * g.spacing(a));
    for (std::size_t i = 0; i < g.size(); ++i) {
      out[i] += (u[shift_up(g, a, i)] - 2.0 * u[i] + u[shift_down(g, a, i)]) * inv_h2;
    }
  }
  return out;
}

CovectorField gradient(const ScalarField& u) {
  const TorusGrid& g = *u.grid();
  CovectorField out(u.grid());
  for (int a = 0; a < g.dim(); ++a) {
    const double inv_2h = 0.5 / g.spacing(a);
    ScalarField& c = out.component(a);
    for (std::size_t i = 0; i < g.size(); ++i)
      c[i] = (u[shift_up(g, a, i)] - u[shift_down(g, a, i)]) * inv_2h;
  }
  return out;
}

ScalarField axis_derivative(const ScalarField& u, int axis) {
  const TorusGrid& g = *u.grid();
  if (axis < 0 || axis >= g.dim())
    throw UsageError("axis_derivative: axis out of range");
  ScalarField out(u.grid());
  const double inv_2h = 0.5 / g.spacing(axis);
  for (std::size_t i = 0; i < g.size(); ++i)
    out[i] = (u[shift_up(g, axis, i)] - u[shift_down(g, axis, i)]) * inv_2h;
  return out;
}

ScalarField grad_norm_sq(const ScalarField& u) {
  CovectorField grad = gradient(u);
  ScalarField out(u.grid());
  for (int a = 0; a < grad.dim(); ++a) {
    const ScalarField& c = grad.component(a);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c[i] * c[i];
  }
  return out;
}

ScalarField pairing(const CovectorField& alpha, const CovectorField& beta) {
  if (alpha.dim() != beta.dim())
    throw UsageError("pairing: component count mismatch");
  ScalarField out(alpha.grid());
  for (int a = 0; a < alpha.dim(); ++a) {
    const ScalarField& x = alpha.component(a);
    const ScalarField& y = beta.component(a);
    require_same_grid(x, y);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += x[i] * y[i];
  }
  return out;
}

double integrate(const ScalarField& u) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i];
  return s * u.grid()->cell_volume();
}

double inner(const ScalarField& u, const ScalarField& v) {
  require_same_grid(u, v);
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s * u.grid()->cell_volume();
}

double l2_norm(const ScalarField& u) { return std::sqrt(inner(u, u)); }

double linf_norm(const ScalarField& u) {
  double m = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) m = std::max(m, std::abs(u[i]));
  return m;
}

double min_value(const ScalarField& u) {
  return *std::min_element(u.values().begin(), u.values().end());
}

double max_value(const ScalarField& u) {
  return *std::max_element(u.values().begin(), u.values().end());
}

ScalarField l2_normalize(const ScalarField& u) {
  const double norm = l2_norm(u);
  if (!(norm > 0.0)) throw UsageError("l2_normalize: zero field");
  ScalarField out = u;
  out *= 1.0 / norm;
  return out;
}

double dirichlet_energy(const ScalarField& u) {
  const TorusGrid& g = *u.grid();
  double s = 0.0;
  for (int a = 0; a < g.dim(); ++a) {
    const double inv_h2 = 1.0 / (g.spacing(a) * g.spacing(a));
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double d = u[shift_up(g, a, i)] - u[i];
      s += d * d * inv_h2;
    }
  }
  return s * g.cell_volume();
}

ScalarField coordinate_field(const GridPtr& grid, int axis) {
  if (axis < 0 || axis >= grid->dim())
    throw UsageError("coordinate_field: axis out of range");
  ScalarField out(grid);
  for (std::size_t i = 0; i < grid->size(); ++i)
    out[i] = grid->coord(axis, grid->axis_index(axis, i));
  return out;
}

}  // namespace sklsc
