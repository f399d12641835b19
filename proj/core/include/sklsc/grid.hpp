#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "sklsc/errors.hpp"

namespace sklsc {

// Flat torus [0,L_1) x ... x [0,L_d) sampled on N_1 x ... x N_d uniform
// lattice points.  Sites are stored row-major with axis 0 slowest.  Grids are
// immutable after construction and shared by const pointer.
class TorusGrid {
 public:
  TorusGrid(std::vector<int> points, std::vector<double> lengths);

  int dim() const { return static_cast<int>(points_.size()); }
  std::size_t size() const { return size_; }
  int points(int axis) const { return points_[axis]; }
  double length(int axis) const { return lengths_[axis]; }
  double spacing(int axis) const { return spacing_[axis]; }
  std::size_t stride(int axis) const { return strides_[axis]; }
  double volume() const { return volume_; }
  // Measure of one lattice cell, prod h_i.  Quadrature is the lattice sum
  // times this weight (trapezoidal rule on a periodic grid).
  double cell_volume() const { return cell_volume_; }

  // Coordinate of lattice index i along an axis.
  double coord(int axis, int index) const { return spacing_[axis] * index; }
  // Lattice index along one axis of a flat site index.
  int axis_index(int axis, std::size_t site) const {
    return static_cast<int>((site / strides_[axis]) % points_[axis]);
  }

  bool same_shape(const TorusGrid& other) const {
    return points_ == other.points_ && lengths_ == other.lengths_;
  }

 private:
  std::vector<int> points_;
  std::vector<double> lengths_;
  std::vector<double> spacing_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
  double volume_ = 0.0;
  double cell_volume_ = 0.0;
};

using GridPtr = std::shared_ptr<const TorusGrid>;

GridPtr make_grid(std::vector<int> points, std::vector<double> lengths);

// Real-valued function sampled at lattice sites, value-semantic.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(GridPtr grid, double fill = 0.0);
  ScalarField(GridPtr grid, std::vector<double> values);

  const GridPtr& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  ScalarField& operator+=(const ScalarField& rhs);
  ScalarField& operator-=(const ScalarField& rhs);
  ScalarField& operator*=(double s);
  ScalarField& operator+=(double s);

  // True when every entry is finite.
  bool finite() const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);
ScalarField operator+(ScalarField a, double s);
ScalarField operator-(ScalarField a, double s);
// Pointwise product.
ScalarField pointwise(const ScalarField& a, const ScalarField& b);
// Pointwise map of an arbitrary function (exp, log, ...).
ScalarField map(const ScalarField& a, double (*fn)(double));

// d scalar components of a 1-form on the grid.
class CovectorField {
 public:
  CovectorField() = default;
  explicit CovectorField(GridPtr grid);

  const GridPtr& grid() const { return grid_; }
  int dim() const { return static_cast<int>(components_.size()); }
  const ScalarField& component(int axis) const { return components_[axis]; }
  ScalarField& component(int axis) { return components_[axis]; }

 private:
  GridPtr grid_;
  std::vector<ScalarField> components_;
};

// Second-order central-difference Laplacian, sum of second derivatives per
// axis with periodic wraparound.  Self-adjoint for the inner() pairing,
// annihilates constants, non-positive spectrum.
ScalarField laplacian(const ScalarField& u);

// Central-difference gradient, one component per axis.
CovectorField gradient(const ScalarField& u);

// Central-difference derivative along a single axis.
ScalarField axis_derivative(const ScalarField& u, int axis);

// |grad u|^2 built from the central-difference gradient.
ScalarField grad_norm_sq(const ScalarField& u);

// Pointwise pairing <alpha, beta> of two covectors.
ScalarField pairing(const CovectorField& alpha, const CovectorField& beta);

double integrate(const ScalarField& u);
double inner(const ScalarField& u, const ScalarField& v);
double l2_norm(const ScalarField& u);
double linf_norm(const ScalarField& u);
double min_value(const ScalarField& u);
double max_value(const ScalarField& u);
ScalarField l2_normalize(const ScalarField& u);

// Quadratic form inner(-lap u, u) evaluated through one-sided differences;
// equals inner(-laplacian(u), u) exactly, entry for entry, because the
// discrete Laplacian factors through the same forward differences.
double dirichlet_energy(const ScalarField& u);

// Field of coordinate values x_axis.
ScalarField coordinate_field(const GridPtr& grid, int axis);

void require_same_grid(const ScalarField& a, const ScalarField& b);

}  // namespace sklsc
