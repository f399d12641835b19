#include "sklsc/spectral.hpp"

#include <cmath>
#include <functional>
#include <vector>

#include "sklsc/errors.hpp"

namespace sklsc {

ScalarField apply(const SchrodingerOperator& op, const ScalarField& u) {
  require_same_grid(op.V, u);
  ScalarField out = laplacian(u);
  out *= -1.0;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += op.V[i] * u[i];
  return out;
}

namespace {

using ApplyFn = std::function<void(const std::vector<double>&, std::vector<double>&)>;
using ProjectFn = std::function<void(std::vector<double>&)>;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Conjugate gradients for a matrix-free SPD operator.  The optional
// projection is applied to residuals to keep iterates inside an invariant
// subspace (used to deflate constants out of the singular -laplacian).
int conjugate_gradient(const ApplyFn& A, const std::vector<double>& b,
                       std::vector<double>& x, double rel_tol, int max_iter,
                       const ProjectFn& project = nullptr) {
  const std::size_t n = b.size();
  std::vector<double> r = b, p(n), Ap(n);
  x.assign(n, 0.0);
  if (project) project(r);
  p = r;
  double rr = dot(r, r);
  const double target = rel_tol * rel_tol * std::max(rr, 1e-300);
  int iter = 0;
  while (rr > target && iter < max_iter) {
    A(p, Ap);
    if (project) project(Ap);
    const double alpha = rr / dot(p, Ap);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * Ap[i];
    }
    if (project) project(r);
    const double rr_new = dot(r, r);
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    ++iter;
  }
  return iter;
}

// y = -lap(x) + (V + shift) x, on raw vectors.
ApplyFn shifted_operator(const SchrodingerOperator& op, double shift) {
  return [&op, shift](const std::vector<double>& x, std::vector<double>& y) {
    ScalarField xf(op.grid, x);
    ScalarField lap = laplacian(xf);
    y.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      y[i] = -lap[i] + (op.V[i] + shift) * x[i];
  };
}

}  // namespace

double rayleigh(const ScalarField& u, const SchrodingerOperator& op) {
  require_same_grid(u, op.V);
  const double uu = inner(u, u);
  if (!(uu > 0.0)) throw UsageError("rayleigh: zero trial function");
  double vu = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) vu += op.V[i] * u[i] * u[i];
  vu *= u.grid()->cell_volume();
  return (dirichlet_energy(u) + vu) / uu;
}

GroundState ground_state(const SchrodingerOperator& op, double tol) {
  GroundStateOptions opts;
  opts.tol = tol;
  return ground_state(op, opts);
}

GroundState ground_state(const SchrodingerOperator& op, const GroundStateOptions& opts) {
  if (!(opts.tol > 0.0)) throw UsageError("ground_state: tol must be positive");
  const std::size_t n = op.grid->size();
  // Shift so the operator is positive definite: lambda0 >= min V > shift.
  const double shift = -(min_value(op.V) - 1.0);
  ApplyFn A = shifted_operator(op, shift);

  // The exact ground state is positive, so the constant start has a
  // uniformly positive overlap with it; the iteration is deterministic.
  ScalarField u(op.grid, 1.0 / std::sqrt(op.grid->volume()));
  const int cg_budget = static_cast<int>(10 * n + 200);
  GroundState gs;
  std::vector<double> x;
  for (int iter = 1; iter <= opts.max_outer; ++iter) {
    conjugate_gradient(A, u.values(), x, opts.cg_tol, cg_budget);
    ScalarField next(op.grid, x);
    next = l2_normalize(next);
    if (integrate(next) < 0.0) next *= -1.0;
    const double lambda = rayleigh(next, op);
    ScalarField res = apply(op, next);
    for (std::size_t i = 0; i < n; ++i) res[i] -= lambda * next[i];
    gs.lambda0 = lambda;
    gs.phi = next;
    gs.residual = l2_norm(res);
    gs.iterations = iter;
    if (gs.residual <= opts.tol) break;
    u = next;
  }
  if (gs.residual > opts.tol)
    throw SolverFailure("ground_state: residual " + std::to_string(gs.residual) +
                        " after " + std::to_string(gs.iterations) +
                        " iterations (tol " + std::to_string(opts.tol) + ")");
  // Deep wells push far-field entries below the roundoff floor; clamp
  // roundoff-scale negatives to zero, fail on anything genuinely negative.
  const double floor = -1e-12 * max_value(gs.phi);
  if (min_value(gs.phi) < floor || !(max_value(gs.phi) > 0.0))
    throw SolverFailure("ground_state: converged eigenvector is not positive");
  for (std::size_t i = 0; i < gs.phi.size(); ++i)
    if (gs.phi[i] < 0.0) gs.phi[i] = 0.0;
  return gs;
}

PoincareEstimate poincare_constant(const GridPtr& grid, double tol) {
  const std::size_t n = grid->size();
  const double inv_n = 1.0 / static_cast<double>(n);
  ProjectFn demean = [inv_n](std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean *= inv_n;
    for (double& x : v) x -= mean;
  };
  ScalarField zero_v(grid, 0.0);
  SchrodingerOperator minus_lap(grid, zero_v);
  ApplyFn A = shifted_operator(minus_lap, 0.0);

  // Deterministic mean-free start touching the lowest modes of every axis.
  ScalarField u(grid);
  for (std::size_t i = 0; i < n; ++i) {
    double v = 0.0;
    for (int a = 0; a < grid->dim(); ++a) {
      const double x = grid->coord(a, grid->axis_index(a, i));
      const double w = 2.0 * M_PI / grid->length(a);
      v += (1.0 + 0.1 * a) * (std::sin(w * x) + 0.3 * std::cos(w * x));
    }
    u[i] = v;
  }
  demean(u.values());
  u = l2_normalize(u);

  const int cg_budget = static_cast<int>(20 * n + 200);
  PoincareEstimate est;
  std::vector<double> x;
  for (int iter = 0; iter < 10000; ++iter) {
    conjugate_gradient(A, u.values(), x, 1e-14, cg_budget, demean);
    demean(x);
    ScalarField next(grid, x);
    next = l2_normalize(next);
    const double lambda = dirichlet_energy(next) / inner(next, next);
    ScalarField res = laplacian(next);
    for (std::size_t i = 0; i < n; ++i) res[i] = -res[i] - lambda * next[i];
    est.lambda1 = lambda;
    est.P = 1.0 / lambda;
    if (l2_norm(res) <= tol * std::max(lambda, 1.0)) return est;
    u = next;
  }
  throw SolverFailure("poincare_constant: deflated iteration did not converge");
}

double positivity_bound_value(const SchrodingerOperator& op, const PoincareEstimate& P) {
  const double norm_inf = linf_norm(op.V);
  const double total = integrate(op.V);
  const double vol = op.grid->volume();
  return P.P * norm_inf * (4.0 * vol * norm_inf + total) / total;
}

PositivityBound positivity_bound_check(const SchrodingerOperator& op,
                                       const PoincareEstimate& P) {
  const bool changes_sign = min_value(op.V) < 0.0 && max_value(op.V) > 0.0;
  const double total = integrate(op.V);
  // Relative zero band: a mean-free potential summed in floating point lands
  // near zero, not at it.
  const double band = 1e-12 * op.grid->volume() * linf_norm(op.V);
  if (!changes_sign || !(total > band)) return PositivityBound::conditions_not_met;
  return positivity_bound_value(op, P) <= 1.0 ? PositivityBound::bound_satisfied
                                              : PositivityBound::bound_violated;
}

const char* to_string(PositivityBound b) {
  switch (b) {
    case PositivityBound::bound_satisfied: return "bound-satisfied";
    case PositivityBound::bound_violated: return "bound-violated";
    case PositivityBound::conditions_not_met: return "conditions-not-met";
  }
  return "?";
}

}  // namespace sklsc
