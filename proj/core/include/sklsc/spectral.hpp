#pragma once

#include "sklsc/grid.hpp"

namespace sklsc {

// L_V = -laplacian + V on a periodic grid.
struct SchrodingerOperator {
  GridPtr grid;
  ScalarField V;

  SchrodingerOperator(GridPtr g, ScalarField potential)
      : grid(std::move(g)), V(std::move(potential)) {
    if (!V.grid()->same_shape(*grid))
      throw UsageError("SchrodingerOperator: potential grid mismatch");
    if (!V.finite())
      throw UsageError("SchrodingerOperator: potential has non-finite values");
  }
};

ScalarField apply(const SchrodingerOperator& op, const ScalarField& u);

struct GroundState {
  double lambda0 = 0.0;
  ScalarField phi;      // positive, unit L2 norm
  double residual = 0.0;  // ||L phi - lambda0 phi||_2
  int iterations = 0;
};

struct GroundStateOptions {
  double tol = 1e-10;   // residual target
  int max_outer = 20000;
  double cg_tol = 1e-14;
};

// Lowest eigenvalue and positive normalized eigenfunction of L_V, by inverse
// iteration with the conservative shift min(V) - 1 (which keeps the shifted
// operator positive definite).  Deterministic; throws SolverFailure when the
// iteration budget is exhausted or the converged vector is not positive.
GroundState ground_state(const SchrodingerOperator& op, double tol = 1e-10);
GroundState ground_state(const SchrodingerOperator& op, const GroundStateOptions& opts);

// Discrete Rayleigh quotient (dirichlet_energy(u) + <Vu,u>) / <u,u>.
double rayleigh(const ScalarField& u, const SchrodingerOperator& op);

struct PoincareEstimate {
  double P = 0.0;        // 1 / lambda1
  double lambda1 = 0.0;  // first nonzero eigenvalue of -laplacian
};

// Smallest nonzero eigenvalue of the discrete -laplacian, by inverse
// iteration deflated against constants.  P reflects the stencil's symbol,
// not the continuum value.
PoincareEstimate poincare_constant(const GridPtr& grid, double tol = 1e-12);

enum class PositivityBound { bound_satisfied, bound_violated, conditions_not_met };

// The lowest-eigenvalue positivity criterion
//   P ||V||_inf (4 Vol ||V||_inf + int V) / int V <= 1,
// applicable only when V changes sign and int V > 0.
PositivityBound positivity_bound_check(const SchrodingerOperator& op,
                                       const PoincareEstimate& P);

// Value of the left-hand side above (for reporting).
double positivity_bound_value(const SchrodingerOperator& op,
                              const PoincareEstimate& P);

const char* to_string(PositivityBound b);

}  // namespace sklsc
