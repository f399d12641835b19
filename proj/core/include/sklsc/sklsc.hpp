#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sklsc/curvature.hpp"
#include "sklsc/family.hpp"

namespace sklsc {

struct SolverTolerances {
  double tol_lambda = 1e-8;
  double tol_param = 1e-8;
  double solver_tol = 1e-10;
  double pde_residual_factor = 10.0;  // accept residual_pde <= factor * h^2
  int samples_per_regime = 64;
};

struct SklscProblem {
  BalancedBaseData base;
  // Empty = scan every admissible sub-regime; otherwise an explicit interval.
  std::optional<Interval> regime;
  SolverTolerances tol;
};

struct SklscSolution {
  double kappa = 0.0;
  double lambda0 = 0.0;
  ScalarField phi;  // positive, unit L2
  ScalarField f;    // conformal exponent, metric e^{-2f} g_b
  double residual_pde = 0.0;
  double residual_integral = 0.0;
  std::string regime;
};

struct RegimeScan {
  std::string label;
  KappaScan scan;
};

struct SolveReport {
  GauduchonSign sign = GauduchonSign::zero;
  std::optional<BranchReport> branch;  // negative-degree non-Kahler bases only
  std::vector<RegimeScan> scans;
  std::vector<SklscSolution> solutions;
  std::vector<std::string> notes;
};

// Conformal exponent from the ground state:
// f = -[(2n-1-n kappa) / ((2n-1)(n-1))] log(phi), i.e.
// e^{-2f} = phi^{2(2n-1-n kappa)/((2n-1)(n-1))}.
ScalarField reconstruct_exponent(const ScalarField& phi, double kappa, int n);

// Multiplier of log(phi) in the exponent above (exposed for the duality
// identities).
double exponent_multiplier(double kappa, int n);

// Residuals of a candidate solution against the base data:
//   residual_pde      sup-norm defect of
//                     (2n-1-n kappa) lap f - (2n-1)(n-1)|grad f|^2
//                       + (S_b - 2 kappa SC_b)/2,
//                     divided by scale = max(||S_b||, ||SC_b||, 1)
//   residual_integral defect of
//                     int |grad f|^2 = int (S_b - 2 kappa SC_b) / (2(2n-1)(n-1)),
//                     divided by volume * scale
std::pair<double, double> verify(const SklscSolution& sol,
                                 const BalancedBaseData& base);

// Geometric-mode check: the sKlsc metric e^{-2f} * (base metric) is pushed
// through the curvature module and || S - 2 kappa S_C ||_inf / scale is
// returned, with scale = max(||S||, ||S_C||, 1) of the computed fields.
double verify_geometric(const SklscSolution& sol, const HermitianConformalMetric& base);

// Classify the base, scan every admissible sub-regime, bisect each
// lambda0 sign change, and reconstruct the conformal exponent per solution.
SolveReport solve(const SklscProblem& problem);

struct ScalarFlatBridgeReport {
  double kappa = 0.0;       // (2n-1)/n^2
  double multiplier = 0.0;  // kahler_multiplier at that kappa, = (n-1)/(2n-1)
  std::string status;       // obstruction tag or crossing evidence
  std::optional<double> lambda0;
  std::optional<double> bound_value;  // positivity bound when evaluated
  // Exponents of phi for the two conformal factors when lambda0 = 0:
  // the sKlsc factor phi^{2/n} and the scalar-flat factor phi^{2/(n-1)}.
  double sklsc_exponent = 0.0;
  double scalar_flat_exponent = 0.0;
};

// Probe of the Riemannian-scalar-flat bridge at kappa = (2n-1)/n^2 for
// Kahler-kind bases.
ScalarFlatBridgeReport scalar_flat_bridge(const BalancedBaseData& base,
                                          const SolverTolerances& tol = {});

}  // namespace sklsc
