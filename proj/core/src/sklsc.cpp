#include "sklsc/sklsc.hpp"

#include <cmath>
#include <limits>

#include "sklsc/errors.hpp"
#include "sklsc/field_io.hpp"
#include "sklsc/spectral.hpp"

namespace sklsc {

double exponent_multiplier(double kappa, int n) {
  return (2.0 * n - 1.0 - n * kappa) / ((2.0 * n - 1.0) * (n - 1.0));
}

ScalarField reconstruct_exponent(const ScalarField& phi, double kappa, int n) {
  if (n < 2) throw UsageError("reconstruct_exponent: n must be >= 2");
  if (!(min_value(phi) > 0.0))
    throw UsageError("reconstruct_exponent: ground state must be positive");
  const double c = exponent_multiplier(kappa, n);
  ScalarField f(phi.grid());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = -c * std::log(phi[i]);
  return f;
}

std::pair<double, double> verify(const SklscSolution& sol,
                                 const BalancedBaseData& base) {
  const int n = base.n;
  require_same_grid(sol.f, base.S_b);
  const double scale =
      std::max({linf_norm(base.S_b), linf_norm(base.SC_b), 1.0});
  const ScalarField lap = laplacian(sol.f);
  const ScalarField gsq = grad_norm_sq(sol.f);
  const double c_lap = 2.0 * n - 1.0 - n * sol.kappa;
  const double c_gsq = (2.0 * n - 1.0) * (n - 1.0);

  double sup = 0.0;
  for (std::size_t i = 0; i < lap.size(); ++i) {
    const double defect = c_lap * lap[i] - c_gsq * gsq[i] +
                          0.5 * (base.S_b[i] - 2.0 * sol.kappa * base.SC_b[i]);
    sup = std::max(sup, std::abs(defect));
  }

  ScalarField rhs = base.SC_b;
  rhs *= -2.0 * sol.kappa;
  rhs += base.S_b;
  const double lhs_int = integrate(gsq);
  const double rhs_int = integrate(rhs) / (2.0 * c_gsq);
  const double vol = base.grid->volume();
  return {sup / scale, std::abs(lhs_int - rhs_int) / (vol * scale)};
}

double verify_geometric(const SklscSolution& sol,
                        const HermitianConformalMetric& base) {
  // The candidate sKlsc metric is e^{-2f} * (base metric) = e^{2F} * flat
  // with F = base exponent - f.
  ScalarField F = base.f;
  F -= sol.f;
  const HermitianConformalMetric m(base.n, base.grid, F);

  BalancedBaseData flat;
  flat.n = base.n;
  flat.grid = base.grid;
  flat.S_b = ScalarField(base.grid);
  flat.SC_b = ScalarField(base.grid);
  flat.kind = BaseKind::kahler;

  const ScalarField S = riemannian_scalar_conformal(flat, F, base.n);
  const ScalarField SC = chern_scalar_direct(m);
  ScalarField defect = SC;
  defect *= -2.0 * sol.kappa;
  defect += S;
  const double scale = std::max({linf_norm(S), linf_norm(SC), 1.0});
  return linf_norm(defect) / scale;
}

namespace {

constexpr double kBoundaryOffset = 1e-2;
constexpr double kPi = 3.14159265358979323846;

// Sample points for one open sub-regime.  Bounded intervals get uniform
// interior points; half-lines approach the finite endpoint at a fixed offset
// and stretch to large parameters through a tangent map.
std::vector<double> regime_params(const Interval& iv, int m) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m));
  const bool lo_inf = std::isinf(iv.lo);
  const bool hi_inf = std::isinf(iv.hi);
  for (int j = 0; j < m; ++j) {
    const double u = (j + 0.5) / m;
    if (!lo_inf && !hi_inf) {
      out.push_back(iv.lo + (iv.hi - iv.lo) * u);
    } else if (lo_inf) {
      out.push_back(iv.hi - (kBoundaryOffset + std::tan(u * kPi / 2.0)));
    } else {
      out.push_back(iv.lo + kBoundaryOffset + std::tan(u * kPi / 2.0));
    }
  }
  return out;
}

std::string interval_label(const Interval& iv, int n) {
  auto fmt = [](double v) {
    if (std::isinf(v)) return std::string(v > 0 ? "inf" : "-inf");
    return format_double(v);
  };
  (void)n;
  return "(" + fmt(iv.lo) + ", " + fmt(iv.hi) + ")";
}

void scan_regime(SolveReport& report, const KappaFamily& fam,
                 const Interval& iv, const std::string& label,
                 const SolverTolerances& tol) {
  std::vector<double> params = regime_params(iv, tol.samples_per_regime);
  RegimeScan rs;
  rs.label = label;
  rs.scan = lambda_curve(fam, std::move(params), tol.solver_tol);
  for (const auto& [lo, hi] : rs.scan.crossings) {
    const double kappa = find_zero_crossing(fam, lo, hi, tol.tol_lambda,
                                            tol.tol_param, tol.solver_tol);
    const GroundState gs = ground_state(
        SchrodingerOperator(fam.base.grid, sklsc_potential(fam, kappa)),
        tol.solver_tol);
    SklscSolution sol;
    sol.kappa = kappa;
    sol.lambda0 = gs.lambda0;
    sol.phi = gs.phi;
    sol.f = reconstruct_exponent(gs.phi, kappa, fam.base.n);
    sol.regime = label;
    std::tie(sol.residual_pde, sol.residual_integral) = verify(sol, fam.base);
    report.solutions.push_back(std::move(sol));
  }
  report.scans.push_back(std::move(rs));
}

}  // namespace

SolveReport solve(const SklscProblem& problem) {
  const BalancedBaseData& base = problem.base;
  validate(base);
  const int n = base.n;
  const double kd = degenerate_kappa(n);
  const KappaFamily fam{base};

  SolveReport report;
  report.sign = gauduchon_sign(base);

  std::vector<std::pair<std::string, Interval>> regimes;
  if (problem.regime) {
    regimes.emplace_back(interval_label(*problem.regime, n), *problem.regime);
  } else {
    switch (report.sign) {
      case GauduchonSign::zero: {
        report.notes.push_back(
            "zero Gauduchon degree: no scaling constant is admissible; the "
            "attached scan is evidence only");
        RegimeScan rs;
        rs.label = "evidence (-3, 5)";
        rs.scan = lambda_curve(fam, regime_params({-3.0, 5.0}, problem.tol.samples_per_regime),
                               problem.tol.solver_tol);
        report.scans.push_back(std::move(rs));
        return report;
      }
      case GauduchonSign::negative: {
        const double inf = std::numeric_limits<double>::infinity();
        bool scan_lower = true;
        if (!is_kahler_kind(base.kind)) {
          report.branch = classify_negative_branch(base);
          report.notes.push_back(std::string("negative-degree branch ") +
                                 to_string(report.branch->branch));
          switch (report.branch->branch) {
            case NegativeBranch::b1c:
              scan_lower = false;
              report.notes.push_back(
                  "critical combination is non-negative with contact zeros: "
                  "no crossing below the degenerate constant, scanning "
                  "((2n-1)/n, inf) only");
              break;
            case NegativeBranch::b2b:
              report.notes.push_back(
                  "critical combination vanishes identically: the degenerate "
                  "scaling constant itself is the only candidate and lies in "
                  "the excluded band");
              break;
            default:
              break;
          }
        }
        if (scan_lower) regimes.emplace_back("(1, (2n-1)/n)", Interval{1.0, kd});
        regimes.emplace_back("((2n-1)/n, inf)", Interval{kd, inf});
        break;
      }
      case GauduchonSign::positive: {
        const double inf = std::numeric_limits<double>::infinity();
        regimes.emplace_back("(-inf, 1)", Interval{-inf, 1.0});
        break;
      }
    }
  }

  for (const auto& [label, iv] : regimes)
    scan_regime(report, fam, iv, label, problem.tol);

  if (report.solutions.empty())
    report.notes.push_back("no lambda0 zero crossing detected in the scanned regimes");
  if (base.kind == BaseKind::synthetic_kahler ||
      base.kind == BaseKind::synthetic_balanced)
    report.notes.push_back(
        "synthetic base data: curvature fields are prescribed directly and "
        "need not arise from an actual Hermitian metric");
  return report;
}

ScalarFlatBridgeReport scalar_flat_bridge(const BalancedBaseData& base,
                                          const SolverTolerances& tol) {
  validate(base);
  if (!is_kahler_kind(base.kind))
    throw UsageError("scalar_flat_bridge: requires a Kahler-kind base");
  const int n = base.n;
  ScalarFlatBridgeReport rep;
  rep.kappa = (2.0 * n - 1.0) / (static_cast<double>(n) * n);
  rep.multiplier = kahler_multiplier(rep.kappa, n);
  rep.sklsc_exponent = 2.0 / n;
  rep.scalar_flat_exponent = 2.0 / (n - 1.0);

  const KappaFamily fam{base};
  const ScalarField V = sklsc_potential(fam, rep.kappa);
  if (linf_norm(V) == 0.0) {
    rep.lambda0 = 0.0;
    rep.status = "flat bridge: potential vanishes identically, lambda0 = 0";
    return rep;
  }
  const SchrodingerOperator op(base.grid, V);
  const GroundState gs = ground_state(op, tol.solver_tol);
  rep.lambda0 = gs.lambda0;
  const PoincareEstimate P = poincare_constant(base.grid);
  if (positivity_bound_check(op, P) != PositivityBound::conditions_not_met)
    rep.bound_value = positivity_bound_value(op, P);
  if (std::abs(gs.lambda0) <= tol.tol_lambda)
    rep.status =
        "lambda0 = 0: the sKlsc and Riemannian-scalar-flat representatives "
        "coincide at this scaling constant";
  else if (gs.lambda0 > 0.0)
    rep.status = "lambda0 > 0: no representative at the bridge constant";
  else
    rep.status = "lambda0 < 0 at the bridge constant";
  return rep;
}

}  // namespace sklsc
