#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sklsc/curvature.hpp"
#include "sklsc/grid.hpp"
#include "sklsc/spectral.hpp"

namespace sklsc {

// -lap + f(t) (V1 + h(t) V2) on (a,b), with the limit constants of the
// scaling/warping functions supplied alongside.
struct WarpedFamily {
  GridPtr grid;
  ScalarField V1, V2;
  std::function<double(double)> scale_fn;  // f(t)
  std::function<double(double)> warp_fn;   // h(t)
  double a = 0.0, b = 1.0;
  double C_f_a = 0.0;  // lim f at a
  double C_h_a = 0.0;  // lim h at a
  double C_h_b = 0.0;  // lim h at b
};

ScalarField warped_potential(const WarpedFamily& fam, double t);

// Copy of the family with V2 replaced by V2 + s (the control families used
// to probe the eigenvalue shift identity).
WarpedFamily shifted(const WarpedFamily& fam, double s);

// Checks positivity of f and h by dense sampling (1024 points), strict
// monotonicity of h when requested, V1 <= V2 pointwise, and
// int (V1 + C_h(a) V2) < 0.  Throws UsageError on violation.
void validate(const WarpedFamily& fam, bool require_monotone_warp = true);

// The kappa-parameterized Schrodinger family of a balanced base.
struct KappaFamily {
  BalancedBaseData base;
};

// The degenerate scaling constant (2n-1)/n.
double degenerate_kappa(int n);

inline constexpr double kDegenerateExclusionRadius = 1e-3;

// V_kappa = (2n-1)(n-1) / (2 (n kappa + 1 - 2n)^2) * (S_b - 2 kappa SC_b).
// Throws DegenerateKappaError inside the excluded band around (2n-1)/n.
ScalarField sklsc_potential(const KappaFamily& fam, double kappa,
                            double eps_deg = kDegenerateExclusionRadius);

// Multiplier of SC_b in the Kahler-base potential:
// (1-kappa)(2n-1)(n-1) / (n kappa + 1 - 2n)^2.
double kahler_multiplier(double kappa, int n);

// The partner scaling constant with an identical Kahler-base operator:
// (kappa1 - 1)(kappa2 - 1) = (n-1)^2 / n^2, mapping (1,(2n-1)/n) onto
// ((2n-1)/n, inf).
double kappa_dual(double kappa1, int n);

struct ScanSample {
  double param = 0.0;
  double lambda0 = 0.0;
  double residual = 0.0;
  bool converged = false;
};

struct KappaScan {
  std::vector<ScanSample> samples;                  // sorted by param
  std::vector<std::pair<double, double>> crossings;  // sign-change brackets
};

// Potential of a 1-parameter operator family.
using PotentialFn = std::function<ScalarField(double)>;

// One ground state per parameter; samples may be solved concurrently (capped
// by SKLSC_THREADS) but the result is a deterministic ordered merge.
KappaScan lambda_curve(const GridPtr& grid, const PotentialFn& potential,
                       std::vector<double> params, double tol = 1e-10);
KappaScan lambda_curve(const KappaFamily& fam, std::vector<double> params,
                       double tol = 1e-10);
KappaScan lambda_curve(const WarpedFamily& fam, std::vector<double> params,
                       double tol = 1e-10);

// Bisection on lambda0 over a sign-changing bracket.  Returns p* with
// |lambda0(p*)| <= tol_lambda and bracket width <= tol_param.
double find_zero_crossing(const GridPtr& grid, const PotentialFn& potential,
                          double lo, double hi, double tol_lambda,
                          double tol_param, double solver_tol = 1e-10);
// Kappa version: a bracket straddling the degenerate band is split and the
// sub-bracket containing the sign change is searched.
double find_zero_crossing(const KappaFamily& fam, double lo, double hi,
                          double tol_lambda, double tol_param,
                          double solver_tol = 1e-10);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct AdmissibleRegime {
  std::vector<Interval> intervals;  // open intervals, +-inf allowed
  std::string description;
};

// Scaling-constant regimes by Gauduchon sign: negative ->
// (1,(2n-1)/n) u ((2n-1)/n,inf); positive -> (-inf,1); zero -> empty.
AdmissibleRegime admissible_regime(GauduchonSign sign, int n);

enum class NegativeBranch { b1a, b1b, b1c, b2a, b2b, b3 };
const char* to_string(NegativeBranch b);

struct ClassifyOptions {
  double integral_zero_band = 1e-8;  // relative, x volume x ||Q||_inf
  double tol_q_rel = 1e-8;           // zero detection, x ||Q||_inf
  double tol_nz_rel = 1e-6;          // nonvanishing detection
};

struct BranchReport {
  NegativeBranch branch = NegativeBranch::b1b;
  double q_integral = 0.0;
  bool q_changes_sign = false;
  bool q_nonnegative = false;
  std::size_t q_zero_sites = 0;
  std::size_t contact_sites = 0;  // zeros of Q where neither S_b nor SC_b vanish
};

// Branch of the negative-Gauduchon analysis, keyed off
// Q = S_b - 2 ((2n-1)/n) SC_b.
BranchReport classify_negative_branch(const BalancedBaseData& base,
                                      const ClassifyOptions& opts = {});

struct DegenerateReport {
  double kappa = 0.0;  // (2n-1)/n
  bool sc_nonpositive = false;
  bool sc_not_identically_zero = false;
  bool q_nonnegative = false;
  std::size_t q_zero_sites = 0;
  bool passes = false;  // all necessary conditions hold
};

// Necessary conditions for an sKlsc representative at the degenerate
// scaling constant: SC_b <= 0 and not identically zero, Q >= 0, and the
// discrete zero set of Q containing at least two sites.
DegenerateReport degenerate_obstruction_check(const BalancedBaseData& base,
                                              const ClassifyOptions& opts = {});

struct InstabilityReport {
  KappaScan scan;
  // Sampled parameters whose lowest eigenvalue failed to be negative.
  std::vector<double> counterexamples;
};

// Scans lambda0 over n_samples uniform parameters after checking the
// contact-point hypothesis: V1 + C_h(b) V2 one-signed, touching zero at a
// site where neither fixed potential vanishes.
InstabilityReport warped_instability_scan(const WarpedFamily& fam,
                                          int n_samples, double tol = 1e-10);

// CSV: header param,lambda0,residual,converged then one row per sample;
// crossings appended as "# crossing lo hi" comment lines.
void write_scan_csv(std::ostream& os, const KappaScan& scan);

// Detects sign-change brackets between consecutive converged samples and
// stores them on the scan.  Brackets straddling skip_band are dropped.
void detect_crossings(KappaScan& scan,
                      std::optional<std::pair<double, double>> skip_band = {});

}  // namespace sklsc
