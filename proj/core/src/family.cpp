#include "sklsc/family.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <thread>

#include "sklsc/errors.hpp"
#include "sklsc/field_io.hpp"

namespace sklsc {

namespace {

int scan_thread_count(std::size_t jobs) {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("SKLSC_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return static_cast<int>(std::min<std::size_t>(n, jobs));
}

// Static partition of [0, jobs) across worker threads.
void parallel_for(std::size_t jobs, const std::function<void(std::size_t)>& body) {
  const int workers = scan_thread_count(jobs);
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = static_cast<std::size_t>(w); i < jobs;
           i += static_cast<std::size_t>(workers))
        body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

ScalarField warped_potential(const WarpedFamily& fam, double t) {
  if (!(t > fam.a && t < fam.b))
    throw UsageError("warped_potential: parameter outside (a,b)");
  const double f = fam.scale_fn(t);
  const double h = fam.warp_fn(t);
  ScalarField out = fam.V2;
  out *= h;
  out += fam.V1;
  out *= f;
  return out;
}

WarpedFamily shifted(const WarpedFamily& fam, double s) {
  WarpedFamily out = fam;
  out.V2 += s;
  return out;
}

void validate(const WarpedFamily& fam, bool require_monotone_warp) {
  if (!(fam.a < fam.b)) throw UsageError("WarpedFamily: empty parameter interval");
  require_same_grid(fam.V1, fam.V2);
  const int kSamples = 1024;
  double prev_h = -std::numeric_limits<double>::infinity();
  for (int i = 1; i <= kSamples; ++i) {
    const double t = fam.a + (fam.b - fam.a) * i / (kSamples + 1.0);
    const double f = fam.scale_fn(t);
    const double h = fam.warp_fn(t);
    if (!(f > 0.0) || !std::isfinite(f))
      throw UsageError("WarpedFamily: scaling function must be positive on (a,b)");
    if (!(h > 0.0) || !std::isfinite(h))
      throw UsageError("WarpedFamily: warping function must be positive on (a,b)");
    if (require_monotone_warp && !(h > prev_h))
      throw UsageError("WarpedFamily: warping function must be strictly increasing");
    prev_h = h;
  }
  for (std::size_t i = 0; i < fam.V1.size(); ++i)
    if (fam.V1[i] > fam.V2[i])
      throw UsageError("WarpedFamily: fixed potentials must satisfy V1 <= V2");
  ScalarField combo = fam.V2;
  combo *= fam.C_h_a;
  combo += fam.V1;
  if (!(integrate(combo) < 0.0))
    throw UsageError("WarpedFamily: int (V1 + C_h(a) V2) must be negative");
}

double degenerate_kappa(int n) { return (2.0 * n - 1.0) / n; }

ScalarField sklsc_potential(const KappaFamily& fam, double kappa, double eps_deg) {
  const int n = fam.base.n;
  if (std::abs(kappa - degenerate_kappa(n)) < eps_deg)
    throw DegenerateKappaError(
        "kappa = " + format_double(kappa) + " is within " + format_double(eps_deg) +
        " of the degenerate scaling constant (2n-1)/n = " +
        format_double(degenerate_kappa(n)));
  const double denom = n * kappa + 1.0 - 2.0 * n;
  const double coeff = (2.0 * n - 1.0) * (n - 1.0) / (2.0 * denom * denom);
  ScalarField out = fam.base.SC_b;
  out *= -2.0 * kappa;
  out += fam.base.S_b;
  out *= coeff;
  return out;
}

double kahler_multiplier(double kappa, int n) {
  const double denom = n * kappa + 1.0 - 2.0 * n;
  return (1.0 - kappa) * (2.0 * n - 1.0) * (n - 1.0) / (denom * denom);
}

double kappa_dual(double kappa1, int n) {
  if (!(kappa1 > 1.0 && kappa1 < degenerate_kappa(n)))
    throw UsageError("kappa_dual: kappa1 must lie in (1, (2n-1)/n)");
  const double r = (n - 1.0) / n;
  return 1.0 + r * r / (kappa1 - 1.0);
}

void detect_crossings(KappaScan& scan,
                      std::optional<std::pair<double, double>> skip_band) {
  scan.crossings.clear();
  for (std::size_t i = 0; i + 1 < scan.samples.size(); ++i) {
    const ScanSample& lo = scan.samples[i];
    const ScanSample& hi = scan.samples[i + 1];
    if (!lo.converged || !hi.converged) continue;
    if (!(lo.lambda0 * hi.lambda0 < 0.0)) continue;
    if (skip_band && lo.param < skip_band->second && hi.param > skip_band->first)
      continue;
    scan.crossings.emplace_back(lo.param, hi.param);
  }
}

KappaScan lambda_curve(const GridPtr& grid, const PotentialFn& potential,
                       std::vector<double> params, double tol) {
  std::sort(params.begin(), params.end());
  KappaScan scan;
  scan.samples.resize(params.size());
  parallel_for(params.size(), [&](std::size_t i) {
    ScanSample& s = scan.samples[i];
    s.param = params[i];
    try {
      const GroundState gs = ground_state(SchrodingerOperator(grid, potential(params[i])), tol);
      s.lambda0 = gs.lambda0;
      s.residual = gs.residual;
      s.converged = true;
    } catch (const SolverFailure&) {
      s.converged = false;
    }
  });
  detect_crossings(scan);
  return scan;
}

KappaScan lambda_curve(const KappaFamily& fam, std::vector<double> params, double tol) {
  // Parameters inside the degenerate exclusion band are dropped up front.
  const double kd = degenerate_kappa(fam.base.n);
  std::erase_if(params, [kd](double k) {
    return std::abs(k - kd) < kDegenerateExclusionRadius;
  });
  KappaScan scan = lambda_curve(
      fam.base.grid, [&fam](double k) { return sklsc_potential(fam, k); },
      std::move(params), tol);
  detect_crossings(scan, std::pair{kd - kDegenerateExclusionRadius,
                                   kd + kDegenerateExclusionRadius});
  return scan;
}

KappaScan lambda_curve(const WarpedFamily& fam, std::vector<double> params, double tol) {
  return lambda_curve(fam.grid, [&fam](double t) { return warped_potential(fam, t); },
                      std::move(params), tol);
}

double find_zero_crossing(const GridPtr& grid, const PotentialFn& potential,
                          double lo, double hi, double tol_lambda,
                          double tol_param, double solver_tol) {
  if (!(lo < hi)) throw BracketError("find_zero_crossing: empty bracket");
  auto lambda_at = [&](double p) {
    return ground_state(SchrodingerOperator(grid, potential(p)), solver_tol).lambda0;
  };
  double f_lo = lambda_at(lo);
  double f_hi = lambda_at(hi);
  if (std::abs(f_lo) <= tol_lambda) return lo;
  if (std::abs(f_hi) <= tol_lambda) return hi;
  if (f_lo * f_hi > 0.0)
    throw BracketError("find_zero_crossing: lambda0 does not change sign over bracket");
  double mid = 0.5 * (lo + hi);
  while (hi - lo > tol_param) {
    mid = 0.5 * (lo + hi);
    const double f_mid = lambda_at(mid);
    if (std::abs(f_mid) <= tol_lambda) return mid;
    if (f_lo * f_mid < 0.0) {
      hi = mid;
      f_hi = f_mid;
    } else {
      lo = mid;
      f_lo = f_mid;
    }
  }
  return 0.5 * (lo + hi);
}

double find_zero_crossing(const KappaFamily& fam, double lo, double hi,
                          double tol_lambda, double tol_param, double solver_tol) {
  const double kd = degenerate_kappa(fam.base.n);
  // Nudged outward so the edge evaluations clear the exclusion test despite
  // rounding of kd - radius.
  const double band_lo = kd - 1.01 * kDegenerateExclusionRadius;
  const double band_hi = kd + 1.01 * kDegenerateExclusionRadius;
  PotentialFn pot = [&fam](double k) { return sklsc_potential(fam, k); };
  if (lo < band_lo && hi > band_hi) {
    // The bracket straddles the excluded band: search whichever side still
    // carries the sign change.
    auto lambda_at = [&](double p) {
      return ground_state(SchrodingerOperator(fam.base.grid, pot(p)), solver_tol).lambda0;
    };
    const double f_lo = lambda_at(lo);
    if (f_lo * lambda_at(band_lo) < 0.0)
      return find_zero_crossing(fam.base.grid, pot, lo, band_lo, tol_lambda,
                                tol_param, solver_tol);
    return find_zero_crossing(fam.base.grid, pot, band_hi, hi, tol_lambda,
                              tol_param, solver_tol);
  }
  return find_zero_crossing(fam.base.grid, pot, lo, hi, tol_lambda, tol_param,
                            solver_tol);
}

AdmissibleRegime admissible_regime(GauduchonSign sign, int n) {
  const double inf = std::numeric_limits<double>::infinity();
  const double kd = degenerate_kappa(n);
  AdmissibleRegime out;
  switch (sign) {
    case GauduchonSign::negative:
      out.intervals = {{1.0, kd}, {kd, inf}};
      out.description = "(1, (2n-1)/n) u ((2n-1)/n, inf)";
      break;
    case GauduchonSign::positive:
      out.intervals = {{-inf, 1.0}};
      out.description = "(-inf, 1)";
      break;
    case GauduchonSign::zero:
      out.description = "empty (zero Gauduchon degree admits no sKlsc representative)";
      break;
  }
  return out;
}

const char* to_string(NegativeBranch b) {
  switch (b) {
    case NegativeBranch::b1a: return "1a";
    case NegativeBranch::b1b: return "1b";
    case NegativeBranch::b1c: return "1c";
    case NegativeBranch::b2a: return "2a";
    case NegativeBranch::b2b: return "2b";
    case NegativeBranch::b3: return "3";
  }
  return "?";
}

namespace {

ScalarField critical_combination(const BalancedBaseData& base) {
  ScalarField q = base.SC_b;
  q *= -2.0 * degenerate_kappa(base.n);
  q += base.S_b;
  return q;
}

}  // namespace

BranchReport classify_negative_branch(const BalancedBaseData& base,
                                      const ClassifyOptions& opts) {
  const ScalarField q = critical_combination(base);
  const double q_norm = linf_norm(q);
  const double tol_q = opts.tol_q_rel * std::max(q_norm, 1e-300);
  const double tol_nz =
      opts.tol_nz_rel * std::max({linf_norm(base.S_b), linf_norm(base.SC_b), 1e-300});
  const double band = opts.integral_zero_band * base.grid->volume() *
                      std::max(q_norm, 1e-300);

  BranchReport rep;
  rep.q_integral = integrate(q);
  rep.q_changes_sign = min_value(q) < -tol_q && max_value(q) > tol_q;
  rep.q_nonnegative = min_value(q) >= -tol_q;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (std::abs(q[i]) <= tol_q) {
      ++rep.q_zero_sites;
      if (std::abs(base.S_b[i]) > tol_nz && std::abs(base.SC_b[i]) > tol_nz)
        ++rep.contact_sites;
    }
  }
  if (rep.q_integral < -band) {
    rep.branch = NegativeBranch::b3;
  } else if (rep.q_integral <= band) {
    rep.branch = rep.q_changes_sign ? NegativeBranch::b2a : NegativeBranch::b2b;
  } else if (rep.q_changes_sign) {
    rep.branch = NegativeBranch::b1a;
  } else {
    rep.branch = rep.contact_sites > 0 ? NegativeBranch::b1c : NegativeBranch::b1b;
  }
  return rep;
}

DegenerateReport degenerate_obstruction_check(const BalancedBaseData& base,
                                              const ClassifyOptions& opts) {
  const ScalarField q = critical_combination(base);
  const double q_norm = linf_norm(q);
  const double tol_q = opts.tol_q_rel * std::max(q_norm, 1e-300);
  const double sc_norm = linf_norm(base.SC_b);
  const double tol_sc = opts.tol_q_rel * std::max(sc_norm, 1e-300);

  DegenerateReport rep;
  rep.kappa = degenerate_kappa(base.n);
  rep.sc_nonpositive = max_value(base.SC_b) <= tol_sc;
  rep.sc_not_identically_zero = sc_norm > tol_sc;
  rep.q_nonnegative = min_value(q) >= -tol_q;
  for (std::size_t i = 0; i < q.size(); ++i)
    if (std::abs(q[i]) <= tol_q) ++rep.q_zero_sites;
  rep.passes = rep.sc_nonpositive && rep.sc_not_identically_zero &&
               rep.q_nonnegative && rep.q_zero_sites >= 2;
  return rep;
}

InstabilityReport warped_instability_scan(const WarpedFamily& fam, int n_samples,
                                          double tol) {
  validate(fam, /*require_monotone_warp=*/true);
  // Contact-point hypothesis: V1 + C_h(b) V2 touches zero one-sidedly at a
  // site where neither fixed potential vanishes.
  ScalarField combo = fam.V2;
  combo *= fam.C_h_b;
  combo += fam.V1;
  const double combo_norm = std::max(linf_norm(combo), 1e-300);
  const double tol_q = 1e-8 * combo_norm;
  const double tol_nz =
      1e-6 * std::max({linf_norm(fam.V1), linf_norm(fam.V2), 1e-300});
  if (min_value(combo) < -tol_q && max_value(combo) > tol_q)
    throw UsageError("warped_instability_scan: V1 + C_h(b) V2 must not change sign");
  bool contact = false;
  for (std::size_t i = 0; i < combo.size(); ++i)
    if (std::abs(combo[i]) <= tol_q && std::abs(fam.V1[i]) > tol_nz &&
        std::abs(fam.V2[i]) > tol_nz)
      contact = true;
  if (!contact)
    throw UsageError(
        "warped_instability_scan: no contact point with non-vanishing fixed potentials");

  std::vector<double> params;
  for (int j = 1; j <= n_samples; ++j)
    params.push_back(fam.a + (fam.b - fam.a) * j / (n_samples + 1.0));
  InstabilityReport rep;
  rep.scan = lambda_curve(fam, std::move(params), tol);
  for (const ScanSample& s : rep.scan.samples)
    if (!s.converged || s.lambda0 >= 0.0) rep.counterexamples.push_back(s.param);
  return rep;
}

void write_scan_csv(std::ostream& os, const KappaScan& scan) {
  os << "param,lambda0,residual,converged\n";
  for (const ScanSample& s : scan.samples)
    os << format_double(s.param) << ',' << format_double(s.lambda0) << ','
       << format_double(s.residual) << ',' << (s.converged ? 1 : 0) << '\n';
  for (const auto& [lo, hi] : scan.crossings)
    os << "# crossing " << format_double(lo) << ' ' << format_double(hi) << '\n';
}

}  // namespace sklsc
