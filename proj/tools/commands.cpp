#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "sklsc/config.hpp"
#include "sklsc/errors.hpp"
#include "sklsc/expression.hpp"
#include "sklsc/field_io.hpp"
#include "sklsc/sklsc.hpp"
#include "sklsc/spectral.hpp"

namespace fs = std::filesystem;

namespace sklsc::cli {

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

void write_csv_file(const std::string& path, const KappaScan& scan) {
  if (path.empty() || path == "-") {
    write_scan_csv(std::cout, scan);
    return;
  }
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open output file '" + path + "'");
  write_scan_csv(os, scan);
}

void print_report_header(const SolveReport& report) {
  std::cout << "gauduchon sign: " << to_string(report.sign) << "\n";
  if (report.branch)
    std::cout << "negative-degree branch: " << to_string(report.branch->branch)
              << "\n";
  for (const std::string& note : report.notes) std::cout << "note: " << note << "\n";
  for (const RegimeScan& rs : report.scans)
    std::cout << "regime " << rs.label << ": " << rs.scan.samples.size()
              << " samples, " << rs.scan.crossings.size() << " crossing bracket(s)\n";
}

void write_solution_bundle(const fs::path& dir, const SklscSolution& sol,
                           const SolveReport& report) {
  fs::create_directories(dir);
  std::map<std::string, std::string> meta{
      {"kappa", format_double(sol.kappa)},
      {"lambda0", format_double(sol.lambda0)},
      {"residual_pde", format_double(sol.residual_pde)},
      {"residual_integral", format_double(sol.residual_integral)},
      {"regime", sol.regime},
      {"gauduchon_sign", to_string(report.sign)},
  };
  if (report.branch) meta["branch"] = to_string(report.branch->branch);
  write_meta(dir / "solution.meta", meta);
  write_field(dir / "phi.field", sol.phi);
  write_field(dir / "f.field", sol.f);
}

SklscProblem problem_from_config(const Config& cfg) {
  const GridPtr grid = build_grid(cfg);
  const ScanRequest req = build_scan_request(cfg);
  SklscProblem problem;
  problem.base = build_base(cfg, grid);
  problem.regime = req.regime;
  problem.tol = req.tol;
  return problem;
}

// ---- demo presets -------------------------------------------------------

GridPtr demo_circle(int n_points = 64) { return make_grid({n_points}, {kTwoPi}); }

BalancedBaseData synthetic_kahler_base(const GridPtr& grid, int n,
                                       const std::string& sc_expr) {
  BalancedBaseData base;
  base.n = n;
  base.grid = grid;
  base.kind = BaseKind::synthetic_kahler;
  base.SC_b = evaluate_on_grid(parse_expression(sc_expr), grid);
  base.S_b = 2.0 * base.SC_b;
  validate(base);
  return base;
}

WarpedFamily warped_instability_preset(const GridPtr& grid) {
  WarpedFamily fam;
  fam.grid = grid;
  fam.V1 = evaluate_on_grid(parse_expression("-1 + (cos(x1) - 1) / 4"), grid);
  fam.V2 = ScalarField(grid, 1.0);
  fam.scale_fn = [](double t) { return 1.0 / (1.0 - t); };
  fam.warp_fn = [](double t) { return (1.0 + t) / 2.0; };
  fam.a = 0.0;
  fam.b = 1.0;
  fam.C_f_a = 1.0;
  fam.C_h_a = 0.5;
  fam.C_h_b = 1.0;
  return fam;
}

int demo_neg_kahler_duality(const std::string& out_dir) {
  SklscProblem problem;
  problem.base = synthetic_kahler_base(demo_circle(), 2, "sin(x1) - 0.2");
  const SolveReport report = solve(problem);
  print_report_header(report);
  for (const SklscSolution& sol : report.solutions)
    std::cout << "solution: kappa = " << format_double(sol.kappa)
              << ", lambda0 = " << format_double(sol.lambda0)
              << ", residual_pde = " << format_double(sol.residual_pde) << "\n";
  if (report.solutions.size() == 2) {
    const double k1 = report.solutions[0].kappa;
    const double k2 = report.solutions[1].kappa;
    std::cout << "duality product (kappa1-1)(kappa2-1) = "
              << format_double((k1 - 1.0) * (k2 - 1.0)) << " (target 0.25)\n";
    std::cout << "kappa_dual(kappa1) = " << format_double(kappa_dual(k1, 2)) << "\n";
  }
  if (!out_dir.empty()) {
    for (std::size_t i = 0; i < report.solutions.size(); ++i)
      write_solution_bundle(fs::path(out_dir) / ("solution_" + std::to_string(i)),
                            report.solutions[i], report);
  }
  return report.solutions.empty() ? kNoCrossing : kOk;
}

int demo_warped_instability(const std::string& out_dir) {
  const GridPtr grid = demo_circle();
  const WarpedFamily fam = warped_instability_preset(grid);
  const InstabilityReport rep = warped_instability_scan(fam, 50);
  double max_lambda = -1e300;
  for (const ScanSample& s : rep.scan.samples)
    max_lambda = std::max(max_lambda, s.lambda0);
  std::cout << "samples: " << rep.scan.samples.size()
            << ", counterexamples: " << rep.counterexamples.size()
            << ", max lambda0 = " << format_double(max_lambda) << "\n";
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream os(fs::path(out_dir) / "instability.csv");
    write_scan_csv(os, rep.scan);
  }
  std::cout << "shifted control families (V2 + s):\n";
  double prev = fam.b;
  bool decreasing = true;
  for (double s : {0.55, 0.60, 0.65, 0.70, 0.75}) {
    const WarpedFamily shifted_fam = shifted(fam, s);
    std::vector<double> params;
    for (int j = 0; j < 50; ++j) params.push_back(0.05 + 0.94 * (j + 0.5) / 50.0);
    const KappaScan scan = lambda_curve(shifted_fam, std::move(params));
    if (scan.crossings.empty()) {
      std::cout << "  s = " << format_double(s) << ": no crossing found\n";
      decreasing = false;
      continue;
    }
    const auto [lo, hi] = scan.crossings.front();
    const double t_star = find_zero_crossing(
        grid, [&shifted_fam](double t) { return warped_potential(shifted_fam, t); },
        lo, hi, 1e-8, 1e-8);
    std::cout << "  s = " << format_double(s)
              << ": t* = " << format_double(t_star) << "\n";
    if (!(t_star < prev)) decreasing = false;
    prev = t_star;
  }
  std::cout << "t*(s) strictly decreasing: " << (decreasing ? "yes" : "no") << "\n";
  return rep.counterexamples.empty() && decreasing ? kOk : kNoCrossing;
}

int demo_zero_degree(const std::string&) {
  SklscProblem problem;
  problem.base = synthetic_kahler_base(demo_circle(), 2, "sin(x1)");
  const SolveReport report = solve(problem);
  print_report_header(report);
  double max_lambda = -1e300;
  for (const RegimeScan& rs : report.scans)
    for (const ScanSample& s : rs.scan.samples)
      if (s.converged) max_lambda = std::max(max_lambda, s.lambda0);
  std::cout << "max sampled lambda0 = " << format_double(max_lambda) << "\n";
  return report.solutions.empty() ? kNoCrossing : kOk;
}

int demo_pos_degree_balanced(const std::string& out_dir) {
  const GridPtr grid = demo_circle();
  BalancedBaseData base;
  base.n = 2;
  base.grid = grid;
  base.kind = BaseKind::synthetic_balanced;
  base.SC_b = evaluate_on_grid(parse_expression("sin(x1) + 0.3"), grid);
  base.S_b = 2.0 * base.SC_b - 0.1;
  validate(base);
  SklscProblem problem;
  problem.base = base;
  const SolveReport report = solve(problem);
  print_report_header(report);
  for (const SklscSolution& sol : report.solutions)
    std::cout << "solution: kappa = " << format_double(sol.kappa)
              << ", residual_pde = " << format_double(sol.residual_pde)
              << ", residual_integral = " << format_double(sol.residual_integral)
              << "\n";
  if (!out_dir.empty())
    for (std::size_t i = 0; i < report.solutions.size(); ++i)
      write_solution_bundle(fs::path(out_dir) / ("solution_" + std::to_string(i)),
                            report.solutions[i], report);
  return report.solutions.empty() ? kNoCrossing : kOk;
}

void print_degenerate(const std::string& label, const DegenerateReport& rep) {
  std::cout << label << ": "
            << "sc_nonpositive=" << rep.sc_nonpositive
            << " sc_not_identically_zero=" << rep.sc_not_identically_zero
            << " q_nonnegative=" << rep.q_nonnegative
            << " q_zero_sites=" << rep.q_zero_sites
            << " -> " << (rep.passes ? "pass" : "fail") << "\n";
}

int demo_degenerate_obstruction(const std::string&) {
  const GridPtr grid = demo_circle();
  {
    BalancedBaseData base = synthetic_kahler_base(grid, 2, "-1");
    print_degenerate("kahler SC_b = -1", degenerate_obstruction_check(base));
  }
  {
    // 2-d grid so the zero slice x1 = 0 carries several sites.
    const GridPtr grid2 = make_grid({32, 8}, {kTwoPi, kTwoPi});
    BalancedBaseData base =
        synthetic_kahler_base(grid2, 2, "-((1 - cos(x1))^2)");
    print_degenerate("kahler SC_b = -(1-cos x1)^2",
                     degenerate_obstruction_check(base));
  }
  {
    BalancedBaseData base;
    base.n = 2;
    base.grid = grid;
    base.kind = BaseKind::synthetic_balanced;
    base.SC_b = ScalarField(grid, -1.0);
    base.S_b = evaluate_on_grid(parse_expression("-3 + 0.5*sin(x1)"), grid);
    validate(base);
    print_degenerate("balanced, Q changes sign", degenerate_obstruction_check(base));
  }
  return kOk;
}

int demo_geometric_n2(const std::string& out_dir) {
  const GridPtr grid = make_grid({8, 8, 8, 8}, {kTwoPi, kTwoPi, kTwoPi, kTwoPi});
  ScalarField f = evaluate_on_grid(parse_expression("0.01*sin(x1)"), grid);
  const HermitianConformalMetric m(2, grid, f);

  BalancedBaseData flat;
  flat.n = 2;
  flat.grid = grid;
  flat.S_b = ScalarField(grid);
  flat.SC_b = ScalarField(grid);
  flat.kind = BaseKind::kahler;

  const ScalarField sc_direct = chern_scalar_direct(m);
  // Base Lee form: zero for the flat Kahler torus.
  const ScalarField sc_conformal =
      chern_scalar_conformal(flat, f, CovectorField(grid), 2);
  const ScalarField s_christoffel = riemannian_scalar_christoffel(m);
  const ScalarField s_conformal = riemannian_scalar_conformal(flat, f, 2);
  std::cout << "||chern direct - chern conformal||_inf = "
            << format_double(linf_norm(sc_direct - sc_conformal)) << "\n";
  std::cout << "||christoffel - riemannian conformal||_inf = "
            << format_double(linf_norm(s_christoffel - s_conformal)) << "\n";
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_field(fs::path(out_dir) / "f.field", f);
    write_field(fs::path(out_dir) / "chern_direct.field", sc_direct);
    write_field(fs::path(out_dir) / "riemannian_christoffel.field", s_christoffel);
  }
  return kOk;
}

}  // namespace

int run_scan(const std::string& config_path, const std::string& out_path) {
  const Config cfg = Config::load(config_path);
  const SklscProblem problem = problem_from_config(cfg);
  const SolveReport report = solve(problem);
  print_report_header(report);
  KappaScan merged;
  for (const RegimeScan& rs : report.scans) {
    merged.samples.insert(merged.samples.end(), rs.scan.samples.begin(),
                          rs.scan.samples.end());
    merged.crossings.insert(merged.crossings.end(), rs.scan.crossings.begin(),
                            rs.scan.crossings.end());
  }
  write_csv_file(out_path, merged);
  return merged.crossings.empty() ? kNoCrossing : kOk;
}

int run_solve(const std::string& config_path, const std::string& out_dir) {
  const Config cfg = Config::load(config_path);
  const SolveReport report = solve(problem_from_config(cfg));
  print_report_header(report);
  for (std::size_t i = 0; i < report.solutions.size(); ++i) {
    const SklscSolution& sol = report.solutions[i];
    std::cout << "solution " << i << ": kappa = " << format_double(sol.kappa)
              << ", lambda0 = " << format_double(sol.lambda0)
              << ", residual_pde = " << format_double(sol.residual_pde)
              << ", residual_integral = " << format_double(sol.residual_integral)
              << ", regime " << sol.regime << "\n";
    if (!out_dir.empty())
      write_solution_bundle(fs::path(out_dir) / ("solution_" + std::to_string(i)),
                            sol, report);
  }
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    for (std::size_t i = 0; i < report.scans.size(); ++i) {
      std::ofstream os(fs::path(out_dir) / ("scan_" + std::to_string(i) + ".csv"));
      write_scan_csv(os, report.scans[i].scan);
    }
  }
  return report.solutions.empty() ? kNoCrossing : kOk;
}

int run_verify(const std::string& config_path, const std::string& solution_dir,
               bool geometric) {
  const Config cfg = Config::load(config_path);
  const GridPtr grid = build_grid(cfg);
  const BalancedBaseData base = build_base(cfg, grid);
  const fs::path dir(solution_dir);
  const auto meta = read_meta(dir / "solution.meta");
  const auto kappa_it = meta.find("kappa");
  if (kappa_it == meta.end())
    throw ConfigError("solution.meta in '" + solution_dir + "' lacks kappa");
  SklscSolution sol;
  sol.kappa = std::stod(kappa_it->second);
  sol.phi = read_field(dir / "phi.field");
  sol.f = read_field(dir / "f.field");
  std::tie(sol.residual_pde, sol.residual_integral) = verify(sol, base);
  std::cout << "kappa: " << format_double(sol.kappa) << "\n";
  std::cout << "residual_pde: " << format_double(sol.residual_pde) << "\n";
  std::cout << "residual_integral: " << format_double(sol.residual_integral) << "\n";
  if (geometric) {
    if (grid->dim() != 2 * base.n)
      throw ConfigError("--geometric needs a grid of dimension 2n");
    const HermitianConformalMetric flat_base(base.n, grid, ScalarField(grid));
    std::cout << "residual_geometric: "
              << format_double(verify_geometric(sol, flat_base)) << "\n";
  }
  return kOk;
}

int run_poincare(const std::string& config_path) {
  const Config cfg = Config::load(config_path);
  const GridPtr grid = build_grid(cfg);
  const PoincareEstimate est = poincare_constant(grid);
  std::cout << "P: " << format_double(est.P) << "\n";
  std::cout << "lambda1: " << format_double(est.lambda1) << "\n";
  return kOk;
}

int run_instability(const std::string& config_path, const std::string& out_path) {
  const Config cfg = Config::load(config_path);
  const GridPtr grid = build_grid(cfg);
  const FamilyRequest req = build_family(cfg, grid);
  const InstabilityReport rep = warped_instability_scan(req.family, req.samples);
  std::cout << "samples: " << rep.scan.samples.size()
            << ", counterexamples: " << rep.counterexamples.size() << "\n";
  write_csv_file(out_path, rep.scan);
  return kOk;
}

int run_demo(const std::string& name, const std::string& out_dir) {
  if (name == "neg-kahler-duality") return demo_neg_kahler_duality(out_dir);
  if (name == "warped-instability") return demo_warped_instability(out_dir);
  if (name == "zero-degree") return demo_zero_degree(out_dir);
  if (name == "pos-degree-balanced") return demo_pos_degree_balanced(out_dir);
  if (name == "degenerate-obstruction") return demo_degenerate_obstruction(out_dir);
  if (name == "geometric-n2") return demo_geometric_n2(out_dir);
  throw ConfigError(
      "unknown demo '" + name +
      "'; available: neg-kahler-duality, warped-instability, zero-degree, "
      "pos-degree-balanced, degenerate-obstruction, geometric-n2");
}

}  // namespace sklsc::cli
