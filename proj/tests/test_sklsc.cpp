#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "sklsc/sklsc.hpp"
#include "sklsc/spectral.hpp"

using namespace sklsc;
using namespace sklsc::testing;

TEST_CASE("exponent multiplier closed forms") {
  // n=2, kappa=2: (2n-1-n kappa)/((2n-1)(n-1)) = (3-4)/3 = -1/3, so
  // e^{-2f} = phi^{-2/3}.
  CHECK(exponent_multiplier(2.0, 2) == doctest::Approx(-1.0 / 3.0));
  CHECK(exponent_multiplier(1.0, 2) == doctest::Approx(1.0 / 3.0));
  CHECK(exponent_multiplier(3.0 / 4.0, 2) == doctest::Approx(0.5));  // 1/n at bridge
}

TEST_CASE("reconstruct_exponent: constants and positivity guard") {
  const GridPtr g = circle(16);
  const ScalarField f = reconstruct_exponent(ScalarField(g, 2.0), 2.0, 2);
  CHECK(linf_norm(f - ScalarField(g, std::log(2.0) / 3.0)) < 1e-14);

  ScalarField phi(g, 1.0);
  phi[3] = 0.0;
  CHECK_THROWS_AS(reconstruct_exponent(phi, 2.0, 2), UsageError);
}

TEST_CASE("exponent duality: the exact multiplier relation") {
  // With the same phi, f_{kappa2} = [(1-n)/(n(kappa1-1))] f_{kappa1}; the
  // ratio reduces to (1-n) only at kappa1 = 1 + 1/n.
  for (int n : {2, 3, 4}) {
    for (double k1 : {1.0 + 0.3 / n, 1.0 + 0.7 / n, 1.0 + 0.9 / n}) {
      const double k2 = kappa_dual(k1, n);
      const double ratio = exponent_multiplier(k2, n) / exponent_multiplier(k1, n);
      CHECK(ratio == doctest::Approx((1.0 - n) / (n * (k1 - 1.0))).epsilon(1e-12));
    }
    // The ratio equals (1-n) exactly at kappa1 = 1 + 1/n, which sits inside
    // (1,(2n-1)/n) only for n >= 3 (for n = 2 it is the degenerate value).
    if (n >= 3) {
      const double special = 1.0 + 1.0 / n;
      CHECK(exponent_multiplier(kappa_dual(special, n), n) /
                exponent_multiplier(special, n) ==
            doctest::Approx(1.0 - n).epsilon(1e-12));
    }
  }
}

TEST_CASE("verify: exact solution, pointwise-proportional base, corruption") {
  const GridPtr g = circle(32);
  // S_b = 2 kappa SC_b pointwise at kappa = 1 (Kahler): f = 0 solves exactly.
  const BalancedBaseData base = kahler_base(g, 2, "sin(x1) + 2");
  SklscSolution sol;
  sol.kappa = 1.0;
  sol.phi = ScalarField(g, 1.0);
  sol.f = ScalarField(g);
  const auto [pde, integral] = verify(sol, base);
  CHECK(pde == 0.0);
  CHECK(integral == 0.0);

  SklscSolution corrupted = sol;
  corrupted.f = from_expr(g, "sin(x1)");
  const auto [pde2, integral2] = verify(corrupted, base);
  CHECK(pde2 > 0.1);
  CHECK(integral2 > 1e-3);
}

TEST_CASE("solve: negative-degree Kahler base has exactly two dual solutions") {
  SklscProblem problem;
  problem.base = kahler_base(circle(64), 2, "sin(x1) - 0.2");
  const SolveReport report = solve(problem);
  CHECK(report.sign == GauduchonSign::negative);
  REQUIRE(report.solutions.size() == 2);
  const SklscSolution& s1 = report.solutions[0];
  const SklscSolution& s2 = report.solutions[1];
  CHECK(s1.kappa > 1.0);
  CHECK(s1.kappa < 1.5);
  CHECK(s2.kappa > 1.5);
  CHECK(std::abs((s1.kappa - 1.0) * (s2.kappa - 1.0) - 0.25) < 1e-6);
  const double h = problem.base.grid->spacing(0);
  for (const SklscSolution& s : {s1, s2}) {
    CHECK(std::abs(s.lambda0) < 1e-7);
    CHECK(min_value(s.phi) > 0.0);
    CHECK(s.residual_pde <= 10.0 * h * h);
    CHECK(s.residual_integral <= 10.0 * h * h);
  }
  // Same potential at dual points -> same ground state phi; the exponents
  // then differ by the multiplier ratio.
  CHECK(linf_norm(s1.phi - s2.phi) < 1e-6);
  const double ratio = exponent_multiplier(s2.kappa, 2) / exponent_multiplier(s1.kappa, 2);
  ScalarField predicted = s1.f;
  predicted *= ratio;
  CHECK(linf_norm(predicted - s2.f) < 1e-6);
}

TEST_CASE("solve: positive-degree balanced base finds kappa < 1") {
  SklscProblem problem;
  problem.base =
      balanced_base(circle(64), 2, "2*sin(x1) + 0.5", "sin(x1) + 0.3");
  const SolveReport report = solve(problem);
  CHECK(report.sign == GauduchonSign::positive);
  REQUIRE(!report.solutions.empty());
  const double h = problem.base.grid->spacing(0);
  for (const SklscSolution& s : report.solutions) {
    CHECK(s.kappa < 1.0);
    CHECK(s.residual_pde <= 10.0 * h * h);
  }
}

TEST_CASE("solve: zero degree returns no solution with a reason") {
  SklscProblem problem;
  problem.base = kahler_base(circle(64), 2, "sin(x1)");
  const SolveReport report = solve(problem);
  CHECK(report.sign == GauduchonSign::zero);
  CHECK(report.solutions.empty());
  REQUIRE(!report.notes.empty());
  CHECK(report.notes.front().find("no scaling constant is admissible") !=
        std::string::npos);
  // Evidence scan: lambda0 < 0 at every sampled kappa != 1.
  REQUIRE(report.scans.size() == 1);
  for (const ScanSample& s : report.scans[0].scan.samples) {
    if (!s.converged) continue;
    if (std::abs(s.param - 1.0) < 1e-6) continue;
    CHECK(s.lambda0 < 0.0);
  }
}

TEST_CASE("solve: branch 1c skips the lower regime") {
  SklscProblem problem;
  problem.base = balanced_base(circle(64), 2, "-2 - (1 - cos(x1))/2", "-1");
  const SolveReport report = solve(problem);
  REQUIRE(report.branch.has_value());
  CHECK(report.branch->branch == NegativeBranch::b1c);
  REQUIRE(report.scans.size() == 1);
  CHECK(report.scans[0].label == "((2n-1)/n, inf)");
  for (const SklscSolution& s : report.solutions) CHECK(s.kappa > 1.5);
}

TEST_CASE("solve: explicit regime request restricts the scan") {
  SklscProblem problem;
  problem.base = kahler_base(circle(64), 2, "sin(x1) - 0.2");
  problem.regime = Interval{1.0, 1.5};
  const SolveReport report = solve(problem);
  REQUIRE(report.scans.size() == 1);
  REQUIRE(report.solutions.size() == 1);
  CHECK(report.solutions[0].kappa < 1.5);
}

TEST_CASE("residual_pde shrinks under grid refinement") {
  auto residual_at = [](int n_points) {
    SklscProblem problem;
    problem.base = kahler_base(circle(n_points), 2, "sin(x1) - 0.2");
    problem.regime = Interval{1.0, 1.5};
    const SolveReport report = solve(problem);
    REQUIRE(report.solutions.size() == 1);
    return report.solutions[0].residual_pde;
  };
  const double r64 = residual_at(64);
  const double r128 = residual_at(128);
  CHECK(r64 / r128 > 2.5);  // second-order stencils: factor ~4
}

TEST_CASE("verify_geometric agrees with verify on a geometric-mode run") {
  // d = 2n = 4 torus, flat Kahler base; solve in synthetic mode on the same
  // grid, then push the metric through the curvature module.
  const GridPtr g = make_grid({10, 4, 4, 4}, {kTwoPi, kTwoPi, kTwoPi, kTwoPi});
  SklscProblem problem;
  problem.base = kahler_base(g, 2, "sin(x1) - 0.2");
  problem.regime = Interval{1.0, 1.5};
  const SolveReport report = solve(problem);
  REQUIRE(report.solutions.size() == 1);
  const SklscSolution& sol = report.solutions[0];
  const HermitianConformalMetric flat(2, g, ScalarField(g));
  const double geom = verify_geometric(sol, flat);
  const double h = g->spacing(0);
  // Both are O(h^2) residuals of the same defect, up to the (bounded)
  // normalization difference.
  CHECK(geom <= 20.0 * h * h);
  CHECK(sol.residual_pde <= 10.0 * h * h);
}

TEST_CASE("kappa=1, f=0 geometric sanity") {
  const GridPtr g = make_grid({6, 6, 4, 4}, {kTwoPi, kTwoPi, kTwoPi, kTwoPi});
  SklscSolution sol;
  sol.kappa = 1.0;
  sol.phi = ScalarField(g, 1.0);
  sol.f = ScalarField(g);
  const HermitianConformalMetric flat(2, g, ScalarField(g));
  CHECK(verify_geometric(sol, flat) == 0.0);
}

TEST_CASE("scalar_flat_bridge") {
  const GridPtr g = circle(64);
  // Multiplier identity at kappa = (2n-1)/n^2.
  for (int n : {2, 3, 5}) {
    const double k = (2.0 * n - 1.0) / (n * n);
    CHECK(kahler_multiplier(k, n) == doctest::Approx((n - 1.0) / (2.0 * n - 1.0)));
  }

  // SC_b > 0 everywhere: the potential (positive multiplier times SC_b) is
  // strictly positive, so lambda0 > 0 -- no representative at the bridge.
  const ScalarFlatBridgeReport nonneg =
      scalar_flat_bridge(kahler_base(g, 2, "sin(x1) + 1.5"));
  CHECK(nonneg.kappa == doctest::Approx(0.75));
  CHECK(nonneg.multiplier == doctest::Approx(1.0 / 3.0));
  CHECK(nonneg.sklsc_exponent == doctest::Approx(1.0));
  CHECK(nonneg.scalar_flat_exponent == doctest::Approx(2.0));
  REQUIRE(nonneg.lambda0.has_value());
  CHECK(*nonneg.lambda0 > 0.0);

  // Sign-changing SC_b with the positivity bound satisfied: obstructed with
  // lambda0 > 0.
  const ScalarFlatBridgeReport bounded =
      scalar_flat_bridge(kahler_base(g, 2, "0.01*(sin(x1) + 0.5)"));
  REQUIRE(bounded.lambda0.has_value());
  CHECK(*bounded.lambda0 > 0.0);
  REQUIRE(bounded.bound_value.has_value());
  CHECK(*bounded.bound_value <= 1.0);

  // Flat case: vanishing potential, lambda0 = 0.
  const ScalarFlatBridgeReport flat = scalar_flat_bridge(kahler_base(g, 2, "0"));
  CHECK(*flat.lambda0 == 0.0);

  CHECK_THROWS_AS(scalar_flat_bridge(balanced_base(g, 2, "-0.2", "0")), UsageError);
}
