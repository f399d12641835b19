#include <doctest.h>

#include <cmath>
#include <sstream>

#include "helpers.hpp"
#include "sklsc/family.hpp"

using namespace sklsc;
using namespace sklsc::testing;

namespace {

WarpedFamily instability_family(const GridPtr& grid) {
  WarpedFamily fam;
  fam.grid = grid;
  fam.V1 = from_expr(grid, "-1 + (cos(x1) - 1)/4");
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

}  // namespace

TEST_CASE("sklsc potential: closed forms and the degenerate band") {
  const GridPtr g = circle(16);
  const KappaFamily zero{kahler_base(g, 2, "0")};
  CHECK(linf_norm(sklsc_potential(zero, -3.0)) == 0.0);
  CHECK(linf_norm(sklsc_potential(zero, 7.0)) == 0.0);

  // n=2, kappa=2, SC_b = c constant: V = 3/(2*1) * (2c - 4c) = -3c.
  const KappaFamily constant{kahler_base(g, 2, "0.7")};
  const ScalarField V = sklsc_potential(constant, 2.0);
  CHECK(linf_norm(V - ScalarField(g, -3.0 * 0.7)) < 1e-13);

  CHECK(degenerate_kappa(2) == doctest::Approx(1.5));
  CHECK_THROWS_AS(sklsc_potential(constant, 1.5), DegenerateKappaError);
  CHECK_THROWS_AS(sklsc_potential(constant, 1.5004), DegenerateKappaError);
  CHECK_NOTHROW(sklsc_potential(constant, 1.502));
}

TEST_CASE("kahler multiplier: maximum (2n-1)/(4n) at kappa = 1/n") {
  CHECK(kahler_multiplier(1.0, 2) == 0.0);
  CHECK(kahler_multiplier(0.5, 2) == doctest::Approx(3.0 / 8.0));
  CHECK(kahler_multiplier(1.0 / 3.0, 3) == doctest::Approx(5.0 / 12.0));
  for (int n : {2, 3, 5}) {
    const double k_star = 1.0 / n;
    const double max_val = (2.0 * n - 1.0) / (4.0 * n);
    CHECK(kahler_multiplier(k_star, n) == doctest::Approx(max_val));
    // Grid search below kappa = 1 as the oracle for the maximizer.
    for (double k = -3.0; k < 1.0; k += 0.01)
      CHECK(kahler_multiplier(k, n) <= max_val + 1e-12);
  }
}

TEST_CASE("kappa_dual closed forms and range") {
  CHECK(kappa_dual(1.25, 2) == doctest::Approx(2.0));
  CHECK(kappa_dual(4.0 / 3.0, 3) == doctest::Approx(7.0 / 3.0));
  CHECK(kappa_dual(1.0 + 1e-9, 2) > 1e8);  // kappa1 -> 1+ sends the dual to inf
  CHECK_THROWS_AS(kappa_dual(0.5, 2), UsageError);
  CHECK_THROWS_AS(kappa_dual(1.6, 2), UsageError);
}

TEST_CASE("duality: identical potentials, hence identical lambda0") {
  const GridPtr g = circle(48);
  const KappaFamily fam{kahler_base(g, 2, "sin(x1) - 0.2")};
  for (double k1 : {1.05, 1.2, 1.35, 1.45}) {
    const double k2 = kappa_dual(k1, 2);
    const ScalarField V1 = sklsc_potential(fam, k1);
    const ScalarField V2 = sklsc_potential(fam, k2);
    CHECK(linf_norm(V1 - V2) < 1e-12 * std::max(linf_norm(V1), 1.0));
  }
}

TEST_CASE("admissible regimes by Gauduchon sign") {
  const AdmissibleRegime neg = admissible_regime(GauduchonSign::negative, 2);
  REQUIRE(neg.intervals.size() == 2);
  CHECK(neg.intervals[0].lo == 1.0);
  CHECK(neg.intervals[0].hi == doctest::Approx(1.5));
  CHECK(neg.intervals[1].lo == doctest::Approx(1.5));
  CHECK(std::isinf(neg.intervals[1].hi));
  const AdmissibleRegime pos = admissible_regime(GauduchonSign::positive, 2);
  REQUIRE(pos.intervals.size() == 1);
  CHECK(std::isinf(pos.intervals[0].lo));
  CHECK(pos.intervals[0].hi == 1.0);
  CHECK(admissible_regime(GauduchonSign::zero, 2).intervals.empty());
}

TEST_CASE("lambda_curve and crossing detection on the scaling family") {
  const GridPtr g = circle(64);
  const ScalarField V = from_expr(g, "sin(x1) + 0.1");
  WarpedFamily fam;
  fam.grid = g;
  fam.V1 = V;
  fam.V2 = V;
  fam.scale_fn = [](double t) { return t / 2.0; };
  fam.warp_fn = [](double) { return 1.0; };
  fam.a = 0.0;
  fam.b = 40.0;
  fam.C_h_a = 1.0;
  fam.C_h_b = 1.0;
  // The potential is (t/2)(V1 + V2) = t V: positive lambda0 for small t
  // (positive mean), negative for large t (sign-changing V).
  std::vector<double> params;
  for (int j = 1; j <= 39; ++j) params.push_back(0.05 * j);
  const KappaScan scan = lambda_curve(fam, params);
  REQUIRE(scan.samples.size() == 39);
  CHECK(scan.samples.front().lambda0 > 0.0);
  CHECK(scan.samples.back().lambda0 < 0.0);
  REQUIRE(scan.crossings.size() == 1);

  const auto [lo, hi] = scan.crossings.front();
  const double t_star = find_zero_crossing(
      g, [&fam](double t) { return warped_potential(fam, t); }, lo, hi, 1e-8, 1e-8);
  const GroundState at_star = ground_state(
      SchrodingerOperator(g, warped_potential(fam, t_star)));
  CHECK(std::abs(at_star.lambda0) < 1e-7);
  CHECK(min_value(at_star.phi) > 0.0);
  CHECK(max_value(at_star.phi) - min_value(at_star.phi) > 1e-3);  // non-constant
}

TEST_CASE("find_zero_crossing rejects invalid brackets") {
  const GridPtr g = circle(16);
  auto pot = [&g](double t) {
    ScalarField V(g, t - 2.0);  // lambda0 = t - 2 exactly
    return V;
  };
  CHECK(find_zero_crossing(g, pot, 1.0, 3.0, 1e-10, 1e-10) ==
        doctest::Approx(2.0).epsilon(1e-8));
  CHECK_THROWS_AS(find_zero_crossing(g, pot, 3.0, 1.0, 1e-10, 1e-10), BracketError);
  CHECK_THROWS_AS(find_zero_crossing(g, pot, 3.0, 4.0, 1e-10, 1e-10), BracketError);
}

TEST_CASE("kappa crossing search splits brackets straddling the degenerate band") {
  const GridPtr g = circle(64);
  const KappaFamily fam{kahler_base(g, 2, "sin(x1) - 0.2")};
  // lambda0 changes sign inside (1.05, 1.4); widen the bracket across the
  // excluded band and the search must still land in the lower regime.
  const double k = find_zero_crossing(fam, 1.02, 2.5, 1e-8, 1e-8);
  CHECK(k > 1.02);
  CHECK(k < 1.5 - kDegenerateExclusionRadius);
  const double l = ground_state(SchrodingerOperator(g, sklsc_potential(fam, k))).lambda0;
  CHECK(std::abs(l) < 1e-7);
}

TEST_CASE("eigendifference identity across the (t, s) plane") {
  const GridPtr g = circle(48);
  const WarpedFamily fam = instability_family(g);
  for (double t : {0.2, 0.5, 0.8}) {
    const double fh = fam.scale_fn(t) * fam.warp_fn(t);
    const GroundState base = ground_state(SchrodingerOperator(g, warped_potential(fam, t)));
    for (double s : {-0.4, 0.3, 1.1}) {
      const WarpedFamily fs = shifted(fam, s);
      const GroundState gs = ground_state(SchrodingerOperator(g, warped_potential(fs, t)));
      CHECK(std::abs((gs.lambda0 - base.lambda0) - fh * s) < 2e-9);
      CHECK(linf_norm(gs.phi - base.phi) < 1e-7);  // same eigenfunction
    }
  }
}

TEST_CASE("warped family validation") {
  const GridPtr g = circle(16);
  WarpedFamily fam = instability_family(g);
  CHECK_NOTHROW(validate(fam));

  WarpedFamily swapped = fam;
  swapped.V1 = fam.V2;
  swapped.V2 = fam.V1;
  CHECK_THROWS_AS(validate(swapped), UsageError);

  WarpedFamily flat_h = fam;
  flat_h.warp_fn = [](double) { return 0.7; };
  CHECK_THROWS_AS(validate(flat_h), UsageError);
  CHECK_NOTHROW(validate(flat_h, /*require_monotone_warp=*/false));

  WarpedFamily bad_f = fam;
  bad_f.scale_fn = [](double t) { return t - 0.5; };
  CHECK_THROWS_AS(validate(bad_f), UsageError);

  WarpedFamily bad_mean = fam;
  bad_mean.V1 += 2.0;
  bad_mean.V2 += 2.0;
  CHECK_THROWS_AS(validate(bad_mean), UsageError);
}

TEST_CASE("negative-branch classifier on the constructed bases") {
  const GridPtr g = circle(64);
  CHECK(classify_negative_branch(balanced_base(g, 2, "-2.5", "-1")).branch ==
        NegativeBranch::b1b);
  CHECK(classify_negative_branch(
            balanced_base(g, 2, "-3 + 0.5*sin(x1)", "-1"))
            .branch == NegativeBranch::b2a);
  const BranchReport contact =
      classify_negative_branch(balanced_base(g, 2, "-2 - (1 - cos(x1))/2", "-1"));
  CHECK(contact.branch == NegativeBranch::b1c);
  CHECK(contact.contact_sites >= 1);
  CHECK(classify_negative_branch(balanced_base(g, 2, "-4", "-1")).branch ==
        NegativeBranch::b3);
  CHECK(classify_negative_branch(balanced_base(g, 2, "-3", "-1")).branch ==
        NegativeBranch::b2b);
}

TEST_CASE("degenerate obstruction report") {
  const GridPtr g = circle(64);
  const DegenerateReport no_zeros =
      degenerate_obstruction_check(kahler_base(g, 2, "-1"));
  CHECK(no_zeros.kappa == doctest::Approx(1.5));
  CHECK(no_zeros.q_zero_sites == 0);
  CHECK_FALSE(no_zeros.passes);

  const GridPtr g2 = make_grid({32, 8}, {kTwoPi, kTwoPi});
  const DegenerateReport slice =
      degenerate_obstruction_check(kahler_base(g2, 2, "-((1 - cos(x1))^2)"));
  CHECK(slice.sc_nonpositive);
  CHECK(slice.sc_not_identically_zero);
  CHECK(slice.q_nonnegative);
  CHECK(slice.q_zero_sites >= 2);
  CHECK(slice.passes);

  const DegenerateReport sign_change = degenerate_obstruction_check(
      balanced_base(g, 2, "-3 + 0.5*sin(x1)", "-1"));
  CHECK_FALSE(sign_change.q_nonnegative);
  CHECK_FALSE(sign_change.passes);
}

TEST_CASE("warped instability scan: negativity and hypothesis checks") {
  const GridPtr g = circle(64);
  const InstabilityReport rep = warped_instability_scan(instability_family(g), 50);
  CHECK(rep.scan.samples.size() == 50);
  CHECK(rep.counterexamples.empty());
  for (const ScanSample& s : rep.scan.samples) CHECK(s.lambda0 < -1e-10);

  // No contact point: combo bounded away from zero.
  WarpedFamily no_contact = instability_family(g);
  no_contact.V1 += -0.5;
  CHECK_THROWS_AS(warped_instability_scan(no_contact, 10), UsageError);

  // Sign-changing combo violates the one-sided-contact hypothesis.
  WarpedFamily sign_changing = instability_family(g);
  sign_changing.V1 = from_expr(g, "-1 + sin(x1)/2");
  CHECK_THROWS_AS(warped_instability_scan(sign_changing, 10), UsageError);
}

TEST_CASE("scan CSV format and determinism") {
  KappaScan scan;
  scan.samples = {{1.0, -0.5, 1e-12, true}, {2.0, 0.5, 1e-12, true}};
  detect_crossings(scan);
  std::ostringstream a, b;
  write_scan_csv(a, scan);
  write_scan_csv(b, scan);
  CHECK(a.str() == b.str());
  CHECK(a.str() ==
        "param,lambda0,residual,converged\n"
        "1,-0.5,9.9999999999999998e-13,1\n"
        "2,0.5,9.9999999999999998e-13,1\n"
        "# crossing 1 2\n");
}

TEST_CASE("crossing detection respects the skip band") {
  KappaScan scan;
  scan.samples = {{1.4, -1.0, 0, true}, {1.6, 1.0, 0, true}, {2.0, -1.0, 0, true}};
  detect_crossings(scan, std::pair{1.45, 1.55});
  REQUIRE(scan.crossings.size() == 1);
  CHECK(scan.crossings[0].first == 1.6);
}

TEST_CASE("large-|kappa| tails: potential and lambda0 decay") {
  const GridPtr g = circle(64);
  const KappaFamily fam{kahler_base(g, 2, "sin(x1) - 0.2")};
  for (double k : {25.0, 50.0, 100.0, -50.0}) {
    const ScalarField V = sklsc_potential(fam, k);
    CHECK(linf_norm(V) < 10.0 / std::abs(k));
    const double l = ground_state(SchrodingerOperator(g, V)).lambda0;
    CHECK(std::abs(l) < 10.0 / std::abs(k));
  }
}

TEST_CASE("regime soundness near kappa = 1 for non-Kahler balanced bases") {
  const GridPtr g = circle(64);
  // Negative degree, genuinely balanced (torsion > 0 somewhere).
  const KappaFamily neg{balanced_base(g, 2, "2*sin(x1) - 1.1", "sin(x1) - 0.5")};
  CHECK(ground_state(SchrodingerOperator(g, sklsc_potential(neg, 1.0 + 1e-3))).lambda0 <
        0.0);
  // Positive degree.
  const KappaFamily pos{balanced_base(g, 2, "2*sin(x1) + 0.5", "sin(x1) + 0.3")};
  CHECK(ground_state(SchrodingerOperator(g, sklsc_potential(pos, 1.0 - 1e-3))).lambda0 <
        0.0);
}
