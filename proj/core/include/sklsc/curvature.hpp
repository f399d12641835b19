#pragma once

#include <string>

#include "sklsc/grid.hpp"

namespace sklsc {

enum class BaseKind { kahler, balanced, synthetic_kahler, synthetic_balanced };

BaseKind base_kind_from_string(const std::string& s);
const char* to_string(BaseKind kind);
bool is_kahler_kind(BaseKind kind);

// Prescribed base curvature data for a conformal class with a balanced
// representative.  In synthetic mode the grid dimension is decoupled from
// the complex dimension n; the spectral reduction only consumes these
// fields and n.
struct BalancedBaseData {
  int n = 2;
  GridPtr grid;
  ScalarField S_b;   // Riemannian scalar curvature of the base
  ScalarField SC_b;  // Chern scalar curvature of the base
  BaseKind kind = BaseKind::synthetic_kahler;
};

// Enforces the data invariants: Kahler kinds need S_b = 2 SC_b pointwise,
// balanced kinds need the torsion density 2 SC_b - S_b >= 0 everywhere.
void validate(const BalancedBaseData& base, double tol = 1e-10);

// 2 SC_b - S_b, the scalar stand-in for |T(g_b)|^2 / 2.
ScalarField torsion_density(const BalancedBaseData& base);

enum class GauduchonSign { negative, zero, positive };
const char* to_string(GauduchonSign s);

// Sign of the total Chern scalar curvature of the balanced (hence Gauduchon)
// representative, with a relative zero band.
GauduchonSign gauduchon_sign(const BalancedBaseData& base,
                             double zero_band_rel = 1e-8);

// Conformally flat Hermitian metric e^{2f} * (flat) on a torus of real
// dimension 2n, coordinates ordered x1,y1,...,xn,yn.
struct HermitianConformalMetric {
  int n = 2;
  GridPtr grid;
  ScalarField f;

  HermitianConformalMetric(int complex_dim, GridPtr g, ScalarField exponent);
};

// Calibrated conformal transformation laws for the metric e^{2f} * base.
// The exponent convention is fixed once by requiring agreement with the
// component-level routes below (chern_scalar_direct and
// riemannian_scalar_christoffel):
//
//   S(e^{2f} g)   = e^{-2f} (S_b  - 2(2n-1) lap f - 2(2n-1)(n-1) |grad f|^2)
//   S_C(e^{2f} g) = e^{-2f} (SC_b -       n lap f +       n <df, theta>)
ScalarField riemannian_scalar_conformal(const BalancedBaseData& base,
                                        const ScalarField& f, int n);
ScalarField chern_scalar_conformal(const BalancedBaseData& base,
                                   const ScalarField& f,
                                   const CovectorField& theta, int n);

// Chern scalar from metric components only: trace of the Chern-Ricci form
// -i ddbar log det(g_ij) against the inverse metric.  For e^{2f} * flat the
// log-det is 2nf and this evaluates to -(1/2) e^{-2f} lap(2nf).
ScalarField chern_scalar_direct(const HermitianConformalMetric& m);

// Lee form of e^{2f} * (Kahler flat): 2(n-1) df.
CovectorField lee_form_conformal(const ScalarField& f, int n);

// Independent oracle: assembles the real metric e^{2f} delta, differentiates
// it into Christoffel symbols and Ricci by central differences, and traces.
// O(d^3) stencil work per site; meant for coarse grids (8^4 scale).
ScalarField riemannian_scalar_christoffel(const HermitianConformalMetric& m);

}  // namespace sklsc
