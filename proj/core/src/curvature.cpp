#include "sklsc/curvature.hpp"

#include <cmath>
#include <vector>

#include "sklsc/errors.hpp"

namespace sklsc {

BaseKind base_kind_from_string(const std::string& s) {
  if (s == "kahler") return BaseKind::kahler;
  if (s == "balanced") return BaseKind::balanced;
  if (s == "synthetic-kahler") return BaseKind::synthetic_kahler;
  if (s == "synthetic-balanced") return BaseKind::synthetic_balanced;
  throw ConfigError("unknown base kind '" + s + "'");
}

const char* to_string(BaseKind kind) {
  switch (kind) {
    case BaseKind::kahler: return "kahler";
    case BaseKind::balanced: return "balanced";
    case BaseKind::synthetic_kahler: return "synthetic-kahler";
    case BaseKind::synthetic_balanced: return "synthetic-balanced";
  }
  return "?";
}

bool is_kahler_kind(BaseKind kind) {
  return kind == BaseKind::kahler || kind == BaseKind::synthetic_kahler;
}

ScalarField torsion_density(const BalancedBaseData& base) {
  ScalarField tau = base.SC_b;
  tau *= 2.0;
  tau -= base.S_b;
  return tau;
}

void validate(const BalancedBaseData& base, double tol) {
  if (base.n < 2) throw UsageError("BalancedBaseData: complex dimension n must be >= 2");
  if (!base.grid) throw UsageError("BalancedBaseData: missing grid");
  require_same_grid(base.S_b, base.SC_b);
  if (!base.S_b.grid()->same_shape(*base.grid))
    throw UsageError("BalancedBaseData: field grid mismatch");
  if (!base.S_b.finite() || !base.SC_b.finite())
    throw UsageError("BalancedBaseData: non-finite curvature data");
  const double scale =
      std::max({linf_norm(base.S_b), linf_norm(base.SC_b), 1.0});
  const ScalarField tau = torsion_density(base);
  if (is_kahler_kind(base.kind)) {
    if (linf_norm(tau) > tol * scale)
      throw UsageError("Kahler base data must satisfy S_b = 2 SC_b pointwise");
  } else {
    if (min_value(tau) < -tol * scale)
      throw UsageError("balanced base data must satisfy S_b <= 2 SC_b pointwise");
  }
}

const char* to_string(GauduchonSign s) {
  switch (s) {
    case GauduchonSign::negative: return "negative";
    case GauduchonSign::zero: return "zero";
    case GauduchonSign::positive: return "positive";
  }
  return "?";
}

GauduchonSign gauduchon_sign(const BalancedBaseData& base, double zero_band_rel) {
  const double total = integrate(base.SC_b);
  const double band =
      zero_band_rel * base.grid->volume() * std::max(linf_norm(base.SC_b), 1e-300);
  if (total > band) return GauduchonSign::positive;
  if (total < -band) return GauduchonSign::negative;
  return GauduchonSign::zero;
}

HermitianConformalMetric::HermitianConformalMetric(int complex_dim, GridPtr g,
                                                   ScalarField exponent)
    : n(complex_dim), grid(std::move(g)), f(std::move(exponent)) {
  if (n < 2) throw UsageError("HermitianConformalMetric: n must be >= 2");
  if (grid->dim() != 2 * n)
    throw UsageError("HermitianConformalMetric: grid dimension must be 2n");
  if (!f.grid()->same_shape(*grid))
    throw UsageError("HermitianConformalMetric: exponent grid mismatch");
  if (!f.finite())
    throw UsageError("HermitianConformalMetric: non-finite conformal exponent");
}

ScalarField riemannian_scalar_conformal(const BalancedBaseData& base,
                                        const ScalarField& f, int n) {
  if (n < 2) throw UsageError("riemannian_scalar_conformal: n must be >= 2");
  require_same_grid(base.S_b, f);
  const ScalarField lap = laplacian(f);
  const ScalarField gsq = grad_norm_sq(f);
  const double c1 = 2.0 * (2 * n - 1);
  const double c2 = 2.0 * (2 * n - 1) * (n - 1);
  ScalarField out(f.grid());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = std::exp(-2.0 * f[i]) * (base.S_b[i] - c1 * lap[i] - c2 * gsq[i]);
  return out;
}

ScalarField chern_scalar_conformal(const BalancedBaseData& base,
                                   const ScalarField& f,
                                   const CovectorField& theta, int n) {
  if (n < 2) throw UsageError("chern_scalar_conformal: n must be >= 2");
  require_same_grid(base.SC_b, f);
  const ScalarField lap = laplacian(f);
  const ScalarField df_theta = pairing(gradient(f), theta);
  ScalarField out(f.grid());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = std::exp(-2.0 * f[i]) *
             (base.SC_b[i] - n * lap[i] + n * df_theta[i]);
  return out;
}

ScalarField chern_scalar_direct(const HermitianConformalMetric& m) {
  // log det(g_ij) for e^{2f} * flat is 2nf up to an additive constant that
  // the Laplacian kills; the trace against g^{ij} contributes e^{-2f}/2.
  ScalarField log_det = m.f;
  log_det *= 2.0 * m.n;
  const ScalarField lap = laplacian(log_det);
  ScalarField out(m.f.grid());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = -0.5 * std::exp(-2.0 * m.f[i]) * lap[i];
  return out;
}

CovectorField lee_form_conformal(const ScalarField& f, int n) {
  if (n < 2) throw UsageError("lee_form_conformal: n must be >= 2");
  CovectorField theta = gradient(f);
  for (int a = 0; a < theta.dim(); ++a) theta.component(a) *= 2.0 * (n - 1);
  return theta;
}

ScalarField riemannian_scalar_christoffel(const HermitianConformalMetric& m) {
  const GridPtr& grid = m.grid;
  const int d = grid->dim();
  const std::size_t n_sites = grid->size();

  // Metric components: g_ab = E delta_ab with E = e^{2f}.
  ScalarField E(grid);
  for (std::size_t i = 0; i < n_sites; ++i) E[i] = std::exp(2.0 * m.f[i]);
  std::vector<ScalarField> dE(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) dE[a] = axis_derivative(E, a);

  // Christoffel symbols Gamma^c_ab of the diagonal metric.
  auto gamma_index = [d](int c, int a, int b) {
    return static_cast<std::size_t>((c * d + a) * d + b);
  };
  std::vector<ScalarField> gamma(static_cast<std::size_t>(d * d * d), ScalarField(grid));
  for (int c = 0; c < d; ++c)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        ScalarField& G = gamma[gamma_index(c, a, b)];
        for (std::size_t i = 0; i < n_sites; ++i) {
          double v = 0.0;
          if (c == b) v += dE[a][i];
          if (c == a) v += dE[b][i];
          if (a == b) v -= dE[c][i];
          G[i] = 0.5 * v / E[i];
        }
      }

  // Ricci: R_ab = d_c Gamma^c_ab - d_b Gamma^c_ac
  //             + Gamma^c_cd Gamma^d_ab - Gamma^c_bd Gamma^d_ac.
  // Only the diagonal Ricci entries enter the trace against the diagonal
  // inverse metric g^{aa} = 1/E.
  ScalarField scalar(grid);
  for (int a = 0; a < d; ++a) {
    const int b = a;
    ScalarField ricci(grid);
    for (int c = 0; c < d; ++c) {
      ricci += axis_derivative(gamma[gamma_index(c, a, b)], c);
      ricci -= axis_derivative(gamma[gamma_index(c, a, c)], b);
    }
    for (int c = 0; c < d; ++c)
      for (int e = 0; e < d; ++e) {
        const ScalarField& G_cce = gamma[gamma_index(c, c, e)];
        const ScalarField& G_eab = gamma[gamma_index(e, a, b)];
        const ScalarField& G_cbe = gamma[gamma_index(c, b, e)];
        const ScalarField& G_eac = gamma[gamma_index(e, a, c)];
        for (std::size_t i = 0; i < n_sites; ++i)
          ricci[i] += G_cce[i] * G_eab[i] - G_cbe[i] * G_eac[i];
      }
    for (std::size_t i = 0; i < n_sites; ++i) scalar[i] += ricci[i] / E[i];
  }
  return scalar;
}

}  // namespace sklsc
