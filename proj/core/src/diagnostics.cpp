#include "sqg/diagnostics.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "sqg/norms.hpp"
#include "sqg/operators.hpp"

namespace sqg {

namespace {

double weight_one(double, double) { return 1.0; }

double weight_h3_minus_l2(double k1, double k2) {
  return sobolev_weight(3, k1, k2) - 1.0;
}

}  // namespace

LedgerTerms energy_ledger(const SpectralField& g, const Background& bg, double t) {
  if (g.grid() != bg.grid())
    throw std::invalid_argument("energy_ledger: grid mismatch between g and background");

  VectorField v = velocity_from_scalar(g, bg.velocity_exponent());
  SpectralField p1 = advect(v, g);

  LedgerTerms out;
  out.i1 = -weighted_inner(p1, g, weight_h3_minus_l2);
  out.i1_l2 = -weighted_inner(p1, g, weight_one);
  if (bg.empty()) return out;  // remaining products all carry a background factor

  SpectralField theta_t = bg.theta_at(t);
  VectorField big_u = bg.velocity_at(t);
  SpectralField p2 = advect(big_u, g);
  SpectralField p3 = advect(v, theta_t);
  SpectralField p4 = advect(big_u, theta_t);

  out.i2 = -weighted_inner(p2, g, weight_h3_minus_l2);
  out.i3 = -weighted_inner(p3, g, weight_h3_minus_l2);
  out.i4 = -weighted_inner(p4, g, weight_h3_minus_l2);
  out.i2_l2 = -weighted_inner(p2, g, weight_one);
  out.i3_l2 = -weighted_inner(p3, g, weight_one);
  out.i4_l2 = -weighted_inner(p4, g, weight_one);
  out.h3_forcing = sobolev_norm(p4, 3);
  return out;
}

LedgerTerms energy_ledger(const SpectralField& g, const DataRecipe& recipe, double t) {
  DataFamily fam = build_family(recipe, g.grid());
  Background bg(fam.theta0, recipe.mu, recipe.alpha, recipe.velocity_exponent);
  return energy_ledger(g, bg, t);
}

namespace {

// Derivative of the quadratic through (t0,y0), (t1,y1), (t2,y2) at te.
// Handles nonuniform spacing; used for both interior and endpoint stencils.
double lagrange3_deriv(double t0, double y0, double t1, double y1,
                       double t2, double y2, double te) {
  double d0 = (2.0 * te - t1 - t2) / ((t0 - t1) * (t0 - t2));
  double d1 = (2.0 * te - t0 - t2) / ((t1 - t0) * (t1 - t2));
  double d2 = (2.0 * te - t0 - t1) / ((t2 - t0) * (t2 - t1));
  return y0 * d0 + y1 * d1 + y2 * d2;
}

// Derivative at te of the Lagrange interpolant through k >= 2 nodes.
double lagrange_deriv(const double* t, const double* y, std::size_t k, double te) {
  double out = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    double s = 0.0;
    for (std::size_t m = 0; m < k; ++m) {
      if (m == j) continue;
      double p = 1.0;
      for (std::size_t l = 0; l < k; ++l) {
        if (l == j || l == m) continue;
        p *= (te - t[l]) / (t[j] - t[l]);
      }
      s += p / (t[j] - t[m]);
    }
    out += y[j] * s;
  }
  return out;
}

}  // namespace

void fill_ledger_residuals(std::vector<DiagnosticsRecord>& recs, double mu) {
  const std::size_t n = recs.size();
  if (n < 3) {
    for (auto& r : recs) r.ledger_residual = 0.0;
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t a = (i == 0) ? 0 : (i == n - 1 ? n - 3 : i - 1);
    const DiagnosticsRecord& r0 = recs[a];
    const DiagnosticsRecord& r1 = recs[a + 1];
    const DiagnosticsRecord& r2 = recs[a + 2];
    double de = lagrange3_deriv(r0.t, 0.5 * r0.h3_g_sq, r1.t, 0.5 * r1.h3_g_sq,
                                r2.t, 0.5 * r2.h3_g_sq, recs[i].t);
    const DiagnosticsRecord& r = recs[i];
    double diss = mu * r.lam_alpha_h3_g_sq;
    double rhs = r.i1 + r.i2 + r.i3 + r.i4;
    double resid = std::abs(de + diss - rhs);
    double scale = std::max({std::abs(de), diss, std::abs(r.i1), std::abs(r.i2),
                             std::abs(r.i3), std::abs(r.i4)});
    recs[i].ledger_residual = (scale > 0.0) ? resid / scale : 0.0;
  }
}

LedgerSummary ledger_consistency(const std::vector<DiagnosticsRecord>& recs,
                                 double mu, int stride) {
  if (stride < 1) throw std::invalid_argument("ledger_consistency: stride must be >= 1");
  std::vector<DiagnosticsRecord> view;
  view.reserve(recs.size() / static_cast<std::size_t>(stride) + 1);
  for (std::size_t i = 0; i < recs.size(); i += static_cast<std::size_t>(stride))
    view.push_back(recs[i]);
  for (std::size_t i = 1; i < view.size(); ++i)
    if (view[i].t - view[i - 1].t > 0.01 * (1.0 + 1e-6))
      throw std::invalid_argument(
          "ledger_consistency: sampling interval exceeds 0.01; the finite "
          "differences would not resolve d/dt of the energy");

  LedgerSummary s;
  const std::size_t n = view.size();
  s.rows = n;
  if (n < 3) return s;
  const std::size_t width = std::min<std::size_t>(5, n);
  std::vector<double> resid(n);
  double scale = 0.0, acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = std::min(i >= width / 2 ? i - width / 2 : 0, n - width);
    double ts[5], ys[5];
    for (std::size_t j = 0; j < width; ++j) {
      ts[j] = view[a + j].t;
      ys[j] = 0.5 * view[a + j].h3_g_sq;
    }
    const double de = lagrange_deriv(ts, ys, width, view[i].t);
    const DiagnosticsRecord& r = view[i];
    const double diss = mu * r.lam_alpha_h3_g_sq;
    resid[i] = std::abs(de + diss - (r.i1 + r.i2 + r.i3 + r.i4));
    scale = std::max({scale, std::abs(de), diss, std::abs(r.i1), std::abs(r.i2),
                      std::abs(r.i3), std::abs(r.i4)});
  }
  if (scale == 0.0) return s;
  for (double r : resid) {
    s.max_rel = std::max(s.max_rel, r / scale);
    acc += r / scale;
  }
  s.mean_rel = acc / static_cast<double>(n);
  return s;
}

BoundCheck theorem_bound_check(const std::vector<DiagnosticsRecord>& recs,
                               const VerificationParams& vp) {
  BoundCheck out;
  out.limit = (vp.c_universal + 1.0) * vp.epsilon;
  for (const auto& r : recs)
    out.sup = std::max(out.sup, r.h3_g_sq + r.dissipation_integral);
  out.margin = out.limit - out.sup;
  out.pass = out.sup <= out.limit;
  return out;
}

}  // namespace sqg
