#include "sqg/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace sqg {

namespace {

void require_zero_mean(const SpectralField& f, const char* op) {
  if (std::abs(f.mean_mode()) > 1e-13 * std::max(1.0, f.max_abs_coeff()))
    throw std::invalid_argument(std::string(op) + ": field must have zero mean");
}

}  // namespace

SpectralField fractional_laplacian(const SpectralField& f, double a, int sign) {
  if (a < 0.0) throw std::invalid_argument("fractional_laplacian: order must be >= 0");
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("fractional_laplacian: sign must be +1 or -1");
  if (sign == -1 && a > 0.0) require_zero_mean(f, "fractional_laplacian (inverse)");
  const Grid& g = f.grid();
  SpectralField out(g);
  for (int i1 = 0; i1 < g.n; ++i1) {
    const double k1 = g.wavenumber(i1);
    for (int i2 = 0; i2 < g.n; ++i2) {
      const double k2 = g.wavenumber(i2);
      const double k2norm = k1 * k1 + k2 * k2;
      double m;
      if (k2norm == 0.0)
        m = (a == 0.0) ? 1.0 : 0.0;  // zero mode annihilated for a > 0
      else
        m = std::pow(k2norm, sign * a);
      out.at(i1, i2) = m * f.at(i1, i2);
    }
  }
  return out;
}

VectorField velocity_from_scalar(const SpectralField& theta, double exponent) {
  require_zero_mean(theta, "velocity_from_scalar");
  const Grid& g = theta.grid();
  VectorField u(g);
  for (int i1 = 0; i1 < g.n; ++i1) {
    const double k1 = g.wavenumber(i1);
    for (int i2 = 0; i2 < g.n; ++i2) {
      const double k2 = g.wavenumber(i2);
      const double k2norm = k1 * k1 + k2 * k2;
      if (k2norm == 0.0) continue;
      const double m = std::pow(k2norm, exponent);
      const cplx t = theta.at(i1, i2);
      u.x1.at(i1, i2) = cplx{0.0, k2 * m} * t;
      u.x2.at(i1, i2) = cplx{0.0, -k1 * m} * t;
    }
  }
  return u;
}

SpectralField derivative(const SpectralField& f, int b1, int b2) {
  if (b1 < 0 || b2 < 0) throw std::invalid_argument("derivative: orders must be >= 0");
  const Grid& g = f.grid();
  SpectralField out(g);
  for (int i1 = 0; i1 < g.n; ++i1) {
    const double k1 = g.wavenumber(i1);
    for (int i2 = 0; i2 < g.n; ++i2) {
      const double k2 = g.wavenumber(i2);
      cplx m{1.0, 0.0};
      for (int b = 0; b < b1; ++b) m *= cplx{0.0, k1};
      for (int b = 0; b < b2; ++b) m *= cplx{0.0, k2};
      out.at(i1, i2) = m * f.at(i1, i2);
    }
  }
  return out;
}

bool inside_dealias_block(const Grid& g, int j1, int j2) {
  const int lim = g.dealias_limit();
  return std::abs(j1) <= lim && std::abs(j2) <= lim;
}

SpectralField dealias(const SpectralField& f) {
  const Grid& g = f.grid();
  SpectralField out(g);
  const int lim = g.dealias_limit();
  for (int i1 = 0; i1 < g.n; ++i1) {
    if (std::abs(g.signed_index(i1)) > lim) continue;
    for (int i2 = 0; i2 < g.n; ++i2) {
      if (std::abs(g.signed_index(i2)) > lim) continue;
      out.at(i1, i2) = f.at(i1, i2);
    }
  }
  return out;
}

namespace {

SpectralField physical_multiply(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f, g, "pointwise_product");
  PhysicalField pf = to_physical(f);
  PhysicalField pg = to_physical(g);
  for (std::size_t i = 0; i < pf.size(); ++i) pf[i] *= pg[i];
  SpectralField out = to_spectral(pf, f.grid());
  out.symmetrize();  // inputs represent real fields; discard rounding skew
  return out;
}

}  // namespace

SpectralField pointwise_product(const SpectralField& f, const SpectralField& g) {
  return dealias(physical_multiply(f, g));
}

SpectralField pointwise_product_full(const SpectralField& f, const SpectralField& g) {
  return physical_multiply(f, g);
}

SpectralField advect(const VectorField& u, const SpectralField& f) {
  require_same_grid(u.x1, f, "advect");
  PhysicalField u1 = to_physical(u.x1);
  PhysicalField u2 = to_physical(u.x2);
  PhysicalField d1 = to_physical(derivative(f, 1, 0));
  PhysicalField d2 = to_physical(derivative(f, 0, 1));
  for (std::size_t i = 0; i < u1.size(); ++i) u1[i] = u1[i] * d1[i] + u2[i] * d2[i];
  SpectralField out = to_spectral(u1, f.grid());
  out.symmetrize();
  return dealias(out);
}

}  // namespace sqg
