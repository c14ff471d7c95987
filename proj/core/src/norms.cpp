#include "sqg/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "sqg/fft.hpp"

namespace sqg {

double lebesgue_norm(const SpectralField& f, Lp p) {
  if (p == Lp::two) {
    double s = 0.0;
    for (const auto& v : f.coeffs()) s += std::norm(v);
    return std::sqrt(s * f.grid().area());
  }
  PhysicalField phys = to_physical(f);
  return max_abs_real(phys);
}

double linf_upsampled(const SpectralField& f, int factor) {
  if (factor < 1) throw std::invalid_argument("linf_upsampled: factor must be >= 1");
  if (factor == 1) return lebesgue_norm(f, Lp::inf);
  const Grid& g = f.grid();
  Grid fine(g.n * factor, g.box_len);
  SpectralField padded(fine);
  for (int i1 = 0; i1 < g.n; ++i1) {
    const int j1 = g.signed_index(i1);
    for (int i2 = 0; i2 < g.n; ++i2) {
      const int j2 = g.signed_index(i2);
      padded.at_signed(j1, j2) = f.at(i1, i2);
    }
  }
  return lebesgue_norm(padded, Lp::inf);
}

double sobolev_weight(int m, double k1, double k2) {
  // sum over b1 + b2 <= m of (k1^2)^b1 (k2^2)^b2, with 0^0 = 1.
  const double a = k1 * k1, b = k2 * k2;
  double total = 0.0;
  double pa = 1.0;
  for (int b1 = 0; b1 <= m; ++b1) {
    double pb = 1.0;
    for (int b2 = 0; b2 + b1 <= m; ++b2) {
      total += pa * pb;
      pb *= b;
    }
    pa *= a;
  }
  return total;
}

double sobolev_norm(const SpectralField& f, int m, double alpha_shift) {
  if (m < 0) throw std::invalid_argument("sobolev_norm: order must be >= 0");
  const Grid& g = f.grid();
  double s = 0.0;
  for (int i1 = 0; i1 < g.n; ++i1) {
    const double k1 = g.wavenumber(i1);
    for (int i2 = 0; i2 < g.n; ++i2) {
      const double k2 = g.wavenumber(i2);
      const double c2 = std::norm(f.at(i1, i2));
      if (c2 == 0.0) continue;
      double w = sobolev_weight(m, k1, k2);
      if (alpha_shift != 0.0) {
        const double k2norm = k1 * k1 + k2 * k2;
        w *= (k2norm == 0.0) ? 0.0 : std::pow(k2norm, alpha_shift);
      }
      s += w * c2;
    }
  }
  return std::sqrt(s * g.area());
}

double weighted_inner(const SpectralField& a, const SpectralField& b,
                      double (*weight)(double k1, double k2)) {
  require_same_grid(a, b, "weighted_inner");
  const Grid& g = a.grid();
  double s = 0.0;
  for (int i1 = 0; i1 < g.n; ++i1) {
    const double k1 = g.wavenumber(i1);
    for (int i2 = 0; i2 < g.n; ++i2) {
      const double k2 = g.wavenumber(i2);
      const cplx va = a.at(i1, i2);
      const cplx vb = b.at(i1, i2);
      s += weight(k1, k2) * (va.real() * vb.real() + va.imag() * vb.imag());
    }
  }
  return s * g.area();
}

double linf_vector(const VectorField& u) {
  PhysicalField p1 = to_physical(u.x1);
  PhysicalField p2 = to_physical(u.x2);
  double m = 0.0;
  for (std::size_t i = 0; i < p1.size(); ++i)
    m = std::max(m, std::hypot(p1[i].real(), p2[i].real()));
  return m;
}

}  // namespace sqg
