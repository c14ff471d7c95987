#pragma once

#include <complex>
#include <vector>

#include "sqg/grid.hpp"

namespace sqg {

using cplx = std::complex<double>;

// Scalar field stored by its spectral synthesis amplitudes:
//   f(x) = sum_k c_k e^{i k.x},  so  ||f||_{L2}^2 = box_area * sum_k |c_k|^2.
// The continuum Fourier transform at a lattice wavenumber is c_k * box_area.
// Row-major storage, k1 slow axis, k2 fast: flat = i1 * n + i2.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const Grid& g) : grid_(g), c_(g.size(), cplx{0.0, 0.0}) {}

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return c_.size(); }

  cplx& at(int i1, int i2) { return c_[static_cast<std::size_t>(i1) * grid_.n + i2]; }
  const cplx& at(int i1, int i2) const {
    return c_[static_cast<std::size_t>(i1) * grid_.n + i2];
  }
  // Signed lattice indices j in [-n/2, n/2 - 1].
  cplx& at_signed(int j1, int j2) {
    return at(grid_.storage_index(j1), grid_.storage_index(j2));
  }
  const cplx& at_signed(int j1, int j2) const {
    return at(grid_.storage_index(j1), grid_.storage_index(j2));
  }

  cplx* data() { return c_.data(); }
  const cplx* data() const { return c_.data(); }
  std::vector<cplx>& coeffs() { return c_; }
  const std::vector<cplx>& coeffs() const { return c_; }

  // Continuum-convention transform value at signed lattice indices.
  cplx continuum_ft_at(int j1, int j2) const { return at_signed(j1, j2) * grid_.area(); }

  cplx mean_mode() const { return c_.empty() ? cplx{0, 0} : c_[0]; }
  void set_zero_mean() {
    if (!c_.empty()) c_[0] = cplx{0, 0};
  }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(SpectralField a, double s) { return a *= s; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

  double max_abs_coeff() const;
  bool all_finite() const;

  // Max deviation |c(k) - conj(c(-k))| (a real-valued field has 0).
  double conjugate_asymmetry() const;
  // Project onto the conjugate-symmetric part: c <- (c + conj(c(-k)))/2.
  void symmetrize();

 private:
  Grid grid_;
  std::vector<cplx> c_;
};

// Velocity or other two-component field.
struct VectorField {
  SpectralField x1, x2;
  VectorField() = default;
  explicit VectorField(const Grid& g) : x1(g), x2(g) {}
};

void require_same_grid(const SpectralField& a, const SpectralField& b, const char* op);

}  // namespace sqg
