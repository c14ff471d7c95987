#include "sqg/spectral_field.hpp"

#include <stdexcept>

namespace sqg {

void require_same_grid(const SpectralField& a, const SpectralField& b, const char* op) {
  if (a.grid() != b.grid())
    throw std::invalid_argument(std::string(op) + ": fields live on different grids");
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_same_grid(*this, o, "operator+");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_same_grid(*this, o, "operator-");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& v : c_) v *= s;
  return *this;
}

double SpectralField::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& v : c_) m = std::max(m, std::abs(v));
  return m;
}

bool SpectralField::all_finite() const {
  for (const auto& v : c_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

double SpectralField::conjugate_asymmetry() const {
  const int n = grid_.n;
  double m = 0.0;
  for (int i1 = 0; i1 < n; ++i1) {
    const int m1 = (n - i1) % n;
    for (int i2 = 0; i2 < n; ++i2) {
      const int m2 = (n - i2) % n;
      m = std::max(m, std::abs(at(i1, i2) - std::conj(at(m1, m2))));
    }
  }
  return m;
}

void SpectralField::symmetrize() {
  const int n = grid_.n;
  for (int i1 = 0; i1 < n; ++i1) {
    const int m1 = (n - i1) % n;
    for (int i2 = 0; i2 < n; ++i2) {
      const int m2 = (n - i2) % n;
      if (i1 * n + i2 > m1 * n + m2) continue;
      const cplx a = at(i1, i2);
      const cplx b = at(m1, m2);
      const cplx s = 0.5 * (a + std::conj(b));
      at(i1, i2) = s;
      at(m1, m2) = std::conj(s);
    }
  }
}

}  // namespace sqg
