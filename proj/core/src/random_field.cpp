#include "sqg/random_field.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "sqg/norms.hpp"

namespace sqg {

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

namespace {

template <typename Keep>
SpectralField random_masked_field(const Grid& g, std::uint64_t seed, Keep keep) {
  Rng rng(seed);
  SpectralField f(g);
  // Fixed traversal order over signed indices keeps the stream reproducible
  // and grid-storage independent.
  const int half = g.n / 2;
  for (int j1 = -half; j1 < half; ++j1)
    for (int j2 = -half; j2 < half; ++j2) {
      if (!keep(j1, j2)) continue;
      const double re = rng.gaussian();
      const double im = rng.gaussian();
      f.at_signed(j1, j2) = cplx{re, im};
    }
  f.symmetrize();
  f.set_zero_mean();
  return f;
}

}  // namespace

SpectralField random_band_field(const Grid& g, int max_index, std::uint64_t seed) {
  if (max_index >= g.n / 2)
    throw std::invalid_argument("random_band_field: band exceeds representable range");
  return random_masked_field(g, seed, [&](int j1, int j2) {
    return std::abs(j1) <= max_index && std::abs(j2) <= max_index;
  });
}

SpectralField random_radial_band_field(const Grid& g, double k_min, double k_max,
                                       std::uint64_t seed) {
  const double dk = g.dk();
  if (k_min < 0.0 || k_min >= k_max)
    throw std::invalid_argument("random_radial_band_field: need 0 <= k_min < k_max");
  if (k_max >= dk * (g.n / 2))
    throw std::invalid_argument("random_radial_band_field: band exceeds representable range");
  return random_masked_field(g, seed, [&](int j1, int j2) {
    const double r = std::hypot(dk * j1, dk * j2);
    return r >= k_min && r <= k_max;
  });
}

SpectralField random_annulus_field(const Grid& g, std::uint64_t seed) {
  const double dk = g.dk();
  if (Grid::annulus_outer >= dk * (g.n / 2))
    throw std::invalid_argument("random_annulus_field: annulus exceeds representable range");
  return random_masked_field(g, seed, [&](int j1, int j2) {
    const double r = std::hypot(dk * j1, dk * j2);
    return r >= Grid::annulus_inner && r <= Grid::annulus_outer;
  });
}

void normalize_h3_sq(SpectralField& f, double h3_sq_target) {
  if (h3_sq_target < 0.0)
    throw std::invalid_argument("normalize_h3_sq: target must be >= 0");
  const double h3 = sobolev_norm(f, 3);
  if (h3 == 0.0) {
    if (h3_sq_target == 0.0) return;
    throw std::invalid_argument("normalize_h3_sq: zero field cannot be scaled to target");
  }
  f *= std::sqrt(h3_sq_target) / h3;
}

}  // namespace sqg
