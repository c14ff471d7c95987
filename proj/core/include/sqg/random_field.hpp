#pragma once

#include <cstdint>
#include <random>

#include "sqg/spectral_field.hpp"

namespace sqg {

// Deterministic RNG stream: mt19937_64 (sequence pinned by the standard) plus
// a hand-rolled Box-Muller normal (std::normal_distribution is
// implementation-defined, which would break bitwise reproducibility).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform();   // [0, 1)
  double gaussian();  // standard normal
  std::uint64_t next_u64() { return eng_(); }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// i.i.d. complex Gaussian coefficients on modes with |j|_inf <= max_index,
// conjugate-symmetrized and mean-zeroed.
SpectralField random_band_field(const Grid& g, int max_index, std::uint64_t seed);

// Same but restricted to k_min <= |k| <= k_max (radial band).
SpectralField random_radial_band_field(const Grid& g, double k_min, double k_max,
                                       std::uint64_t seed);

// Supported on the lattice annulus 4/3 <= |k| <= 3/2 (as the background is).
SpectralField random_annulus_field(const Grid& g, std::uint64_t seed);

// Rescale so sobolev_norm(f, 3)^2 == h3_sq_target (throws on zero field).
void normalize_h3_sq(SpectralField& f, double h3_sq_target);

}  // namespace sqg
