#pragma once

#include <cstdint>
#include <optional>

#include "sqg/operators.hpp"
#include "sqg/spectral_field.hpp"

namespace sqg {

enum class G0Kind { zero, random_band };

// Seed description for the perturbation component of the initial data.
struct G0Spec {
  G0Kind kind = G0Kind::zero;
  double target_h3_sq = 0.0;  // exact ||g0||^2_{H3} after rescaling
  double k_min = 0.0;         // radial band, physical wavenumber units
  double k_max = 1.0;
  std::uint64_t seed = 1;
};

// Parameters of the large-amplitude initial-data family. The scalar part is
// amplitude * chi where chi-hat is 1 on the core set
// {|k1-k2| <= delta/3, 4/3 <= |k| <= 3/2}, vanishes outside
// {|k1-k2| <= delta} intersected with the same radial band, and steps
// smoothly in between.
struct DataRecipe {
  double delta = 0.05;   // strip width, in (0, 1/10]
  double mu = 1.0;       // dissipation coefficient
  double alpha = 0.25;   // dissipation exponent, [0, 1/2) when theorem_mode
  bool theorem_mode = true;
  std::optional<double> amplitude_override;  // default rule when unset
  double velocity_exponent = -0.5;  // u-hat = i(k2,-k1)|k|^{2e} theta-hat
  G0Spec g0;

  // delta^{-1} * ln ln(1/delta) unless overridden.
  double amplitude() const;

  // Throws std::invalid_argument naming the offending field (dotted path).
  void validate() const;
};

// Smallness-condition evaluation knobs.
struct VerificationParams {
  double c_universal = 1.0;
  double epsilon = 0.1;
  double t_horizon = 0.0;  // 0 selects 40 / (mu * (4/3)^{2 alpha})
  double quad_tol = 1e-8;

  void validate() const;
  double horizon_for(const DataRecipe& r) const;
};

// Spectral cutoff profile: coefficients chosen so the continuum transform
// sampled at lattice points equals the profile value in [0, 1]
// (c_k = profile(k) * dk^2 / (2 pi)^2).
SpectralField build_chi(const DataRecipe& recipe, const Grid& grid);

// Pointwise profile value at wavenumber (k1, k2); exposed for direct lattice
// checks in tests.
double chi_profile(const DataRecipe& recipe, double k1, double k2);

struct DataFamily {
  SpectralField a0;      // amplitude * chi
  SpectralField theta0;  // = a0
  VectorField u0;        // velocity map applied to theta0
  SpectralField g0;      // per recipe.g0
};

DataFamily build_family(const DataRecipe& recipe, const Grid& grid);

}  // namespace sqg
