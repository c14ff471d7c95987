#include "sqg/recipe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sqg/norms.hpp"
#include "sqg/random_field.hpp"

namespace sqg {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

double smoothstep(double x) {
  x = std::clamp(x, 0.0, 1.0);
  return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

}  // namespace

double DataRecipe::amplitude() const {
  if (amplitude_override) return *amplitude_override;
  return (1.0 / delta) * std::log(std::log(1.0 / delta));
}

void DataRecipe::validate() const {
  require(std::isfinite(delta) && delta > 0.0 && delta <= 0.1,
          "recipe.delta must lie in (0, 1/10], got " + std::to_string(delta));
  require(delta < 1.0 / std::numbers::e,
          "recipe.delta must satisfy delta < 1/e so ln|ln delta| > 0");
  require(std::isfinite(mu) && mu > 0.0,
          "recipe.mu must be > 0, got " + std::to_string(mu));
  if (theorem_mode) {
    require(alpha >= 0.0 && alpha < 0.5,
            "recipe.alpha = " + std::to_string(alpha) +
                " violates the dissipation-exponent hypothesis alpha in [0, 1/2); "
                "set recipe.theorem_mode = false for control runs");
  } else {
    require(alpha >= 0.0 && alpha < 1.0,
            "recipe.alpha must lie in [0, 1), got " + std::to_string(alpha));
  }
  if (amplitude_override)
    require(std::isfinite(*amplitude_override) && *amplitude_override > 0.0,
            "recipe.amplitude must be finite and > 0");
  require(std::isfinite(velocity_exponent),
          "recipe.velocity_exponent must be finite");
  require(g0.target_h3_sq >= 0.0 && std::isfinite(g0.target_h3_sq),
          "recipe.g0.target_h3_sq must be >= 0");
  if (g0.kind == G0Kind::random_band)
    require(g0.k_min >= 0.0 && g0.k_min < g0.k_max,
            "recipe.g0 band needs 0 <= k_min < k_max");
}

void VerificationParams::validate() const {
  require(c_universal >= 1.0, "verify.c_universal must be >= 1");
  require(epsilon > 0.0 && std::isfinite(epsilon), "verify.epsilon must be > 0");
  require(t_horizon >= 0.0, "verify.t_horizon must be >= 0 (0 = default)");
  require(quad_tol > 0.0, "verify.quad_tol must be > 0");
}

double VerificationParams::horizon_for(const DataRecipe& r) const {
  if (t_horizon > 0.0) return t_horizon;
  return 40.0 / (r.mu * std::pow(Grid::annulus_inner, 2.0 * r.alpha));
}

double chi_profile(const DataRecipe& recipe, double k1, double k2) {
  const double r = std::hypot(k1, k2);
  const double radial_excess =
      (r >= Grid::annulus_inner && r <= Grid::annulus_outer) ? 0.0 : 1.0;
  const double sd = std::abs(k1 - k2);
  const double inner = recipe.delta / 3.0;
  const double strip_excess = std::clamp((sd - inner) / (recipe.delta - inner), 0.0, 1.0);
  return 1.0 - smoothstep(std::max(strip_excess, radial_excess));
}

SpectralField build_chi(const DataRecipe& recipe, const Grid& grid) {
  recipe.validate();
  SpectralField chi(grid);
  const double dk = grid.dk();
  const double coeff_scale = dk * dk / (4.0 * std::numbers::pi * std::numbers::pi);
  const int half = grid.n / 2;
  int core_count = 0;
  for (int j1 = -half; j1 < half; ++j1)
    for (int j2 = -half; j2 < half; ++j2) {
      const double k1 = dk * j1;
      const double k2 = dk * j2;
      const double p = chi_profile(recipe, k1, k2);
      if (p == 0.0) continue;
      if (p >= 1.0) ++core_count;
      chi.at_signed(j1, j2) = cplx{p * coeff_scale, 0.0};
    }
  if (core_count == 0)
    throw std::runtime_error(
        "initial-data strip is unresolved on this grid: no lattice mode has "
        "|k1 - k2| <= delta/3 inside the radial band [4/3, 3/2]; refine the "
        "grid (dk <= delta/6 always suffices)");
  return chi;
}

DataFamily build_family(const DataRecipe& recipe, const Grid& grid) {
  SpectralField a0 = build_chi(recipe, grid);
  a0 *= recipe.amplitude();
  SpectralField theta0 = a0;
  VectorField u0 = velocity_from_scalar(theta0, recipe.velocity_exponent);
  SpectralField g0(grid);
  if (recipe.g0.kind == G0Kind::random_band && recipe.g0.target_h3_sq > 0.0) {
    g0 = random_radial_band_field(grid, recipe.g0.k_min, recipe.g0.k_max,
                                  recipe.g0.seed);
    if (sobolev_norm(g0, 3) == 0.0)
      throw std::runtime_error("recipe.g0 radial band contains no lattice modes");
    normalize_h3_sq(g0, recipe.g0.target_h3_sq);
  }
  return DataFamily{std::move(a0), std::move(theta0), std::move(u0), std::move(g0)};
}

}  // namespace sqg
