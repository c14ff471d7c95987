#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sqg/norms.hpp"
#include "sqg/random_field.hpp"
#include "sqg/recipe.hpp"
#include "test_util.hpp"

using namespace sqg;

namespace {
constexpr double kPi = std::numbers::pi;

// dk = 1/12 resolves the radial band diagonally: (12,12)/12 = sqrt(2).
Grid coarse_annulus_grid() { return Grid(64, 24.0 * kPi); }
}  // namespace

TEST_CASE("amplitude rule: delta^{-1} ln ln (1/delta)") {
  DataRecipe r;
  r.delta = std::exp(-std::numbers::e);  // ln ln (1/delta) = 1
  CHECK(r.amplitude() == doctest::Approx(std::exp(std::numbers::e)).epsilon(1e-14));
  r.delta = 0.05;
  CHECK(r.amplitude() ==
        doctest::Approx(20.0 * std::log(std::log(20.0))).epsilon(1e-14));
  r.amplitude_override = 7.5;
  CHECK(r.amplitude() == 7.5);
}

TEST_CASE("recipe validation names the offending field") {
  DataRecipe r;
  r.delta = 0.2;
  CHECK_THROWS_WITH_AS(r.validate(),
                       doctest::Contains("recipe.delta"), std::invalid_argument);
  r.delta = 0.05;
  r.mu = 0.0;
  CHECK_THROWS_WITH_AS(r.validate(),
                       doctest::Contains("recipe.mu"), std::invalid_argument);
  r.mu = 1.0;
  r.alpha = 0.7;
  CHECK_THROWS_WITH_AS(r.validate(),
                       doctest::Contains("[0, 1/2)"), std::invalid_argument);
  r.theorem_mode = false;
  CHECK_NOTHROW(r.validate());  // control runs may exceed the hypothesis range
  r.alpha = 1.2;
  CHECK_THROWS_AS(r.validate(), std::invalid_argument);
}

TEST_CASE("cutoff profile: 1 on the core set, 0 outside, monotone between") {
  DataRecipe r;
  r.delta = 0.09;
  // Diagonal point inside the annulus: |k| = sqrt(2), k1 - k2 = 0.
  CHECK(chi_profile(r, 1.0, 1.0) == 1.0);
  // Separation above delta kills the profile even at an in-band radius
  // (|(1.05, 0.87)| ~ 1.364).
  CHECK(chi_profile(r, 1.05, 1.05 - 2.0 * r.delta) == 0.0);
  // Radius outside [4/3, 3/2] kills it even on the diagonal.
  CHECK(chi_profile(r, 0.9, 0.9) == 0.0);
  CHECK(chi_profile(r, 1.2, 1.2) == 0.0);
  // Between delta/3 and delta the step is strictly interior and monotone.
  const double base = 1.0;  // diagonal radius sqrt(2); vary the separation
  double prev = 1.0;
  for (double frac : {0.4, 0.55, 0.7, 0.85}) {
    const double sep = frac * r.delta;
    const double v = chi_profile(r, base + sep / 2.0, base - sep / 2.0);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("chi coefficients reproduce the profile in the continuum convention") {
  DataRecipe r;
  r.delta = 0.1;
  Grid g = coarse_annulus_grid();
  SpectralField chi = build_chi(r, g);
  for (int j1 : {12, 13})
    for (int j2 : {12, 13}) {
      const double p = chi_profile(r, g.dk() * j1, g.dk() * j2);
      CHECK(std::abs(chi.continuum_ft_at(j1, j2) - cplx{p, 0.0}) < 1e-15);
    }
  CHECK(chi.continuum_ft_at(0, 0) == cplx{});
}

TEST_CASE("unresolvable strips are rejected with a grid hint") {
  DataRecipe r;
  r.delta = 0.05;
  // dk = 0.7: diagonal lattice radii (sqrt(2) * 0.7 * j = 0.99, 1.98, ...)
  // step over the radial band, and off-diagonal modes are separated by 0.7,
  // far outside the strip, so no lattice mode hits the core set.
  CHECK_THROWS_WITH_AS(build_chi(r, Grid(16, 2.0 * kPi / 0.7)),
                       doctest::Contains("dk <= delta/6"), std::runtime_error);
  CHECK(Grid(16, 2.0 * kPi).strip_resolvable(0.05) == false);
  CHECK(Grid(256, 240.0 * kPi).strip_resolvable(0.05) == true);  // dk = 1/120
}

TEST_CASE("family assembly: theta0 = amplitude * chi, u0 its velocity, g0 scaled") {
  DataRecipe r;
  r.delta = 0.1;
  r.g0.kind = G0Kind::random_band;
  r.g0.target_h3_sq = 0.25;
  r.g0.k_min = 0.2;
  r.g0.k_max = 0.6;
  r.g0.seed = 5;
  Grid g = coarse_annulus_grid();
  DataFamily fam = build_family(r, g);

  CHECK(testutil::max_coeff_diff(fam.theta0, fam.a0) == 0.0);
  const double p = chi_profile(r, g.dk() * 12, g.dk() * 12);
  CHECK(p == 1.0);
  CHECK(std::abs(fam.a0.continuum_ft_at(12, 12) - cplx{r.amplitude(), 0.0}) <
        1e-12 * r.amplitude());

  const double h3 = sobolev_norm(fam.g0, 3);
  CHECK(h3 * h3 == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(fam.g0.mean_mode() == cplx{});
  CHECK(fam.g0.conjugate_asymmetry() < 1e-15);

  // The velocity component agrees with applying the map directly.
  VectorField u = velocity_from_scalar(fam.theta0, r.velocity_exponent);
  CHECK(testutil::max_coeff_diff(fam.u0.x1, u.x1) == 0.0);
  CHECK(testutil::max_coeff_diff(fam.u0.x2, u.x2) == 0.0);

  // Determinism: the same recipe rebuilds the same family.
  DataFamily fam2 = build_family(r, g);
  CHECK(testutil::max_coeff_diff(fam.g0, fam2.g0) == 0.0);
}

TEST_CASE("g0 band with no lattice modes is rejected") {
  DataRecipe r;
  r.delta = 0.1;
  r.g0.kind = G0Kind::random_band;
  r.g0.target_h3_sq = 1.0;
  r.g0.k_min = 0.001;
  r.g0.k_max = 0.002;  // below dk: empty band
  CHECK_THROWS_WITH_AS(build_family(r, coarse_annulus_grid()),
                       doctest::Contains("no lattice modes"), std::runtime_error);
}

TEST_CASE("h3 normalization hits the target exactly and rejects zero fields") {
  Grid g(16, 2.0 * kPi);
  SpectralField f = random_band_field(g, 4, 9);
  normalize_h3_sq(f, 0.01);
  const double h3 = sobolev_norm(f, 3);
  CHECK(h3 * h3 == doctest::Approx(0.01).epsilon(1e-13));
  SpectralField zero(g);
  CHECK_THROWS_AS(normalize_h3_sq(zero, 1.0), std::invalid_argument);
}
