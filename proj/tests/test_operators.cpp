#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sqg/norms.hpp"
#include "sqg/operators.hpp"
#include "sqg/random_field.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace sqg;
using testutil::cosine_mode;
using testutil::max_coeff;
using testutil::max_coeff_diff;
using testutil::sine_mode;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("fractional laplacian is the diagonal multiplier |k|^{2a}") {
  Grid g(16, 2.0 * kPi);
  SpectralField f = cosine_mode(g, 3, 4);
  SpectralField lap = fractional_laplacian(f, 0.5);
  // |k| = 5 at (3, 4), so Lambda f = 5 f.
  CHECK(max_coeff_diff(lap, 5.0 * f) < 1e-14);

  SpectralField inv = fractional_laplacian(lap, 0.5, -1);
  CHECK(max_coeff_diff(inv, f) < 1e-14);

  SpectralField with_mean = f;
  with_mean.coeffs()[0] = cplx{1.0, 0.0};
  CHECK_THROWS_AS(fractional_laplacian(with_mean, 0.5, -1), std::invalid_argument);
}

TEST_CASE("velocity map: unit-modulus multiplier at the default exponent") {
  Grid g(16, 2.0 * kPi);
  SpectralField f = cosine_mode(g, 3, 4);
  VectorField u = velocity_from_scalar(f);
  // Mode-wise |u_hat| = |k|^{-1} |(k2, -k1)| |f_hat| = |f_hat|.
  const cplx c = f.at_signed(3, 4);
  CHECK(std::abs(u.x1.at_signed(3, 4) - cplx{0.0, 4.0 / 5.0} * c) < 1e-15);
  CHECK(std::abs(u.x2.at_signed(3, 4) - cplx{0.0, -3.0 / 5.0} * c) < 1e-15);
  CHECK(lebesgue_norm(u.x1, Lp::two) * lebesgue_norm(u.x1, Lp::two) +
            lebesgue_norm(u.x2, Lp::two) * lebesgue_norm(u.x2, Lp::two) ==
        doctest::Approx(std::pow(lebesgue_norm(f, Lp::two), 2)).epsilon(1e-13));
}

TEST_CASE("velocity map: exponent 1/4 scales mode (3,4) by 5^{3/2}") {
  Grid g(16, 2.0 * kPi);
  SpectralField f = cosine_mode(g, 3, 4);
  VectorField u = velocity_from_scalar(f, 0.25);
  // u_hat = i (k2, -k1) |k|^{2e} f_hat, so the vector magnitude per unit
  // coefficient is |k|^{1 + 2e} = 5^{3/2} at e = 1/4.
  VectorField ref = oracle::velocity(f, 0.25);
  CHECK(max_coeff_diff(u.x1, ref.x1) < 1e-14);
  CHECK(max_coeff_diff(u.x2, ref.x2) < 1e-14);
  const double mag = std::hypot(std::abs(u.x1.at_signed(3, 4)),
                                std::abs(u.x2.at_signed(3, 4)));
  CHECK(mag == doctest::Approx(std::pow(5.0, 1.5) * std::abs(f.at_signed(3, 4)))
                   .epsilon(1e-14));
}

TEST_CASE("velocity of a nonzero-mean field is rejected") {
  Grid g(16, 2.0 * kPi);
  SpectralField f = cosine_mode(g, 1, 0);
  f.coeffs()[0] = cplx{0.5, 0.0};
  CHECK_THROWS_AS(velocity_from_scalar(f), std::invalid_argument);
}

TEST_CASE("derivative operator matches the multiplier oracle") {
  Grid g(16, 4.0 * kPi);
  SpectralField f = random_band_field(g, 5, 3);
  for (int b1 = 0; b1 <= 2; ++b1)
    for (int b2 = 0; b2 <= 2; ++b2) {
      SpectralField lib = derivative(f, b1, b2);
      SpectralField ref = oracle::derivative(f, b1, b2);
      CHECK(max_coeff_diff(lib, ref) < 1e-13 * std::max(1.0, max_coeff(ref)));
    }
}

TEST_CASE("dealias zeroes exactly the modes outside the retained block") {
  Grid g(24, 2.0 * kPi);
  SpectralField f(g);
  const int half = g.n / 2;
  for (int j1 = -half; j1 < half; ++j1)
    for (int j2 = -half; j2 < half; ++j2) f.at_signed(j1, j2) = cplx{1.0, 0.0};
  SpectralField d = dealias(f);
  for (int j1 = -half; j1 < half; ++j1)
    for (int j2 = -half; j2 < half; ++j2) {
      const bool inside = std::abs(j1) <= g.dealias_limit() &&
                          std::abs(j2) <= g.dealias_limit();
      CHECK(inside_dealias_block(g, j1, j2) == inside);
      CHECK(d.at_signed(j1, j2) == (inside ? cplx{1.0, 0.0} : cplx{}));
    }
}

TEST_CASE("band-limited grid product equals the convolution oracle exactly") {
  // |j|_inf <= n/4 - 1 keeps every convolution image representable, so the
  // transform pair introduces only roundoff.
  Grid g(24, 2.0 * kPi);
  const int band = g.n / 4 - 1;
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    SpectralField f = random_band_field(g, band, seed);
    SpectralField h = random_band_field(g, band, seed + 1000);
    SpectralField lib = pointwise_product_full(f, h);
    SpectralField ref = oracle::product(f, h);
    CHECK(max_coeff_diff(lib, ref) < 1e-12 * std::max(1.0, max_coeff(ref)));
  }
}

TEST_CASE("dealiased product equals the truncated convolution on block input") {
  // Inputs supported in |j| <= n/3 alias only outside the retained block, so
  // after dealiasing the grid product is the exact truncated convolution.
  Grid g(24, 2.0 * kPi);
  for (std::uint64_t seed : {5ull, 6ull}) {
    SpectralField f = dealias(random_band_field(g, g.dealias_limit(), seed));
    SpectralField h = dealias(random_band_field(g, g.dealias_limit(), seed + 77));
    SpectralField lib = pointwise_product(f, h);
    SpectralField ref = oracle::product_dealiased(f, h);
    CHECK(max_coeff_diff(lib, ref) < 1e-12 * std::max(1.0, max_coeff(ref)));
  }
}

TEST_CASE("advection matches the oracle and the closed form u=(0,sin x1)") {
  Grid g(24, 2.0 * kPi);

  // Closed form: u = (0, sin x1), f = sin x2 -> u . grad f = sin x1 cos x2.
  VectorField u(g);
  u.x2 = sine_mode(g, 1, 0);
  SpectralField f = sine_mode(g, 0, 1);
  SpectralField adv = advect(u, f);
  SpectralField expected(g);
  // sin x1 cos x2 = sum over the four (+-1, +-1) modes with weights -+ i/4.
  expected.at_signed(1, 1) = cplx{0.0, -0.25};
  expected.at_signed(1, -1) = cplx{0.0, -0.25};
  expected.at_signed(-1, 1) = cplx{0.0, 0.25};
  expected.at_signed(-1, -1) = cplx{0.0, 0.25};
  CHECK(max_coeff_diff(adv, expected) < 1e-14);

  // Random cross-check against the convolution oracle.
  SpectralField theta = random_band_field(g, 5, 11);
  VectorField vel = velocity_from_scalar(theta);
  SpectralField target = random_band_field(g, 5, 12);
  SpectralField lib = advect(vel, target);
  SpectralField ref = oracle::advect(vel, target);
  CHECK(max_coeff_diff(lib, ref) < 1e-12 * std::max(1.0, max_coeff(ref)));
}

TEST_CASE("transport against the advected field is orthogonal") {
  // (u . grad f, f)_{L2} = 0 for the divergence-free velocity map; the grid
  // computation reproduces that to roundoff.
  Grid g(32, 2.0 * kPi);
  SpectralField f = dealias(random_band_field(g, g.dealias_limit(), 21));
  VectorField u = velocity_from_scalar(f);
  SpectralField adv = advect(u, f);
  const double inner =
      weighted_inner(adv, f, [](double, double) { return 1.0; });
  const double scale = std::pow(sobolev_norm(f, 1), 2);
  CHECK(std::abs(inner) < 1e-10 * std::max(1.0, scale));
}
