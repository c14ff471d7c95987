#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sqg/fft.hpp"
#include "sqg/norms.hpp"
#include "sqg/operators.hpp"
#include "sqg/random_field.hpp"
#include "sqg/spectral_field.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace sqg;
using testutil::cosine_mode;
using testutil::max_coeff_diff;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("grid index maps round-trip and wavenumbers scale with the box") {
  Grid g(16, 8.0 * kPi);
  CHECK(g.dk() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(g.dx() == doctest::Approx(0.5 * kPi).epsilon(1e-15));
  for (int i = 0; i < g.n; ++i) {
    const int j = g.signed_index(i);
    CHECK(j >= -g.n / 2);
    CHECK(j < g.n / 2);
    CHECK(g.storage_index(j) == i);
  }
  CHECK(g.wavenumber(1) == doctest::Approx(0.25));
  CHECK(g.wavenumber(g.n - 1) == doctest::Approx(-0.25));
  CHECK(g.dealias_limit() == 5);

  CHECK_THROWS_AS(Grid(7, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(16, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(16, -1.0), std::invalid_argument);
}

TEST_CASE("synthesis and analysis are mutually inverse") {
  Grid g(32, 2.0 * kPi);
  SpectralField f = random_band_field(g, 10, 99);
  PhysicalField p = to_physical(f);
  SpectralField back = to_spectral(p, g);
  CHECK(max_coeff_diff(f, back) < 1e-14 * testutil::max_coeff(f));
}

TEST_CASE("cos(x1) has the textbook norms: L2^2 = 2 pi^2, H3^2 = 8 pi^2") {
  // On the 2 pi box, ||cos||_L2^2 = area / 2 = 2 pi^2. The multi-index H3
  // weight at k = (1, 0) is 4 (beta = (0,0),(1,0),(2,0),(3,0) each give 1),
  // so ||cos||_H3^2 = 4 * 2 pi^2.
  Grid g(16, 2.0 * kPi);
  SpectralField f = cosine_mode(g, 1, 0);
  const double l2 = lebesgue_norm(f, Lp::two);
  CHECK(l2 * l2 == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-14));
  const double h3 = sobolev_norm(f, 3);
  CHECK(h3 * h3 == doctest::Approx(8.0 * kPi * kPi).epsilon(1e-14));
  CHECK(lebesgue_norm(f, Lp::inf) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("native-grid sup is a lower bound; upsampling recovers the peak") {
  // cos(x1 - dx/2) peaks between sampling points; a 2x refinement hits it.
  Grid g(16, 2.0 * kPi);
  const double shift = 0.5 * g.dx();
  SpectralField f(g);
  f.at_signed(1, 0) = 0.5 * std::exp(cplx{0.0, -shift});
  f.at_signed(-1, 0) = 0.5 * std::exp(cplx{0.0, shift});
  const double native = lebesgue_norm(f, Lp::inf);
  CHECK(native == doctest::Approx(std::cos(shift)).epsilon(1e-13));
  CHECK(native < 1.0);
  CHECK(linf_upsampled(f, 2) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("conjugate symmetrization projects onto real fields") {
  Grid g(16, 2.0 * kPi);
  SpectralField f(g);
  f.at_signed(2, 3) = cplx{1.0, 0.5};  // no matching conjugate: asymmetric
  CHECK(f.conjugate_asymmetry() > 0.5);
  f.symmetrize();
  CHECK(f.conjugate_asymmetry() == doctest::Approx(0.0).epsilon(1e-15));
  PhysicalField p = to_physical(f);
  double max_imag = 0.0;
  for (const cplx& v : p) max_imag = std::max(max_imag, std::abs(v.imag()));
  CHECK(max_imag < 1e-13);
}

TEST_CASE("field arithmetic acts coefficient-wise") {
  Grid g(16, 2.0 * kPi);
  SpectralField a = random_band_field(g, 4, 1);
  SpectralField b = random_band_field(g, 4, 2);
  SpectralField s = a + b;
  SpectralField d = s - b;
  CHECK(max_coeff_diff(d, a) < 1e-15);
  SpectralField scaled = 2.0 * a;
  scaled *= 0.5;
  CHECK(max_coeff_diff(scaled, a) < 1e-15);
}

TEST_CASE("mismatched grids are rejected") {
  SpectralField a{Grid(16, 2.0 * kPi)};
  SpectralField b{Grid(32, 2.0 * kPi)};
  CHECK_THROWS_AS(a += b, std::invalid_argument);
}

TEST_CASE("Sobolev norms match the brute-force multi-index sum") {
  Grid g(32, 6.0 * kPi);
  SpectralField f = random_band_field(g, 9, 314);
  for (int m = 0; m <= 3; ++m) {
    const double ref = oracle::sobolev_sq(f, m);
    const double got = sobolev_norm(f, m);
    CHECK(got * got == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("the fractional shift multiplies each shell by |k|^(2a)") {
  // sobolev_norm(f, m, a) must agree with sobolev_norm(Lam^a f, m).
  Grid g(32, 6.0 * kPi);
  SpectralField f = random_radial_band_field(g, 0.5, 3.0, 77);
  const double a = 0.35;
  const SpectralField lf = fractional_laplacian(f, 0.5 * a);  // symbol |k|^a
  for (int m = 0; m <= 3; ++m)
    CHECK(sobolev_norm(f, m, a) ==
          doctest::Approx(sobolev_norm(lf, m)).epsilon(1e-12));
}

TEST_CASE("the weighted inner product reproduces the squared norm") {
  Grid g(32, 2.0 * kPi);
  SpectralField f = random_band_field(g, 6, 2024);
  const auto w3 = [](double k1, double k2) { return sobolev_weight(3, k1, k2); };
  const double h3 = sobolev_norm(f, 3);
  CHECK(weighted_inner(f, f, w3) == doctest::Approx(h3 * h3).epsilon(1e-12));
  // Real fields give a real pairing in either argument order.
  SpectralField h = random_band_field(g, 6, 2025);
  CHECK(weighted_inner(f, h, w3) ==
        doctest::Approx(weighted_inner(h, f, w3)).epsilon(1e-12));
}
