#include <doctest.h>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "sqg/quadrature.hpp"

using sqg::adaptive_simpson;

TEST_CASE("polynomials up to cubic integrate exactly") {
  auto cubic = [](double x) -> std::array<double, 1> { return {x * x * x}; };
  auto r = adaptive_simpson<1>(cubic, 0.0, 1.0, 1e-12);
  CHECK(r[0] == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("smooth transcendental integrands meet the requested tolerance") {
  auto f = [](double x) -> std::array<double, 1> { return {std::sin(x)}; };
  long evals = 0;
  auto r = adaptive_simpson<1>(f, 0.0, std::numbers::pi, 1e-10, 48, &evals);
  CHECK(std::abs(r[0] - 2.0) < 1e-9);
  CHECK(evals > 4);

  auto g = [](double x) -> std::array<double, 1> { return {std::exp(-x)}; };
  auto s = adaptive_simpson<1>(g, 0.0, 10.0, 1e-10);
  CHECK(std::abs(s[0] - (1.0 - std::exp(-10.0))) < 1e-9);
}

TEST_CASE("secondary components ride the refinement of component zero") {
  auto f = [](double x) -> std::array<double, 3> {
    return {std::exp(x), std::exp(x) * 0.5, x * std::exp(x)};
  };
  auto r = adaptive_simpson<3>(f, 0.0, 2.0, 1e-11);
  const double e2 = std::exp(2.0);
  CHECK(std::abs(r[0] - (e2 - 1.0)) < 1e-9);
  CHECK(std::abs(r[1] - 0.5 * (e2 - 1.0)) < 1e-9);
  CHECK(std::abs(r[2] - (e2 + 1.0)) < 1e-8);  // int x e^x = (x-1)e^x
}

TEST_CASE("an empty or reversed interval integrates to zero") {
  auto f = [](double) -> std::array<double, 1> { return {1.0}; };
  CHECK(adaptive_simpson<1>(f, 1.0, 1.0, 1e-8)[0] == 0.0);
  CHECK(adaptive_simpson<1>(f, 2.0, 1.0, 1e-8)[0] == 0.0);
}

TEST_CASE("non-finite integrand values abort instead of polluting the sum") {
  auto f = [](double x) -> std::array<double, 1> { return {1.0 / x}; };
  CHECK_THROWS_WITH_AS(adaptive_simpson<1>(f, 0.0, 1.0, 1e-8),
                       "quadrature integrand evaluated non-finite",
                       std::runtime_error);
  auto g = [](double) -> std::array<double, 1> {
    return {std::numeric_limits<double>::quiet_NaN()};
  };
  CHECK_THROWS_AS(adaptive_simpson<1>(g, 0.0, 1.0, 1e-8), std::runtime_error);
}

TEST_CASE("exhausted refinement depth reports failure") {
  // A step function cannot be resolved by a depth-1 recursion at tight tol.
  auto f = [](double x) -> std::array<double, 1> { return {x < 0.31 ? 0.0 : 1.0}; };
  CHECK_THROWS_AS(adaptive_simpson<1>(f, 0.0, 1.0, 1e-14, 1), std::runtime_error);
}
