#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sqg/background.hpp"
#include "sqg/condition.hpp"
#include "sqg/norms.hpp"
#include "sqg/random_field.hpp"
#include "oracles.hpp"

using namespace sqg;

namespace {
constexpr double kPi = std::numbers::pi;

DataRecipe annulus_recipe(double delta = 0.1) {
  DataRecipe r;
  r.delta = delta;
  r.mu = 1.0;
  r.alpha = 0.25;
  return r;
}
}  // namespace

TEST_CASE("collinear support: the condition reduces to a closed form") {
  // Single diagonal mode pair: forcing = 0 and both sup norms decay at the
  // exact rate lam2 = mu (sqrt 2)^{2 alpha}, so
  //   integral_linf = (||U(0)||_inf + ||Theta(0)||_inf) / lam2
  // up to the (negligible) analytic tail, and lhs = g0_h3_sq exp(C I).
  Grid g(64, 12.0 * kPi);
  DataRecipe r = annulus_recipe();
  VerificationParams vp;
  vp.quad_tol = 1e-10;
  Background bg(r, g);
  const double lam2 = r.mu * std::pow(2.0, r.alpha);
  const double expected =
      (bg.linf_velocity(0.0) + bg.linf_theta(0.0)) / lam2;

  ConditionReport rep = evaluate_condition(r, g, vp);
  CHECK(rep.integral_forcing == 0.0);
  CHECK(rep.integral_linf == doctest::Approx(expected).epsilon(1e-7));
  CHECK(rep.g0_h3_sq == 0.0);
  CHECK(rep.lhs == 0.0);
  CHECK(rep.pass);
  CHECK(rep.strip_resolved == false);  // dk = 1/6 > delta/6
  CHECK(rep.quad_evals > 0);

  // A perturbation seed shifts the prefactor but not the exponent.
  DataRecipe r2 = r;
  r2.g0.kind = G0Kind::random_band;
  r2.g0.target_h3_sq = 0.01;
  r2.g0.k_min = 0.3;
  r2.g0.k_max = 0.8;
  ConditionReport rep2 = evaluate_condition(r2, g, vp);
  CHECK(rep2.g0_h3_sq == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(rep2.lhs ==
        doctest::Approx(0.01 * std::exp(vp.c_universal * rep2.integral_linf))
            .epsilon(1e-9));
}

TEST_CASE("time integrals agree with a dense trapezoid reference") {
  Grid g(64, 24.0 * kPi);
  DataRecipe r = annulus_recipe();
  VerificationParams vp;
  vp.quad_tol = 1e-10;
  Background bg(r, g);
  ConditionReport rep = evaluate_condition(r, g, vp);

  const double lam1 = r.mu * std::pow(Grid::annulus_inner * Grid::annulus_inner,
                                      r.alpha);
  const double th = rep.t_horizon;
  // Reference: trapezoid in t over [0, th] plus the same analytic tails the
  // quadrature attaches (value/lam1 for sup norms, value/(2 lam1) for the
  // forcing). Integrands decay like e^{-lam t}, so 40k panels are plenty.
  const int panels = 40000;
  const double ref_linf = oracle::trapezoid(
      [&](double t) { return bg.linf_velocity(t) + bg.linf_theta(t); }, 0.0, th,
      panels) + (bg.linf_velocity(th) + bg.linf_theta(th)) / lam1;
  const double ref_forcing = oracle::trapezoid(
      [&](double t) { return forcing_h3_sparse(bg, t); }, 0.0, th, panels) +
      forcing_h3_sparse(bg, th) / (2.0 * lam1);

  CHECK(rep.integral_linf == doctest::Approx(ref_linf).epsilon(1e-6));
  CHECK(rep.integral_forcing == doctest::Approx(ref_forcing).epsilon(1e-6));
  CHECK(rep.integral_linf_u + rep.integral_linf_theta ==
        doctest::Approx(rep.integral_linf).epsilon(1e-12));
  CHECK(rep.lhs ==
        doctest::Approx((rep.g0_h3_sq + rep.integral_forcing) *
                        std::exp(vp.c_universal *
                                 (rep.integral_linf + rep.integral_forcing)))
            .epsilon(1e-12));
}

TEST_CASE("horizon default and override behave as documented") {
  DataRecipe r = annulus_recipe();
  VerificationParams vp;
  const double lam1 = r.mu * std::pow(Grid::annulus_inner * Grid::annulus_inner,
                                      r.alpha);
  CHECK(vp.horizon_for(r) == doctest::Approx(40.0 / lam1).epsilon(1e-14));
  vp.t_horizon = 7.0;
  CHECK(vp.horizon_for(r) == 7.0);
  Grid g(64, 12.0 * kPi);
  ConditionReport rep = evaluate_condition(r, g, vp);
  CHECK(rep.t_horizon == 7.0);
}

TEST_CASE("verification parameter validation") {
  VerificationParams vp;
  vp.c_universal = 0.5;
  CHECK_THROWS_WITH_AS(vp.validate(), doctest::Contains("c_universal"),
                       std::invalid_argument);
  vp.c_universal = 1.0;
  vp.epsilon = 0.0;
  CHECK_THROWS_AS(vp.validate(), std::invalid_argument);
  vp.epsilon = 0.1;
  vp.quad_tol = 0.0;
  CHECK_THROWS_AS(vp.validate(), std::invalid_argument);
}

TEST_CASE("amplitude lower bounds hold on a resolved strip") {
  // dk = delta/6 exactly; every row of the report must clear its floor.
  const double delta = 0.1;
  Grid g(256, 120.0 * kPi);
  DataRecipe r = annulus_recipe(delta);
  CHECK(g.strip_resolvable(delta));
  BoundsReport rep = corollary_bounds(r, g);
  CHECK(rep.amplitude == doctest::Approx(r.amplitude()).epsilon(1e-14));
  CHECK(rep.rows.size() == 8);
  for (const BoundRow& row : rep.rows) {
    INFO(row.name);
    CHECK(row.pass);
  }
  CHECK(rep.all_pass());
}

TEST_CASE("bound rows recompute from the family they describe") {
  Grid g(256, 120.0 * kPi);
  DataRecipe r = annulus_recipe();
  BoundsReport rep = corollary_bounds(r, g);
  DataFamily fam = build_family(r, g);

  // l2_a0hat = 2 pi ||a0||_{L2} (Parseval carries the transform convention).
  double l2 = 0.0;
  for (const BoundRow& row : rep.rows)
    if (row.name == "l2_a0hat") l2 = row.computed;
  CHECK(l2 == doctest::Approx(2.0 * kPi * lebesgue_norm(fam.a0, Lp::two))
                  .epsilon(1e-13));
}
