#pragma once

#include <string>
#include <vector>

#include "sqg/background.hpp"
#include "sqg/recipe.hpp"

namespace sqg {

// Result of the smallness check
//   (||g0||^2_{H3} + int_0^inf ||U.grad Theta||_{H3} dt)
//     * exp(C (int ||U||_inf + ||Theta||_inf dt + int ||U.grad Theta||_{H3} dt))
//   <= eps.
struct ConditionReport {
  double lhs = 0.0;
  double eps = 0.0;
  bool pass = false;
  double integral_linf = 0.0;     // int (||U||_inf + ||Theta||_inf) dt
  double integral_forcing = 0.0;  // int ||U . grad Theta||_{H3} dt
  double integral_linf_u = 0.0;
  double integral_linf_theta = 0.0;
  double g0_h3_sq = 0.0;
  double c_universal = 0.0;
  double t_horizon = 0.0;
  bool strip_resolved = true;  // dk <= delta/6 on the evaluation grid
  long quad_evals = 0;

  std::string json_text() const;
};

struct BoundRow {
  std::string name;
  double computed = 0.0;
  double required = 0.0;
  bool pass = false;
};

struct BoundsReport {
  double delta = 0.0;
  double amplitude = 0.0;
  std::vector<BoundRow> rows;

  bool all_pass() const;
  std::string json_text() const;
};

// Time integrals use adaptive quadrature on [0, t_horizon] after the
// substitution u = 1 - exp(-lambda1 t) (lambda1 = mu (4/3)^{2 alpha}, the
// slowest support decay rate), plus the analytic exponential tail
// value(t_horizon)/lambda for the sup-norm terms and /(2 lambda) for the
// forcing term. The forcing norm is evaluated by exact sparse convolution
// over the support lattice; sup norms on the collocation grid.
ConditionReport evaluate_condition(const DataRecipe& recipe, const Grid& grid,
                                   const VerificationParams& vp);

// Lower-bound rows for the constructed data family: L1 and L2 norms of the
// coefficient transform, restricted and global sup norms of a0, d2 a0, U0
// components, plus a strip-area heuristic cross-check.
BoundsReport corollary_bounds(const DataRecipe& recipe, const Grid& grid);

// ||U(t) . grad Theta(t)||_{H3} by exact convolution on the unbounded index
// lattice (exposed for oracle tests against the grid product).
double forcing_h3_sparse(const Background& bg, double t);

}  // namespace sqg
