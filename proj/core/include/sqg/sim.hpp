#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqg/background.hpp"
#include "sqg/diagnostics.hpp"
#include "sqg/recipe.hpp"

namespace sqg {

enum class Scheme { etdrk4, imex_cnab2 };
enum class SimMode { full_theta, perturbation_g };

struct SimParams {
  double mu = 1.0;    // >= 0; 0 gives the inviscid transport equation
  double alpha = 0.25;
  Scheme scheme = Scheme::etdrk4;
  double t_end = 1.0;
  double dt_max = 0.05;
  double cfl = 0.4;        // dt = min(dt_max, cfl * dx / ||u||_inf)
  double fixed_dt = 0.0;   // > 0 overrides the CFL rule (required for paired runs)
  int sample_every = 1;    // diagnostics cadence in steps
  bool nonlinear = true;   // false integrates the linear part only
  double tail_abort_fraction = 1e-2;  // abort after 100 consecutive violations
  double blowup_factor = 1e8;         // vs the initial sup scale, at sample times

  void validate() const;  // throws std::invalid_argument with a dotted key path
};

// N(theta) = -u . grad theta with u = velocity_from_scalar(theta); dealiased,
// zero mode exactly 0.
SpectralField nonlinear_full(const SpectralField& th, double velocity_exponent = -0.5);

// -(v . grad g + U . grad g + v . grad Theta) at time t, v the velocity of g,
// U and Theta reconstructed from the background. Forcing -U . grad Theta is
// NOT included; the stepper supplies it stage-exactly.
SpectralField nonlinear_perturbation(const SpectralField& g, const Background& bg,
                                     double t);
SpectralField nonlinear_perturbation(const SpectralField& g, const DataRecipe& recipe,
                                     double t);

// Single-state time integrator. The linear symbol -mu |k|^{2 alpha} is treated
// exactly (etdrk4) or by the trapezoid rule (imex_cnab2); the remaining terms
// come from nonlinear_rhs. In perturbation mode the stage value is advanced
// through s = g + Theta(t), which reproduces the advective terms plus the
// forcing in one advection product.
class Stepper {
 public:
  // bg may be null (no background); it is borrowed, not owned.
  Stepper(const Grid& grid, const SimParams& params, SimMode mode,
          const Background* bg, double velocity_exponent);

  SpectralField step(const SpectralField& u, double t, double dt);
  SpectralField nonlinear_rhs(const SpectralField& u, double t) const;

  // CFL candidate min(dt_max, cfl * dx / sup |advecting velocity|).
  double cfl_dt(const SpectralField& u, double t) const;

  void reset_history();  // drops the multistep history (imex_cnab2 bootstrap)

 private:
  void ensure_tables(double dt);

  Grid grid_;
  SimParams params_;
  SimMode mode_;
  const Background* bg_;
  double e_;                  // velocity exponent
  std::vector<double> rate_;  // mu |k|^{2 alpha} per stored mode
  double table_dt_ = -1.0;
  std::vector<double> ee_, e2_, a1_, b1_, b2_, b3_;  // etdrk4 tables
  std::vector<double> num_, den_;                    // cnab2 tables
  std::optional<SpectralField> n_prev_;              // cnab2 history
};

struct RunOptions {
  bool paired = false;        // perturbation runs only; requires fixed_dt
  bool record_ledger = true;  // evaluate i1..i4 at sample times
  double velocity_exponent = -0.5;  // full mode; perturbation mode uses the recipe's

  // Resume seam: continue from a checkpointed state. context rows (samples
  // taken before t0) extend the residual stencils and are dropped from the
  // returned records.
  double t0 = 0.0;
  long step0 = 0;
  double dissipation0 = 0.0;
  double sup_h3_g_sq0 = 0.0;
  std::vector<DiagnosticsRecord> context;
};

struct Trajectory {
  explicit Trajectory(SpectralField f) : final_field(std::move(f)) {}

  std::vector<DiagnosticsRecord> records;
  SpectralField final_field;
  std::optional<SpectralField> final_paired_field;  // full-route state (paired)
  double final_t = 0.0;
  long steps = 0;
  bool blew_up = false;
  std::string blowup_reason;
  double max_h3_g_sq = 0.0;  // max over samples (seeded by sup_h3_g_sq0)
  double paired_max_discrepancy = 0.0;
  bool paired = false;
  double dissipation_integral = 0.0;
};

Trajectory run_full(const SpectralField& theta0, const SimParams& params,
                    const RunOptions& opts = {});

// g evolves against the recipe's analytic background; params.mu/alpha must
// equal the recipe's (one dissipation operator drives both routes).
Trajectory run_perturbation(const SpectralField& g0, const DataRecipe& recipe,
                            const SimParams& params, const RunOptions& opts = {});

}  // namespace sqg
