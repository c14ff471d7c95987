#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sqg/grid.hpp"
#include "sqg/recipe.hpp"
#include "sqg/sim.hpp"

namespace sqg {

// Everything a command needs, addressed by flat dotted keys. The same key set
// drives the config-file parser and the CLI flags; unknown keys are rejected
// and every violation names the offending key path.
struct ExperimentConfig {
  int grid_n = 256;
  double grid_box_len = 52.0 * 3.14159265358979323846;

  DataRecipe recipe;
  SimParams sim;
  SimMode sim_mode = SimMode::perturbation_g;
  bool sim_paired = false;
  bool sim_record_ledger = true;
  VerificationParams verify;

  std::string output_dir;  // resolved default: $SQG_OUTPUT_DIR, else "out"
  std::uint64_t seed = 1;  // inequality-lab stream base

  std::string ineq_kind = "kato_ponce";
  int ineq_trials = 100;
  int ineq_m = 3;
  double ineq_alpha = 0.25;

  int sweep_max_parallel = 2;
  int sweep_max_points = 64;
  // (parameter path, values); one axis per repeated sweep.axis entry
  std::vector<std::pair<std::string, std::vector<std::string>>> sweep_axes;

  Grid make_grid() const { return Grid(grid_n, grid_box_len); }
  void validate() const;  // re-validates every component invariant
};

// All assignable keys, in documentation order. "sweep.axis" may repeat.
const std::vector<std::string>& config_keys();

// Assign one key; throws std::invalid_argument naming the key on bad values
// or unknown keys.
void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value);

// Flat `key = value` lines; '#' comments and blank lines ignored.
ExperimentConfig parse_config_file(const std::string& path);
void apply_config_text(ExperimentConfig& cfg, const std::string& text,
                       const std::string& origin);

std::string to_string(SimMode m);
std::string to_string(Scheme s);

}  // namespace sqg
