#include "sqg/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sqg {

namespace {

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const char* expected) {
  throw std::invalid_argument("config key '" + key + "': expected " + expected +
                              ", got '" + value + "'");
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    bad_value(key, value, "a real number");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    long v = std::stol(value, &pos);
    if (pos != value.size() || v < -(1L << 31) || v > (1L << 31))
      throw std::invalid_argument("");
    return static_cast<int>(v);
  } catch (const std::exception&) {
    bad_value(key, value, "an integer");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    bad_value(key, value, "a nonnegative integer");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "on") return true;
  if (value == "false" || value == "0" || value == "off") return false;
  bad_value(key, value, "a boolean (true/false)");
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

}  // namespace

std::string to_string(SimMode m) {
  return m == SimMode::full_theta ? "full_theta" : "perturbation_g";
}

std::string to_string(Scheme s) {
  return s == Scheme::etdrk4 ? "etdrk4" : "imex_cnab2";
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "grid.n",
      "grid.box_len",
      "recipe.delta",
      "recipe.mu",
      "recipe.alpha",
      "recipe.theorem_mode",
      "recipe.amplitude",
      "recipe.velocity_exponent",
      "recipe.g0.kind",
      "recipe.g0.target_h3_sq",
      "recipe.g0.k_min",
      "recipe.g0.k_max",
      "recipe.g0.seed",
      "sim.mu",
      "sim.alpha",
      "sim.scheme",
      "sim.t_end",
      "sim.dt_max",
      "sim.cfl",
      "sim.fixed_dt",
      "sim.sample_every",
      "sim.nonlinear",
      "sim.tail_abort_fraction",
      "sim.blowup_factor",
      "sim.mode",
      "sim.paired",
      "sim.record_ledger",
      "verify.c_universal",
      "verify.epsilon",
      "verify.t_horizon",
      "verify.quad_tol",
      "output_dir",
      "seed",
      "ineq.kind",
      "ineq.trials",
      "ineq.m",
      "ineq.alpha",
      "sweep.max_parallel",
      "sweep.max_points",
      "sweep.axis",
  };
  return keys;
}

void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "grid.n") {
    cfg.grid_n = parse_int(key, value);
  } else if (key == "grid.box_len") {
    cfg.grid_box_len = parse_double(key, value);
  } else if (key == "recipe.delta") {
    cfg.recipe.delta = parse_double(key, value);
  } else if (key == "recipe.mu") {
    cfg.recipe.mu = parse_double(key, value);
  } else if (key == "recipe.alpha") {
    cfg.recipe.alpha = parse_double(key, value);
  } else if (key == "recipe.theorem_mode") {
    cfg.recipe.theorem_mode = parse_bool(key, value);
  } else if (key == "recipe.amplitude") {
    cfg.recipe.amplitude_override = parse_double(key, value);
  } else if (key == "recipe.velocity_exponent") {
    cfg.recipe.velocity_exponent = parse_double(key, value);
  } else if (key == "recipe.g0.kind") {
    if (value == "zero")
      cfg.recipe.g0.kind = G0Kind::zero;
    else if (value == "random_band")
      cfg.recipe.g0.kind = G0Kind::random_band;
    else
      bad_value(key, value, "zero or random_band");
  } else if (key == "recipe.g0.target_h3_sq") {
    cfg.recipe.g0.target_h3_sq = parse_double(key, value);
  } else if (key == "recipe.g0.k_min") {
    cfg.recipe.g0.k_min = parse_double(key, value);
  } else if (key == "recipe.g0.k_max") {
    cfg.recipe.g0.k_max = parse_double(key, value);
  } else if (key == "recipe.g0.seed") {
    cfg.recipe.g0.seed = parse_u64(key, value);
  } else if (key == "sim.mu") {
    cfg.sim.mu = parse_double(key, value);
  } else if (key == "sim.alpha") {
    cfg.sim.alpha = parse_double(key, value);
  } else if (key == "sim.scheme") {
    if (value == "etdrk4")
      cfg.sim.scheme = Scheme::etdrk4;
    else if (value == "imex_cnab2")
      cfg.sim.scheme = Scheme::imex_cnab2;
    else
      bad_value(key, value, "etdrk4 or imex_cnab2");
  } else if (key == "sim.t_end") {
    cfg.sim.t_end = parse_double(key, value);
  } else if (key == "sim.dt_max") {
    cfg.sim.dt_max = parse_double(key, value);
  } else if (key == "sim.cfl") {
    cfg.sim.cfl = parse_double(key, value);
  } else if (key == "sim.fixed_dt") {
    cfg.sim.fixed_dt = parse_double(key, value);
  } else if (key == "sim.sample_every") {
    cfg.sim.sample_every = parse_int(key, value);
  } else if (key == "sim.nonlinear") {
    cfg.sim.nonlinear = parse_bool(key, value);
  } else if (key == "sim.tail_abort_fraction") {
    cfg.sim.tail_abort_fraction = parse_double(key, value);
  } else if (key == "sim.blowup_factor") {
    cfg.sim.blowup_factor = parse_double(key, value);
  } else if (key == "sim.mode") {
    if (value == "full_theta")
      cfg.sim_mode = SimMode::full_theta;
    else if (value == "perturbation_g")
      cfg.sim_mode = SimMode::perturbation_g;
    else
      bad_value(key, value, "full_theta or perturbation_g");
  } else if (key == "sim.paired") {
    cfg.sim_paired = parse_bool(key, value);
  } else if (key == "sim.record_ledger") {
    cfg.sim_record_ledger = parse_bool(key, value);
  } else if (key == "verify.c_universal") {
    cfg.verify.c_universal = parse_double(key, value);
  } else if (key == "verify.epsilon") {
    cfg.verify.epsilon = parse_double(key, value);
  } else if (key == "verify.t_horizon") {
    cfg.verify.t_horizon = parse_double(key, value);
  } else if (key == "verify.quad_tol") {
    cfg.verify.quad_tol = parse_double(key, value);
  } else if (key == "output_dir") {
    cfg.output_dir = value;
  } else if (key == "seed") {
    cfg.seed = parse_u64(key, value);
  } else if (key == "ineq.kind") {
    if (value != "kato_ponce" && value != "leibniz" && value != "gn" && value != "all")
      bad_value(key, value, "kato_ponce, leibniz, gn, or all");
    cfg.ineq_kind = value;
  } else if (key == "ineq.trials") {
    cfg.ineq_trials = parse_int(key, value);
  } else if (key == "ineq.m") {
    cfg.ineq_m = parse_int(key, value);
  } else if (key == "ineq.alpha") {
    cfg.ineq_alpha = parse_double(key, value);
  } else if (key == "sweep.max_parallel") {
    cfg.sweep_max_parallel = parse_int(key, value);
  } else if (key == "sweep.max_points") {
    cfg.sweep_max_points = parse_int(key, value);
  } else if (key == "sweep.axis") {
    // form: <parameter path>=<v1>,<v2>,...
    const std::size_t eq = value.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == value.size())
      bad_value(key, value, "<parameter path>=<comma-separated values>");
    const std::string path = trim(value.substr(0, eq));
    const std::vector<std::string> vals = split_commas(value.substr(eq + 1));
    bool known = false;
    for (const auto& k : config_keys()) known = known || k == path;
    if (!known || path == "sweep.axis")
      throw std::invalid_argument("sweep.axis: unknown parameter path '" + path + "'");
    cfg.sweep_axes.emplace_back(path, vals);
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

void apply_config_text(ExperimentConfig& cfg, const std::string& text,
                       const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                  ": expected 'key = value', got '" + line + "'");
    try {
      apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": " +
                                  e.what());
    }
  }
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  ExperimentConfig cfg;
  apply_config_text(cfg, ss.str(), path);
  return cfg;
}

void ExperimentConfig::validate() const {
  make_grid();  // grid invariants
  recipe.validate();
  sim.validate();
  verify.validate();
  if (sim_mode == SimMode::perturbation_g || sim_paired) {
    if (sim.mu != recipe.mu)
      throw std::invalid_argument(
          "sim.mu must equal recipe.mu in perturbation mode (set both)");
    if (sim.alpha != recipe.alpha)
      throw std::invalid_argument(
          "sim.alpha must equal recipe.alpha in perturbation mode (set both)");
  }
  if (sim_paired && sim_mode != SimMode::perturbation_g)
    throw std::invalid_argument("sim.paired requires sim.mode = perturbation_g");
  if (sim_paired && !(sim.fixed_dt > 0.0))
    throw std::invalid_argument("sim.paired requires sim.fixed_dt > 0");
  if (ineq_trials < 1) throw std::invalid_argument("ineq.trials must be >= 1");
  if (ineq_m < 1) throw std::invalid_argument("ineq.m must be >= 1");
  if (!(ineq_alpha >= 0.0 && ineq_alpha < 0.5))
    throw std::invalid_argument("ineq.alpha must lie in [0, 1/2)");
  if (sweep_max_parallel < 1)
    throw std::invalid_argument("sweep.max_parallel must be >= 1");
  if (sweep_max_points < 1)
    throw std::invalid_argument("sweep.max_points must be >= 1");
}

}  // namespace sqg
