#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "sqg/config.hpp"

using namespace sqg;

TEST_CASE("defaults form a valid configuration") {
  ExperimentConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.grid_n == 256);
  CHECK(cfg.make_grid().dk() == doctest::Approx(1.0 / 26.0).epsilon(1e-14));
  CHECK(cfg.sim_mode == SimMode::perturbation_g);
}

TEST_CASE("every registered key is assignable") {
  ExperimentConfig cfg;
  for (const std::string& key : config_keys()) {
    if (key == "sweep.axis") {
      CHECK_NOTHROW(apply_key(cfg, key, "sim.t_end=1,2"));
    } else if (key == "recipe.g0.kind") {
      CHECK_NOTHROW(apply_key(cfg, key, "random_band"));
    } else if (key == "sim.scheme") {
      CHECK_NOTHROW(apply_key(cfg, key, "imex_cnab2"));
    } else if (key == "sim.mode") {
      CHECK_NOTHROW(apply_key(cfg, key, "perturbation_g"));
    } else if (key == "ineq.kind") {
      CHECK_NOTHROW(apply_key(cfg, key, "gn"));
    } else if (key == "output_dir") {
      CHECK_NOTHROW(apply_key(cfg, key, "/tmp/x"));
    } else {
      CHECK_NOTHROW(apply_key(cfg, key, "1"));
    }
  }
}

TEST_CASE("unknown keys and malformed values name the key") {
  ExperimentConfig cfg;
  CHECK_THROWS_WITH_AS(apply_key(cfg, "grid.nn", "64"),
                       doctest::Contains("grid.nn"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(apply_key(cfg, "grid.n", "abc"),
                       doctest::Contains("grid.n"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(apply_key(cfg, "sim.paired", "maybe"),
                       doctest::Contains("sim.paired"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(apply_key(cfg, "sim.scheme", "rk4"),
                       doctest::Contains("sim.scheme"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(apply_key(cfg, "sweep.axis", "not.a.key=1,2"),
                       doctest::Contains("not.a.key"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(apply_key(cfg, "sweep.axis", "sim.t_end"),
                       doctest::Contains("sweep.axis"), std::invalid_argument);
}

TEST_CASE("the hypothesis range on the exponent is enforced end to end") {
  ExperimentConfig cfg;
  apply_key(cfg, "recipe.alpha", "0.7");
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("[0, 1/2)"),
                       std::invalid_argument);
  apply_key(cfg, "recipe.theorem_mode", "false");
  apply_key(cfg, "sim.alpha", "0.7");
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("config text: comments, blanks, and origin-tagged errors") {
  ExperimentConfig cfg;
  apply_config_text(cfg,
                    "# trajectory study\n"
                    "grid.n = 64\n"
                    "\n"
                    "sim.t_end = 2.5   # longer horizon\n"
                    "recipe.delta=0.05\n",
                    "inline");
  CHECK(cfg.grid_n == 64);
  CHECK(cfg.sim.t_end == 2.5);
  CHECK(cfg.recipe.delta == 0.05);

  CHECK_THROWS_WITH_AS(apply_config_text(cfg, "grid.n 64\n", "cfg"),
                       doctest::Contains("cfg:1"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(apply_config_text(cfg, "\nbogus.key = 3\n", "cfg"),
                       doctest::Contains("cfg:2"), std::invalid_argument);
}

TEST_CASE("config files parse like inline text") {
  const std::string path = "/tmp/sqg_test_config.cfg";
  {
    std::ofstream out(path);
    out << "grid.n = 32\nseed = 17\nineq.trials = 3\n";
  }
  ExperimentConfig cfg = parse_config_file(path);
  CHECK(cfg.grid_n == 32);
  CHECK(cfg.seed == 17);
  CHECK(cfg.ineq_trials == 3);
  std::remove(path.c_str());
  CHECK_THROWS_AS(parse_config_file("/nonexistent/sqg.cfg"), std::invalid_argument);
}

TEST_CASE("cross-field rules: paired and perturbation demand coherence") {
  ExperimentConfig cfg;
  apply_key(cfg, "sim.paired", "true");
  apply_key(cfg, "sim.mode", "full_theta");
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("paired"),
                       std::invalid_argument);

  ExperimentConfig cfg2;
  apply_key(cfg2, "sim.paired", "true");
  apply_key(cfg2, "sim.fixed_dt", "0");
  CHECK_THROWS_WITH_AS(cfg2.validate(), doctest::Contains("fixed_dt"),
                       std::invalid_argument);

  ExperimentConfig cfg3;
  apply_key(cfg3, "sim.mu", "2.0");  // recipe.mu stays 1.0
  CHECK_THROWS_WITH_AS(cfg3.validate(), doctest::Contains("mu"),
                       std::invalid_argument);
  apply_key(cfg3, "recipe.mu", "2.0");
  CHECK_NOTHROW(cfg3.validate());
}

TEST_CASE("scheme and mode serialize to their config spellings") {
  CHECK(to_string(Scheme::etdrk4) == "etdrk4");
  CHECK(to_string(Scheme::imex_cnab2) == "imex_cnab2");
  CHECK(to_string(SimMode::full_theta) == "full_theta");
  CHECK(to_string(SimMode::perturbation_g) == "perturbation_g");
}
