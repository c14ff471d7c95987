#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sqg/checkpoint.hpp"
#include "sqg/condition.hpp"
#include "sqg/config.hpp"
#include "sqg/csv.hpp"
#include "sqg/sim.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Exit codes: 0 pass, 1 condition/bound fail, 2 blow-up, 3 config error.
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitBlowup = 2;
constexpr int kExitConfig = 3;

struct KeyOverrides {
  std::vector<std::pair<std::string, std::string>> pairs;  // in key-registry order
};

// Registers one --<dotted.key> string option per config key on the
// subcommand; values land in `store` and apply after the config file.
void add_key_flags(CLI::App* cmd, std::map<std::string, std::vector<std::string>>& store) {
  for (const auto& key : sqg::config_keys()) {
    cmd->add_option("--" + key, store[key],
                    key == "sweep.axis" ? "repeatable: path=v1,v2,..." : "");
  }
}

sqg::ExperimentConfig load_config(const std::string& config_path,
                                  const std::map<std::string, std::vector<std::string>>& flags) {
  sqg::ExperimentConfig cfg;
  if (!config_path.empty()) cfg = sqg::parse_config_file(config_path);
  for (const auto& key : sqg::config_keys()) {
    auto it = flags.find(key);
    if (it == flags.end()) continue;
    for (const auto& v : it->second) sqg::apply_key(cfg, key, v);
  }
  if (cfg.output_dir.empty()) {
    const char* env = std::getenv("SQG_OUTPUT_DIR");
    cfg.output_dir = env && *env ? env : "out";
  }
  return cfg;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

int cmd_verify_data(const sqg::ExperimentConfig& cfg) {
  cfg.validate();
  const sqg::Grid grid = cfg.make_grid();
  const sqg::ConditionReport report =
      sqg::evaluate_condition(cfg.recipe, grid, cfg.verify);
  const sqg::BoundsReport bounds = sqg::corollary_bounds(cfg.recipe, grid);
  fs::create_directories(cfg.output_dir);
  write_text(fs::path(cfg.output_dir) / "condition.json", report.json_text() + "\n");
  write_text(fs::path(cfg.output_dir) / "bounds.json", bounds.json_text() + "\n");
  std::cout << "condition lhs = " << report.lhs << " (eps = " << report.eps
            << "), pass = " << (report.pass ? "true" : "false") << "\n"
            << "bounds all_pass = " << (bounds.all_pass() ? "true" : "false") << "\n";
  return report.pass && bounds.all_pass() ? kExitPass : kExitFail;
}

// One simulation job: build data, integrate, write trajectory + checkpoints.
// Factored out so sweep points reuse it.
int simulate_into(const sqg::ExperimentConfig& cfg, const fs::path& dir, bool resume,
                  sqg::Trajectory* out_traj = nullptr) {
  cfg.validate();
  const sqg::Grid grid = cfg.make_grid();
  fs::create_directories(dir);

  sqg::RunOptions opts;
  opts.paired = cfg.sim_paired;
  opts.record_ledger = cfg.sim_record_ledger;
  opts.velocity_exponent = cfg.recipe.velocity_exponent;

  sqg::SpectralField initial(grid);
  if (resume) {
    if (cfg.sim_paired)
      throw std::invalid_argument("sim.paired runs do not support --resume");
    const fs::path chk = dir / "final.chk";
    const fs::path ctx_path = dir / "resume.json";
    if (!fs::exists(chk) || !fs::exists(ctx_path))
      throw std::invalid_argument("--resume requires final.chk and resume.json in " +
                                  dir.string());
    initial = sqg::read_checkpoint(chk.string());
    if (initial.grid() != grid)
      throw std::invalid_argument("checkpoint grid differs from configured grid");
    const sqg::ResumeContext ctx = sqg::read_resume_context(ctx_path.string());
    if (ctx.scheme != sqg::to_string(cfg.sim.scheme))
      throw std::invalid_argument("resume scheme mismatch: checkpoint has " + ctx.scheme);
    if (ctx.seed != cfg.recipe.g0.seed)
      throw std::invalid_argument("resume seed mismatch");
    opts.t0 = ctx.t;
    opts.step0 = ctx.step;
    opts.dissipation0 = ctx.dissipation_integral;
    opts.sup_h3_g_sq0 = ctx.sup_h3_g_sq;
    for (const auto& row : ctx.tail_rows)
      opts.context.push_back(sqg::parse_trajectory_row(row));
  } else if (cfg.sim_mode == sqg::SimMode::full_theta) {
    const sqg::DataFamily fam = sqg::build_family(cfg.recipe, grid);
    initial = fam.theta0;
    initial += fam.g0;
  } else {
    initial = sqg::build_family(cfg.recipe, grid).g0;
  }

  sqg::Trajectory traj =
      cfg.sim_mode == sqg::SimMode::full_theta
          ? sqg::run_full(initial, cfg.sim, opts)
          : sqg::run_perturbation(initial, cfg.recipe, cfg.sim, opts);

  // A resumed run extends the existing trajectory in place.
  if (resume)
    sqg::append_trajectory_csv((dir / "trajectory.csv").string(), traj.records);
  else
    sqg::write_trajectory_csv((dir / "trajectory.csv").string(), traj.records);
  sqg::write_checkpoint((dir / "final.chk").string(), traj.final_field);
  if (traj.final_paired_field)
    sqg::write_checkpoint((dir / "final_theta.chk").string(), *traj.final_paired_field);

  sqg::ResumeContext ctx;
  ctx.t = traj.final_t;
  ctx.step = traj.steps;
  ctx.dissipation_integral = traj.dissipation_integral;
  ctx.sup_h3_g_sq = traj.max_h3_g_sq;
  ctx.scheme = sqg::to_string(cfg.sim.scheme);
  ctx.seed = cfg.recipe.g0.seed;
  // Keep the last two published rows (falling back into resumed history when
  // this segment is shorter) so the next segment can seed its stencils.
  std::vector<std::string> rows;
  for (const auto& r : opts.context) rows.push_back(sqg::format_trajectory_row(r));
  for (const auto& r : traj.records) rows.push_back(sqg::format_trajectory_row(r));
  const std::size_t nrows = rows.size();
  for (std::size_t i = nrows > 2 ? nrows - 2 : 0; i < nrows; ++i)
    ctx.tail_rows.push_back(rows[i]);
  sqg::write_resume_context((dir / "resume.json").string(), ctx);

  if (traj.blew_up) {
    json j;
    j["reason"] = traj.blowup_reason;
    j["t"] = traj.final_t;
    j["step"] = traj.steps;
    j["last_sample_t"] = traj.records.empty() ? 0.0 : traj.records.back().t;
    write_text(dir / "blowup.json", j.dump(2) + "\n");
  }
  const int rc = traj.blew_up ? kExitBlowup : kExitPass;
  if (out_traj) *out_traj = std::move(traj);
  return rc;
}

int cmd_simulate(const sqg::ExperimentConfig& cfg, bool resume) {
  sqg::Trajectory traj{sqg::SpectralField{}};
  const int rc = simulate_into(cfg, cfg.output_dir, resume, &traj);
  std::cout << "steps = " << traj.steps << ", final t = " << traj.final_t
            << ", max ||g||_H3^2 = " << traj.max_h3_g_sq;
  if (traj.paired)
    std::cout << ", max paired discrepancy = " << traj.paired_max_discrepancy;
  std::cout << (traj.blew_up ? ", BLOW-UP: " + traj.blowup_reason : "") << "\n";
  return rc;
}

int cmd_sweep(const sqg::ExperimentConfig& base) {
  base.validate();
  if (base.sweep_axes.empty())
    throw std::invalid_argument("sweep.axis: at least one axis is required");
  std::size_t points = 1;
  for (const auto& [path, vals] : base.sweep_axes) {
    if (vals.empty()) throw std::invalid_argument("sweep.axis '" + path + "' is empty");
    points *= vals.size();
  }
  if (points > static_cast<std::size_t>(base.sweep_max_points))
    throw std::invalid_argument("sweep grid has " + std::to_string(points) +
                                " points, above sweep.max_points");

  struct Row {
    std::string label;
    double lhs = 0.0;
    bool cond_pass = false;
    double max_h3_g_sq = 0.0;
    bool blew_up = false;
    std::string status = "ok";
  };
  std::vector<Row> rows(points);

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= points) return;
      sqg::ExperimentConfig cfg = base;
      std::string label;
      std::size_t rem = idx;
      for (const auto& [path, vals] : base.sweep_axes) {
        const std::string& v = vals[rem % vals.size()];
        rem /= vals.size();
        sqg::apply_key(cfg, path, v);
        label += (label.empty() ? "" : " ") + path + "=" + v;
      }
      Row& row = rows[idx];
      row.label = label;
      char dirname[32];
      std::snprintf(dirname, sizeof dirname, "job_%03zu", idx);
      const fs::path dir = fs::path(base.output_dir) / dirname;
      try {
        cfg.output_dir = dir.string();
        cfg.validate();
        const sqg::ConditionReport rep =
            sqg::evaluate_condition(cfg.recipe, cfg.make_grid(), cfg.verify);
        row.lhs = rep.lhs;
        row.cond_pass = rep.pass;
        fs::create_directories(dir);
        write_text(dir / "condition.json", rep.json_text() + "\n");
        sqg::Trajectory traj{sqg::SpectralField{}};
        simulate_into(cfg, dir, false, &traj);
        row.max_h3_g_sq = traj.max_h3_g_sq;
        row.blew_up = traj.blew_up;
      } catch (const std::exception& e) {
        std::string msg = e.what();
        for (char& ch : msg)
          if (ch == ',' || ch == '\n') ch = ';';
        row.status = msg;
      }
    }
  };
  const std::size_t nthreads =
      std::min(static_cast<std::size_t>(base.sweep_max_parallel), points);
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  fs::create_directories(base.output_dir);
  std::ofstream out(fs::path(base.output_dir) / "sweep.csv", std::ios::binary);
  out << "job,point,condition_lhs,condition_pass,max_h3_g_sq,blew_up,status\n";
  char buf[40];
  for (std::size_t i = 0; i < points; ++i) {
    const Row& r = rows[i];
    out << "job_" << (i < 10 ? "00" : i < 100 ? "0" : "") << i << "," << r.label << ",";
    std::snprintf(buf, sizeof buf, "%.17g", r.lhs);
    out << buf << "," << (r.cond_pass ? "true" : "false") << ",";
    std::snprintf(buf, sizeof buf, "%.17g", r.max_h3_g_sq);
    out << buf << "," << (r.blew_up ? "true" : "false") << "," << r.status << "\n";
  }
  out.close();
  bool any_blowup = false, all_ok = true;
  for (const Row& r : rows) {
    any_blowup = any_blowup || r.blew_up;
    all_ok = all_ok && r.cond_pass && r.status == "ok";
  }
  std::cout << "sweep: " << points << " points -> "
            << (fs::path(base.output_dir) / "sweep.csv").string() << "\n";
  if (any_blowup) return kExitBlowup;
  return all_ok ? kExitPass : kExitFail;
}

int cmd_ineq_lab(const sqg::ExperimentConfig& cfg) {
  cfg.validate();
  const sqg::Grid grid = cfg.make_grid();
  const sqg::LabOutcome lab = sqg::run_trials(grid, cfg.ineq_kind, cfg.ineq_trials,
                                              cfg.seed, cfg.ineq_m, cfg.ineq_alpha);
  fs::create_directories(cfg.output_dir);
  sqg::write_trial_csv((fs::path(cfg.output_dir) / "trials.csv").string(), lab.rows);
  json j;
  j["max_rescale_dev"] = lab.max_rescale_dev;
  for (const auto& s : sqg::summarize_trials(lab.rows)) {
    json& k = j["kinds"][s.trial_kind];
    k["m_or_alpha"] = s.m_or_alpha;
    k["count"] = s.count;
    k["max"] = s.max;
    k["mean"] = s.mean;
    k["stddev"] = s.stddev;
  }
  write_text(fs::path(cfg.output_dir) / "ineq_summary.json", j.dump(2) + "\n");
  std::cout << j.dump(2) << "\n";
  return kExitPass;
}

int cmd_ledger(const sqg::ExperimentConfig& cfg, const std::string& input, int stride) {
  const auto recs = sqg::read_trajectory_csv(input);
  const sqg::LedgerSummary s = sqg::ledger_consistency(recs, cfg.sim.mu, stride);
  json j;
  j["rows"] = s.rows;
  j["max_rel_residual"] = s.max_rel;
  j["mean_rel_residual"] = s.mean_rel;
  j["mu"] = cfg.sim.mu;
  j["stride"] = stride;
  std::cout << j.dump(2) << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-spectral SQG solver and verification harness"};
  app.require_subcommand(1);

  std::map<std::string, std::string> config_paths;
  std::map<std::string, std::map<std::string, std::vector<std::string>>> flags;
  const std::vector<std::string> names = {"verify-data", "simulate", "sweep",
                                          "ineq-lab", "ledger"};
  std::map<std::string, CLI::App*> subs;
  for (const auto& name : names) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("-c,--config", config_paths[name], "flat key=value config file");
    add_key_flags(sub, flags[name]);
    subs[name] = sub;
  }
  bool resume = false;
  subs["simulate"]->add_flag("--resume", resume,
                             "continue from final.chk/resume.json in output_dir");
  std::string ledger_input;
  int ledger_stride = 1;
  subs["ledger"]->add_option("--input", ledger_input, "trajectory CSV to audit")
      ->required();
  subs["ledger"]->add_option("--stride", ledger_stride, "use every stride-th sample");

  CLI11_PARSE(app, argc, argv);

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    const sqg::ExperimentConfig cfg = load_config(config_paths[name], flags[name]);
    if (name == "verify-data") return cmd_verify_data(cfg);
    if (name == "simulate") return cmd_simulate(cfg, resume);
    if (name == "sweep") return cmd_sweep(cfg);
    if (name == "ineq-lab") return cmd_ineq_lab(cfg);
    return cmd_ledger(cfg, ledger_input, ledger_stride);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
