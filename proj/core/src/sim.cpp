#include "sqg/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "sqg/fft.hpp"
#include "sqg/norms.hpp"
#include "sqg/operators.hpp"

namespace sqg {

void SimParams::validate() const {
  if (!(mu >= 0.0) || !std::isfinite(mu))
    throw std::invalid_argument("sim.mu must be finite and >= 0");
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("sim.alpha must lie in [0, 1)");
  if (!(t_end > 0.0) || !std::isfinite(t_end))
    throw std::invalid_argument("sim.t_end must be positive and finite");
  if (!(dt_max > 0.0) || !std::isfinite(dt_max))
    throw std::invalid_argument("sim.dt_max must be positive and finite");
  if (!(cfl > 0.0 && cfl <= 1.0))
    throw std::invalid_argument("sim.cfl must lie in (0, 1]");
  if (!(fixed_dt >= 0.0) || !std::isfinite(fixed_dt))
    throw std::invalid_argument("sim.fixed_dt must be >= 0 (0 selects the CFL rule)");
  if (sample_every < 1)
    throw std::invalid_argument("sim.sample_every must be >= 1");
  if (!(tail_abort_fraction > 0.0 && tail_abort_fraction <= 1.0))
    throw std::invalid_argument("sim.tail_abort_fraction must lie in (0, 1]");
  if (!(blowup_factor > 1.0))
    throw std::invalid_argument("sim.blowup_factor must exceed 1");
}

SpectralField nonlinear_full(const SpectralField& th, double velocity_exponent) {
  SpectralField out = advect(velocity_from_scalar(th, velocity_exponent), th);
  out *= -1.0;
  out.set_zero_mean();
  return out;
}

SpectralField nonlinear_perturbation(const SpectralField& g, const Background& bg,
                                     double t) {
  if (g.grid() != bg.grid())
    throw std::invalid_argument("nonlinear_perturbation: grid mismatch");
  VectorField v = velocity_from_scalar(g, bg.velocity_exponent());
  VectorField w(g.grid());
  w.x1 = v.x1;
  w.x2 = v.x2;
  bg.add_velocity(t, w);  // w = v + U
  SpectralField out = advect(w, g);
  if (!bg.empty()) out += advect(v, bg.theta_at(t));
  out *= -1.0;
  out.set_zero_mean();
  return out;
}

SpectralField nonlinear_perturbation(const SpectralField& g, const DataRecipe& recipe,
                                     double t) {
  Background bg(recipe, g.grid());
  return nonlinear_perturbation(g, bg, t);
}

namespace {

// phi_m(z) = sum_{j>=0} z^j / (j+m)!; the ETDRK4 tables are built from
// phi_1..phi_3 on the (real, nonpositive) linear spectrum.
double phi(int m, double z) {
  if (std::abs(z) < 0.5) {
    double fact = 1.0;
    for (int j = 2; j <= m; ++j) fact *= j;
    double term = 1.0 / fact;
    double sum = term;
    for (int j = 1; j <= 40; ++j) {
      term *= z / (m + j);
      sum += term;
      if (std::abs(term) <= 1e-20 * std::abs(sum)) break;
    }
    return sum;
  }
  const double ez = std::exp(z);
  const double p1 = (ez - 1.0) / z;
  if (m == 1) return p1;
  const double p2 = (p1 - 1.0) / z;
  if (m == 2) return p2;
  return (p2 - 0.5) / z;
}

}  // namespace

Stepper::Stepper(const Grid& grid, const SimParams& params, SimMode mode,
                 const Background* bg, double velocity_exponent)
    : grid_(grid), params_(params), mode_(mode), bg_(bg), e_(velocity_exponent) {
  params_.validate();
  if (mode_ == SimMode::perturbation_g && bg_ == nullptr)
    throw std::invalid_argument("perturbation mode requires a background");
  rate_.resize(grid_.size());
  for (int i1 = 0; i1 < grid_.n; ++i1) {
    const double k1 = grid_.wavenumber(i1);
    for (int i2 = 0; i2 < grid_.n; ++i2) {
      const double k2 = grid_.wavenumber(i2);
      const double k2norm = k1 * k1 + k2 * k2;
      rate_[static_cast<std::size_t>(i1) * grid_.n + i2] =
          params_.mu * std::pow(k2norm, params_.alpha);
    }
  }
}

void Stepper::ensure_tables(double dt) {
  if (dt == table_dt_) return;
  table_dt_ = dt;
  n_prev_.reset();  // a changed step invalidates the multistep history
  const std::size_t m = rate_.size();
  if (params_.scheme == Scheme::etdrk4) {
    ee_.resize(m);
    e2_.resize(m);
    a1_.resize(m);
    b1_.resize(m);
    b2_.resize(m);
    b3_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double z = -rate_[i] * dt;
      ee_[i] = std::exp(z);
      e2_[i] = std::exp(0.5 * z);
      a1_[i] = 0.5 * dt * phi(1, 0.5 * z);
      const double p1 = phi(1, z), p2 = phi(2, z), p3 = phi(3, z);
      b1_[i] = dt * (p1 - 3.0 * p2 + 4.0 * p3);
      b2_[i] = dt * (2.0 * p2 - 4.0 * p3);
      b3_[i] = dt * (4.0 * p3 - p2);
    }
  } else {
    num_.resize(m);
    den_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double z = -rate_[i] * dt;
      num_[i] = 1.0 + 0.5 * z;
      den_[i] = 1.0 / (1.0 - 0.5 * z);
    }
  }
}

void Stepper::reset_history() { n_prev_.reset(); }

SpectralField Stepper::nonlinear_rhs(const SpectralField& u, double t) const {
  if (!params_.nonlinear) return SpectralField(grid_);
  SpectralField out(grid_);
  if (mode_ == SimMode::perturbation_g && !bg_->empty()) {
    SpectralField s = u;
    bg_->add_theta(t, s);
    out = advect(velocity_from_scalar(s, e_), s);
  } else {
    out = advect(velocity_from_scalar(u, e_), u);
  }
  out *= -1.0;
  out.set_zero_mean();
  return out;
}

double Stepper::cfl_dt(const SpectralField& u, double t) const {
  if (!params_.nonlinear) return params_.dt_max;
  double sup;
  if (mode_ == SimMode::perturbation_g && !bg_->empty()) {
    SpectralField s = u;
    bg_->add_theta(t, s);
    sup = linf_vector(velocity_from_scalar(s, e_));
  } else {
    sup = linf_vector(velocity_from_scalar(u, e_));
  }
  if (!(sup > 0.0)) return params_.dt_max;
  return std::min(params_.dt_max, params_.cfl * grid_.dx() / sup);
}

SpectralField Stepper::step(const SpectralField& u, double t, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  ensure_tables(dt);
  const std::size_t m = u.size();
  if (params_.scheme == Scheme::etdrk4) {
    const SpectralField n1 = nonlinear_rhs(u, t);
    SpectralField a(grid_);
    for (std::size_t i = 0; i < m; ++i)
      a.data()[i] = e2_[i] * u.data()[i] + a1_[i] * n1.data()[i];
    const SpectralField n2 = nonlinear_rhs(a, t + 0.5 * dt);
    SpectralField b(grid_);
    for (std::size_t i = 0; i < m; ++i)
      b.data()[i] = e2_[i] * u.data()[i] + a1_[i] * n2.data()[i];
    const SpectralField n3 = nonlinear_rhs(b, t + 0.5 * dt);
    SpectralField c(grid_);
    for (std::size_t i = 0; i < m; ++i)
      c.data()[i] = e2_[i] * a.data()[i] +
                    a1_[i] * (2.0 * n3.data()[i] - n1.data()[i]);
    const SpectralField n4 = nonlinear_rhs(c, t + dt);
    SpectralField out(grid_);
    for (std::size_t i = 0; i < m; ++i)
      out.data()[i] = ee_[i] * u.data()[i] + b1_[i] * n1.data()[i] +
                      b2_[i] * (n2.data()[i] + n3.data()[i]) +
                      b3_[i] * n4.data()[i];
    out.set_zero_mean();
    return out;
  }
  SpectralField n = nonlinear_rhs(u, t);
  const SpectralField& np = n_prev_ ? *n_prev_ : n;  // first step: AB1 bootstrap
  SpectralField out(grid_);
  for (std::size_t i = 0; i < m; ++i)
    out.data()[i] = den_[i] * (num_[i] * u.data()[i] +
                               dt * (1.5 * n.data()[i] - 0.5 * np.data()[i]));
  out.set_zero_mean();
  n_prev_ = std::move(n);
  return out;
}

namespace {

struct StateSums {
  double l2 = 0.0, h3 = 0.0, lam = 0.0, tail = 0.0;
};

// One fused pass: unweighted energy, H3 energy, the dissipation integrand
// weight, and the outer-third tail energy. NaN/Inf anywhere surfaces as a
// non-finite sum.
struct SumPlan {
  std::vector<double> w3, wlam;
  std::vector<unsigned char> tail;
  double area = 0.0;

  SumPlan(const Grid& g, double alpha) {
    w3.resize(g.size());
    wlam.resize(g.size());
    tail.resize(g.size());
    area = g.area();
    const double tail_edge = 2.0 * g.dealias_limit() / 3.0;
    for (int i1 = 0; i1 < g.n; ++i1) {
      const double k1 = g.wavenumber(i1);
      const int j1 = std::abs(g.signed_index(i1));
      for (int i2 = 0; i2 < g.n; ++i2) {
        const double k2 = g.wavenumber(i2);
        const int j2 = std::abs(g.signed_index(i2));
        const std::size_t i = static_cast<std::size_t>(i1) * g.n + i2;
        w3[i] = sobolev_weight(3, k1, k2);
        wlam[i] = w3[i] * std::pow(k1 * k1 + k2 * k2, alpha);
        tail[i] = std::max(j1, j2) > tail_edge ? 1 : 0;
      }
    }
  }

  StateSums eval(const SpectralField& f) const {
    StateSums s;
    const cplx* c = f.data();
    for (std::size_t i = 0; i < w3.size(); ++i) {
      const double e = std::norm(c[i]);
      s.l2 += e;
      s.h3 += w3[i] * e;
      s.lam += wlam[i] * e;
      if (tail[i]) s.tail += e;
    }
    s.l2 *= area;
    s.h3 *= area;
    s.lam *= area;
    s.tail *= area;
    return s;
  }
};

Trajectory run_impl(const SpectralField& f0, const SimParams& params, SimMode mode,
                    const Background* bg, double velocity_exponent,
                    const RunOptions& opts) {
  const Grid grid = f0.grid();
  const double e = velocity_exponent;
  Stepper stepper(grid, params, mode, bg, e);
  const SumPlan plan(grid, params.alpha);

  // Ledger terms want a background even in full mode; an empty one reduces
  // the decomposition to the self-advection term.
  const Background empty_bg(SpectralField(grid), params.mu, params.alpha, e);
  const Background& ledger_bg = bg ? *bg : empty_bg;

  SpectralField g = f0;
  std::optional<SpectralField> th;
  std::optional<Stepper> full_stepper;
  if (opts.paired) {
    if (!(params.fixed_dt > 0.0))
      throw std::invalid_argument("sim.fixed_dt: paired mode requires a fixed step size");
    if (opts.t0 != 0.0 || opts.step0 != 0)
      throw std::invalid_argument("paired mode does not support resuming");
    th = f0;
    bg->add_theta(0.0, *th);
    full_stepper.emplace(grid, params, SimMode::full_theta, nullptr, e);
  }

  double t = opts.t0;
  long step = opts.step0;
  double diss = opts.dissipation0;
  StateSums cur = plan.eval(g);

  // Blow-up scale: the larger of the initial state and background sups.
  double sup_scale = lebesgue_norm(g, Lp::inf);
  if (bg && !bg->empty()) sup_scale = std::max(sup_scale, bg->linf_theta(t));

  Trajectory out{SpectralField(grid)};
  out.paired = opts.paired;
  out.max_h3_g_sq = opts.sup_h3_g_sq0;

  std::vector<DiagnosticsRecord> records;
  int tail_violations = 0;
  const double t_eps = 1e-9 * std::max(1.0, std::abs(params.t_end));

  auto sample = [&]() {
    DiagnosticsRecord r;
    r.t = t;
    r.l2_g_sq = cur.l2;
    r.h3_g_sq = cur.h3;
    r.lam_alpha_h3_g_sq = cur.lam;
    r.dissipation_integral = diss;
    r.tail_fraction = cur.l2 > 0.0 ? cur.tail / cur.l2 : 0.0;
    double linf_state;
    if (bg && !bg->empty()) {
      r.linf_theta = bg->linf_theta(t);
      r.linf_u = bg->linf_velocity(t);
      linf_state = lebesgue_norm(g, Lp::inf);
    } else {
      r.linf_theta = lebesgue_norm(g, Lp::inf);
      r.linf_u = linf_vector(velocity_from_scalar(g, e));
      linf_state = r.linf_theta;
    }
    if (opts.record_ledger) {
      LedgerTerms lt = energy_ledger(g, ledger_bg, t);
      r.i1 = lt.total1();
      r.i2 = lt.total2();
      r.i3 = lt.total3();
      r.i4 = lt.total4();
      r.h3_forcing = lt.h3_forcing;
    } else if (bg && !bg->empty()) {
      r.h3_forcing = sobolev_norm(bg->forcing_at(t), 3);
    }
    if (th) {
      SpectralField d = *th;
      d -= g;
      d -= bg->theta_at(t);
      r.paired_discrepancy = sobolev_norm(d, 3);
      out.paired_max_discrepancy =
          std::max(out.paired_max_discrepancy, r.paired_discrepancy);
    }
    records.push_back(r);
    out.max_h3_g_sq = std::max(out.max_h3_g_sq, r.h3_g_sq);
    if (sup_scale > 0.0 && linf_state > params.blowup_factor * sup_scale) {
      out.blew_up = true;
      out.blowup_reason = "sup norm exceeded " +
                          std::to_string(params.blowup_factor) +
                          " times the initial scale";
    }
  };

  // The resume instant was already recorded by the run that produced the
  // checkpoint; emitting it again would duplicate a row and degenerate the
  // residual stencils.
  bool suppress_sample = opts.t0 != 0.0 || opts.step0 != 0;

  while (!out.blew_up) {
    const bool at_end = t >= params.t_end - t_eps;
    if ((step % params.sample_every == 0 || at_end) && !suppress_sample) sample();
    suppress_sample = false;
    if (at_end || out.blew_up) break;

    // Fixed-dt runs never shorten the last step: a clamped dt would rebuild
    // the propagator tables with a perturbed step size, and a resumed run
    // could no longer reproduce an uninterrupted one bit for bit.
    double dt = params.fixed_dt > 0.0 ? params.fixed_dt : stepper.cfl_dt(g, t);
    if (params.fixed_dt <= 0.0) dt = std::min(dt, params.t_end - t);

    g = stepper.step(g, t, dt);
    if (th) *th = full_stepper->step(*th, t, dt);
    const double lam_prev = cur.lam;
    cur = plan.eval(g);
    t += dt;
    ++step;

    if (!std::isfinite(cur.l2 + cur.lam) ||
        (th && !std::isfinite(th->max_abs_coeff()))) {
      out.blew_up = true;
      out.blowup_reason = "non-finite coefficients after step " + std::to_string(step);
      break;
    }
    diss += 0.5 * dt * 0.5 * params.mu * (lam_prev + cur.lam);
    const double frac = cur.l2 > 0.0 ? cur.tail / cur.l2 : 0.0;
    if (frac > params.tail_abort_fraction) {
      if (++tail_violations >= 100) {
        out.blew_up = true;
        out.blowup_reason = "spectral tail held above the abort fraction for 100 steps";
        break;
      }
    } else {
      tail_violations = 0;
    }
  }

  // Residual stencils may reach into resumed history; those rows are context
  // only and are not returned.
  std::vector<DiagnosticsRecord> all = opts.context;
  all.insert(all.end(), records.begin(), records.end());
  fill_ledger_residuals(all, params.mu);
  records.assign(all.begin() + static_cast<std::ptrdiff_t>(opts.context.size()),
                 all.end());

  out.records = std::move(records);
  out.final_field = std::move(g);
  if (th) out.final_paired_field = std::move(*th);
  out.final_t = t;
  out.steps = step;
  out.dissipation_integral = diss;
  return out;
}

}  // namespace

Trajectory run_full(const SpectralField& theta0, const SimParams& params,
                    const RunOptions& opts) {
  params.validate();
  if (opts.paired)
    throw std::invalid_argument("paired mode requires a perturbation run");
  return run_impl(theta0, params, SimMode::full_theta, nullptr,
                  opts.velocity_exponent, opts);
}

Trajectory run_perturbation(const SpectralField& g0, const DataRecipe& recipe,
                            const SimParams& params, const RunOptions& opts) {
  params.validate();
  recipe.validate();
  if (params.mu != recipe.mu || params.alpha != recipe.alpha)
    throw std::invalid_argument(
        "sim.mu and sim.alpha must match recipe.mu and recipe.alpha: one "
        "dissipation operator drives the background and the perturbation");
  Background bg(recipe, g0.grid());
  return run_impl(g0, params, SimMode::perturbation_g, &bg,
                  recipe.velocity_exponent, opts);
}

}  // namespace sqg
