#include "sqg/ineq.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "sqg/norms.hpp"
#include "sqg/operators.hpp"
#include "sqg/random_field.hpp"

namespace sqg {

namespace {

void require_admissible(double rhs) {
  if (!(rhs > 0.0)) throw std::invalid_argument("trial rejected: degenerate right side");
}

// Multi-indices with 1 <= b1+b2 <= m, fixed traversal order.
std::vector<std::pair<int, int>> multi_indices(int m) {
  std::vector<std::pair<int, int>> out;
  for (int total = 1; total <= m; ++total)
    for (int b1 = total; b1 >= 0; --b1) out.emplace_back(b1, total - b1);
  return out;
}

double grad_linf(const SpectralField& f) {
  VectorField grad(f.grid());
  grad.x1 = derivative(f, 1, 0);
  grad.x2 = derivative(f, 0, 1);
  return linf_vector(grad);
}

}  // namespace

InequalityTrial kato_ponce_trial(const SpectralField& h, const SpectralField& f, int m) {
  if (m < 1) throw std::invalid_argument("kato_ponce_trial: m must be >= 1");
  require_same_grid(h, f, "kato_ponce_trial");
  const SpectralField hf = pointwise_product_full(h, f);
  double lhs = 0.0;
  for (auto [b1, b2] : multi_indices(m)) {
    SpectralField comm = derivative(hf, b1, b2);
    comm -= pointwise_product_full(derivative(h, b1, b2), f);
    lhs += lebesgue_norm(comm, Lp::two);
  }
  const double rhs = sobolev_norm(h, m - 1) * grad_linf(f) +
                     lebesgue_norm(h, Lp::inf) * sobolev_norm(f, m);
  require_admissible(rhs);
  return InequalityTrial{0, lhs, rhs, lhs / rhs};
}

InequalityTrial leibniz_commutator_trial(const SpectralField& h, const SpectralField& f,
                                         int m) {
  if (m < 1) throw std::invalid_argument("leibniz_commutator_trial: m must be >= 1");
  require_same_grid(h, f, "leibniz_commutator_trial");
  const SpectralField hf = pointwise_product_full(h, f);
  double lhs = 0.0;
  double top_h = 0.0;
  for (auto [b1, b2] : multi_indices(m)) {
    SpectralField comm = derivative(hf, b1, b2);
    comm -= pointwise_product_full(h, derivative(f, b1, b2));
    lhs += lebesgue_norm(comm, Lp::two);
    if (b1 + b2 == m)
      top_h = std::max(top_h, lebesgue_norm(derivative(h, b1, b2), Lp::inf));
  }
  const double rhs = (grad_linf(h) + top_h) * sobolev_norm(f, m - 1);
  require_admissible(rhs);
  return InequalityTrial{0, lhs, rhs, lhs / rhs};
}

GnTrials gn_trial(const SpectralField& g, double alpha) {
  if (!(alpha >= 0.0 && alpha < 0.5))
    throw std::invalid_argument("gn_trial: alpha must lie in [0, 1/2)");
  if (g.max_abs_coeff() == 0.0) throw std::invalid_argument("gn_trial: zero field");
  const double lam_a = sobolev_norm(g, 0, alpha);
  const double lam_a3 = sobolev_norm(g, 0, alpha + 3.0);

  GnTrials out;
  out.grad.lhs = grad_linf(g);
  out.grad.rhs = std::pow(lam_a, (alpha + 1.0) / 3.0) *
                 std::pow(lam_a3, (2.0 - alpha) / 3.0);
  require_admissible(out.grad.rhs);
  out.grad.ratio = out.grad.lhs / out.grad.rhs;

  out.dbeta.lhs = sobolev_norm(g, 0, 3.0);
  out.dbeta.rhs =
      std::pow(lam_a, alpha / 3.0) * std::pow(lam_a3, 1.0 - alpha / 3.0);
  require_admissible(out.dbeta.rhs);
  out.dbeta.ratio = out.dbeta.lhs / out.dbeta.rhs;
  return out;
}

namespace {

constexpr std::uint64_t kPartnerOffset = 1000003;

double rescale_dev(double base, double doubled) {
  return std::abs(doubled - base) / std::max(std::abs(base), 1e-300);
}

}  // namespace

LabOutcome run_trials(const Grid& grid, const std::string& kind, int trials,
                      std::uint64_t seed0, int m, double alpha) {
  if (trials < 1) throw std::invalid_argument("ineq.trials must be >= 1");
  if (kind == "all") {
    LabOutcome merged;
    for (const char* k : {"kato_ponce", "leibniz", "gn"}) {
      LabOutcome part = run_trials(grid, k, trials, seed0, m, alpha);
      merged.max_rescale_dev = std::max(merged.max_rescale_dev, part.max_rescale_dev);
      merged.rows.insert(merged.rows.end(), part.rows.begin(), part.rows.end());
    }
    return merged;
  }
  LabOutcome out;
  // Exact products need the convolution to fit the representable range.
  const int band = grid.n / 4 - 1;
  if (band < 1) throw std::invalid_argument("grid.n too small for product trials");

  for (int i = 0; i < trials; ++i) {
    const std::uint64_t seed = seed0 + static_cast<std::uint64_t>(i);
    if (kind == "kato_ponce" || kind == "leibniz") {
      SpectralField h = kind == "leibniz"
                            ? random_annulus_field(grid, seed)
                            : random_band_field(grid, band, seed);
      SpectralField f = random_band_field(grid, band, seed + kPartnerOffset);
      auto trial_fn = kind == "leibniz" ? leibniz_commutator_trial : kato_ponce_trial;
      InequalityTrial t = trial_fn(h, f, m);
      InequalityTrial t2 = trial_fn(2.0 * h, 2.0 * f, m);
      out.max_rescale_dev =
          std::max(out.max_rescale_dev, rescale_dev(t.ratio, t2.ratio));
      out.rows.push_back({kind, seed, static_cast<double>(m), t.lhs, t.rhs, t.ratio});
    } else if (kind == "gn") {
      SpectralField g = random_band_field(grid, grid.dealias_limit(), seed);
      GnTrials t = gn_trial(g, alpha);
      GnTrials t2 = gn_trial(2.0 * g, alpha);
      out.max_rescale_dev =
          std::max(out.max_rescale_dev, rescale_dev(t.grad.ratio, t2.grad.ratio));
      out.max_rescale_dev =
          std::max(out.max_rescale_dev, rescale_dev(t.dbeta.ratio, t2.dbeta.ratio));
      out.rows.push_back({"gn_grad", seed, alpha, t.grad.lhs, t.grad.rhs, t.grad.ratio});
      out.rows.push_back(
          {"gn_dbeta", seed, alpha, t.dbeta.lhs, t.dbeta.rhs, t.dbeta.ratio});
    } else {
      throw std::invalid_argument(
          "ineq.kind must be one of kato_ponce, leibniz, gn: got '" + kind + "'");
    }
  }
  return out;
}

std::vector<TrialStats> summarize_trials(const std::vector<TrialRow>& rows) {
  std::map<std::string, TrialStats> acc;
  for (const auto& r : rows) {
    TrialStats& s = acc[r.trial_kind];
    s.trial_kind = r.trial_kind;
    s.m_or_alpha = r.m_or_alpha;
    s.count += 1;
    s.mean += r.ratio;
    s.max = std::max(s.max, r.ratio);
  }
  for (auto& [k, s] : acc) s.mean /= static_cast<double>(s.count);
  for (const auto& r : rows) {
    TrialStats& s = acc[r.trial_kind];
    const double d = r.ratio - s.mean;
    s.stddev += d * d;
  }
  std::vector<TrialStats> out;
  for (auto& [k, s] : acc) {
    s.stddev = s.count > 1 ? std::sqrt(s.stddev / static_cast<double>(s.count - 1)) : 0.0;
    out.push_back(s);
  }
  return out;
}

}  // namespace sqg
