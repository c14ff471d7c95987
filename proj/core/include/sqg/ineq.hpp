#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sqg/spectral_field.hpp"

namespace sqg {

// One empirical evaluation of an inequality: both sides and their ratio.
// The inequalities hold with some unspecified constant C; the lab brackets C
// from below by maximizing the ratio over random band-limited fields.
struct InequalityTrial {
  std::uint64_t seed = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

// sum_{1<=|beta|<=m} ||D^beta(hf) - (D^beta h) f||_{L2}  vs
// ||h||_{H^{m-1}} ||grad f||_{Linf} + ||h||_{Linf} ||f||_{H^m}.
// The |beta|=0 term of the sum is identically zero and omitted.
InequalityTrial kato_ponce_trial(const SpectralField& h, const SpectralField& f, int m);

// sum_{1<=|beta|<=m} ||D^beta(hf) - h D^beta f||_{L2}  vs
// (||grad h||_{Linf} + max_{|beta|=m} ||D^beta h||_{Linf}) ||f||_{H^{m-1}}.
InequalityTrial leibniz_commutator_trial(const SpectralField& h, const SpectralField& f,
                                         int m);

struct GnTrials {
  InequalityTrial grad;   // ||grad g||_Linf vs ||L^a g||^{(a+1)/3} ||L^{a+3} g||^{(2-a)/3}
  InequalityTrial dbeta;  // ||L^3 g||_L2   vs ||L^a g||^{a/3}     ||L^{a+3} g||^{1-a/3}
};

// Interpolation pair at dissipation order alpha in [0, 1/2); throws on a
// zero field or a degenerate right side.
GnTrials gn_trial(const SpectralField& g, double alpha);

// CSV row shape of the lab: (trial_kind, seed, m_or_alpha, lhs, rhs, ratio).
struct TrialRow {
  std::string trial_kind;
  std::uint64_t seed = 0;
  double m_or_alpha = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct TrialStats {
  std::string trial_kind;
  double m_or_alpha = 0.0;
  std::size_t count = 0;
  double max = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
};

struct LabOutcome {
  std::vector<TrialRow> rows;
  // worst relative drift of any ratio under doubling the input amplitudes;
  // both sides are degree-homogeneous, so this measures pure roundoff
  double max_rescale_dev = 0.0;
};

// kind: "kato_ponce", "leibniz", or "gn" (gn emits two rows per seed).
// Trial i uses seed0 + i for the primary field and seed0 + i + 1000003 for
// the partner field, so consecutive seed0 blocks stay disjoint.
LabOutcome run_trials(const Grid& grid, const std::string& kind, int trials,
                      std::uint64_t seed0, int m, double alpha);

std::vector<TrialStats> summarize_trials(const std::vector<TrialRow>& rows);

}  // namespace sqg
