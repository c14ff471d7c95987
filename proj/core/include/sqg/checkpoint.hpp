#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sqg/spectral_field.hpp"

namespace sqg {

// Binary snapshot of one spectral field. Layout, all little-endian:
//   bytes 0..3   magic "SQGF"
//   bytes 4..7   format version (u32, currently 1)
//   bytes 8..11  grid size n (u32)
//   bytes 12..19 box length (f64)
//   then n*n coefficient pairs (re, im) as f64, row-major in storage order
//   (k1 slow, k2 fast, FFT index convention).
inline constexpr std::uint32_t kCheckpointVersion = 1;

void write_checkpoint(const std::string& path, const SpectralField& f);
SpectralField read_checkpoint(const std::string& path);

// Scalar resume context persisted next to a field snapshot. Everything a
// restarted run needs to continue mid-trajectory without recomputing history:
// clock, step index, running time integrals, and the last row of diagnostics
// (used to rebuild finite-difference stencils across the seam).
struct ResumeContext {
  double t = 0.0;
  std::uint64_t step = 0;
  double dissipation_integral = 0.0;     // mu * int ||Lam^a g||_{H3}^2 dt
  double sup_h3_g_sq = 0.0;              // running sup of ||g||_{H3}^2
  std::string scheme;                    // stepper that produced the snapshot
  std::uint64_t seed = 0;
  // Serialized trailing diagnostics rows (raw CSV lines, newest last).
  std::vector<std::string> tail_rows;
};

void write_resume_context(const std::string& path, const ResumeContext& ctx);
ResumeContext read_resume_context(const std::string& path);

}  // namespace sqg
