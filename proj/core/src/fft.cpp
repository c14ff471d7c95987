#include "sqg/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace sqg {

namespace {

// Plans are cached per n and created under a lock (the FFTW planner is not
// thread-safe). FFTW_ESTIMATE keeps planning deterministic run to run.
struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;
  std::size_t count = 0;
};

std::mutex plan_mutex;
std::map<int, PlanPair>& plan_cache() {
  static std::map<int, PlanPair> cache;
  return cache;
}

PlanPair& plans_for(int n) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  PlanPair p;
  p.count = static_cast<std::size_t>(n) * n;
  p.in = fftw_alloc_complex(p.count);
  p.out = fftw_alloc_complex(p.count);
  if (!p.in || !p.out) throw std::runtime_error("fftw_alloc_complex failed");
  p.fwd = fftw_plan_dft_2d(n, n, p.in, p.out, FFTW_FORWARD, FFTW_ESTIMATE);
  p.bwd = fftw_plan_dft_2d(n, n, p.in, p.out, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!p.fwd || !p.bwd) throw std::runtime_error("fftw plan creation failed");
  return cache.emplace(n, p).first->second;
}

// Transforms run under the same lock: the cached in/out buffers are shared.
// Jobs that need concurrency run in separate processes (sweep rows fork work
// into threads but FFT time dominates nothing there at desk sizes).
std::mutex exec_mutex;

}  // namespace

PhysicalField to_physical(const SpectralField& f) {
  const int n = f.grid().n;
  auto& p = plans_for(n);
  std::lock_guard<std::mutex> lock(exec_mutex);
  auto* src = reinterpret_cast<const double*>(f.data());
  for (std::size_t i = 0; i < p.count; ++i) {
    p.in[i][0] = src[2 * i];
    p.in[i][1] = src[2 * i + 1];
  }
  fftw_execute(p.bwd);
  PhysicalField out(p.count);
  for (std::size_t i = 0; i < p.count; ++i) out[i] = cplx{p.out[i][0], p.out[i][1]};
  return out;
}

SpectralField to_spectral(const PhysicalField& phys, const Grid& g) {
  const int n = g.n;
  if (phys.size() != g.size())
    throw std::invalid_argument("to_spectral: sample count does not match grid");
  auto& p = plans_for(n);
  std::lock_guard<std::mutex> lock(exec_mutex);
  for (std::size_t i = 0; i < p.count; ++i) {
    p.in[i][0] = phys[i].real();
    p.in[i][1] = phys[i].imag();
  }
  fftw_execute(p.fwd);
  SpectralField out(g);
  const double scale = 1.0 / (static_cast<double>(n) * n);
  auto* dst = out.data();
  for (std::size_t i = 0; i < p.count; ++i)
    dst[i] = cplx{p.out[i][0] * scale, p.out[i][1] * scale};
  return out;
}

double max_abs(const PhysicalField& p) {
  double m = 0.0;
  for (const auto& v : p) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_real(const PhysicalField& p) {
  double m = 0.0;
  for (const auto& v : p) m = std::max(m, std::abs(v.real()));
  return m;
}

}  // namespace sqg
