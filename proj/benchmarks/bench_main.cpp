// Microbenchmarks for the hot paths: transforms, the advection product, one
// stepper step, and the per-sample diagnostics ledger.

#include <benchmark/benchmark.h>

#include <numbers>

#include "sqg/diagnostics.hpp"
#include "sqg/fft.hpp"
#include "sqg/norms.hpp"
#include "sqg/operators.hpp"
#include "sqg/random_field.hpp"
#include "sqg/sim.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

void bm_fft_roundtrip(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  sqg::Grid grid(n, 2.0 * kPi);
  sqg::SpectralField f = sqg::random_band_field(grid, n / 3, 1);
  for (auto _ : state) {
    sqg::PhysicalField p = sqg::to_physical(f);
    benchmark::DoNotOptimize(sqg::to_spectral(p, grid));
  }
}
BENCHMARK(bm_fft_roundtrip)->Arg(64)->Arg(256)->Arg(512);

void bm_advection_product(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  sqg::Grid grid(n, 2.0 * kPi);
  sqg::SpectralField th = sqg::random_band_field(grid, n / 3, 2);
  sqg::VectorField u = sqg::velocity_from_scalar(th);
  for (auto _ : state) benchmark::DoNotOptimize(sqg::advect(u, th));
}
BENCHMARK(bm_advection_product)->Arg(64)->Arg(256)->Arg(512);

void bm_stepper_step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  sqg::Grid grid(n, 2.0 * kPi);
  sqg::SpectralField th = sqg::random_band_field(grid, 8, 3);
  th *= 1.0 / sqg::lebesgue_norm(th, sqg::Lp::inf);
  sqg::SimParams p;
  p.mu = 1.0;
  p.alpha = 0.25;
  p.fixed_dt = 0.001;
  sqg::Stepper stepper(grid, p, sqg::SimMode::full_theta, nullptr, -0.5);
  double t = 0.0;
  for (auto _ : state) {
    th = stepper.step(th, t, p.fixed_dt);
    t += p.fixed_dt;
    benchmark::DoNotOptimize(th);
  }
}
BENCHMARK(bm_stepper_step)->Arg(64)->Arg(256);

void bm_energy_ledger(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  sqg::Grid grid(n, 12.0 * kPi);
  sqg::DataRecipe r;
  r.delta = 0.05;
  sqg::Background bg(r, grid);
  sqg::SpectralField g = sqg::random_band_field(grid, 5, 4);
  for (auto _ : state) benchmark::DoNotOptimize(sqg::energy_ledger(g, bg, 0.5));
}
BENCHMARK(bm_energy_ledger)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
