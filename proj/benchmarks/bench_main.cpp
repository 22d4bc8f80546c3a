#include <benchmark/benchmark.h>

#include <algorithm>
#include <complex>
#include <numbers>
#include <vector>

#include "ringgyro/fft.hpp"
#include "ringgyro/initial_states.hpp"
#include "ringgyro/propagator.hpp"
#include "ringgyro/random.hpp"
#include "ringgyro/two_mode.hpp"
#include "ringgyro/two_mode_tw.hpp"

using namespace ringgyro;

static void BM_FftRoundTrip(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const FftPlan plan(n);
  std::vector<std::complex<double>> data(n, {1.0, 0.5});
  for (auto _ : state) {
    plan.forward(data);
    plan.inverse(data);
    for (auto& v : data) v /= static_cast<double>(n);
    benchmark::DoNotOptimize(data.data());
  }
}
BENCHMARK(BM_FftRoundTrip)->Arg(512)->Arg(2048)->Arg(16384);

static void BM_SplitStepTw(benchmark::State& state) {
  const Grid1D g = Grid1D::ring(static_cast<std::size_t>(state.range(0)));
  const SolitonParams sp{5000.0, -0.004, 80.0};
  GaussianStream rng(1);
  ComplexField f = sample_wigner_coherent(sech_soliton(g, sp, 1, 0.0), sp.n_s, rng);
  const double k_max = 0.5 * static_cast<double>(g.size());
  const double dt = std::min(ring_loop_time(80) / 2000.0, 1.8 * std::numbers::pi / (k_max * k_max));
  SplitStepPropagator p(g, EvolutionSpec::truncated_wigner(sp.g0, dt));
  for (auto _ : state) {
    p.step(f);
    benchmark::DoNotOptimize(f[0]);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SplitStepTw)->Arg(512)->Arg(2048);

static void BM_SingleLoopTrajectory(benchmark::State& state) {
  const Grid1D g = Grid1D::ring(512);
  const SolitonParams sp{5000.0, -0.004, 80.0};
  GaussianStream rng(2);
  const ComplexField f0 = sample_wigner_coherent(sech_soliton(g, sp, 1, 0.0), sp.n_s, rng);
  const double T = ring_loop_time(80);
  SplitStepPropagator p(g, EvolutionSpec::truncated_wigner(sp.g0, T / 2000.0));
  for (auto _ : state) {
    ComplexField f = f0;
    p.advance(f, T);
    benchmark::DoNotOptimize(f[0]);
  }
}
BENCHMARK(BM_SingleLoopTrajectory)->Unit(benchmark::kMillisecond);

static void BM_TwoModeTw(benchmark::State& state) {
  const TwoModeParams p{100.0, -0.03};
  const TwoModeStage seq[] = {TwoModeStage::twist(p.chi_t), TwoModeStage::rotate(theta_chi(p)),
                              TwoModeStage::twist(p.chi_t)};
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(two_mode_tw(p, seq, n, 3, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TwoModeTw)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_TwoModeClosedForm(benchmark::State& state) {
  double chi_t = -0.001;
  for (auto _ : state) {
    benchmark::DoNotOptimize(delta_omega_two_mode({1e4, chi_t}));
    chi_t -= 1e-9;
  }
}
BENCHMARK(BM_TwoModeClosedForm);
BENCHMARK_MAIN();
