#include <benchmark/benchmark.h>

#include "gaugekit/dicke_finite.hpp"
#include "gaugekit/dicke_thermo.hpp"
#include "gaugekit/dipole1d.hpp"
#include "gaugekit/hopfield.hpp"
#include "gaugekit/quadratic.hpp"

using namespace gaugekit;

static void BM_DiagonalizeQuadratic(benchmark::State& state) {
  const QuadraticBosonModel m{1.0, 0.8, 0.7, 0.8 * 0.49, Mode::a, CouplingForm::xa_pb};
  for (auto _ : state) benchmark::DoNotOptimize(diagonalize_quadratic(m));
}
BENCHMARK(BM_DiagonalizeQuadratic);

static void BM_ThermoSweep(benchmark::State& state) {
  const auto grid = lambda_range(0.0, 2.0, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_branches(grid, 0.8, 2.0));
}
BENCHMARK(BM_ThermoSweep)->Unit(benchmark::kMillisecond);

static void BM_DickeBuildAndEigenvalues(benchmark::State& state) {
  DickeFiniteParams p;
  p.N = 2;
  p.eta = 0.5;
  p.D = DickeFiniteParams::default_D(p.N, p.omega_x, p.eta);
  p.n_max = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigenvalues_sym(build_gi_cg(p), 6));
  }
  state.SetLabel("dim " + std::to_string(p.dimension()));
}
BENCHMARK(BM_DickeBuildAndEigenvalues)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_DickeDipoleBuild(benchmark::State& state) {
  DickeFiniteParams p;
  p.N = 2;
  p.eta = 0.5;
  p.n_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_dg(p));
}
BENCHMARK(BM_DickeDipoleBuild)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_FiniteDifferenceSolve(benchmark::State& state) {
  const auto spec = PotentialSpec::double_well(3.95, 2.08, 5.0, static_cast<std::size_t>(state.range(0)));
  SolveOptions options;
  options.check_grid_convergence = false;
  for (auto _ : state) benchmark::DoNotOptimize(solve_bound_states(spec, 10, options));
}
BENCHMARK(BM_FiniteDifferenceSolve)->Arg(2001)->Arg(8001)->Unit(benchmark::kMillisecond);

static void BM_HopfieldDispersion(benchmark::State& state) {
  const auto p = HopfieldParams::make(1.0, 0.5, log_dispersion(1.0, 0.05, 5.0, 100));
  for (auto _ : state) benchmark::DoNotOptimize(polariton_dispersion(p));
}
BENCHMARK(BM_HopfieldDispersion);
BENCHMARK_MAIN();
