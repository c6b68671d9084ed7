#include <benchmark/benchmark.h>

#include "darkchain/diagnostics.hpp"
#include "darkchain/disorder.hpp"
#include "darkchain/dynamics.hpp"
#include "darkchain/protocols.hpp"

using namespace darkchain;

static void BM_CouplingMatrices(benchmark::State& state) {
  const auto g = build_chain(static_cast<int>(state.range(0)), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(coupling_matrices(g));
}
BENCHMARK(BM_CouplingMatrices)->Arg(6)->Arg(24)->Arg(100);

// Right-hand side of the master equation on the protocol space of a block-n target.
static void BM_LindbladRhs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto c = coupling_matrices(build_chain(n, 0.02));
  const DriveProtocol p{alternating_amplitudes(n, 2.44), 1.0, 0.0, 1.0, {2, 0}};
  const auto space = protocol_space(n, p.target);
  const LindbladGenerator gen(protocol_hamiltonian(p, c, space), c);
  const Eigen::MatrixXcd rho = DensityMatrix::from_pure(dicke_state(space, 1)).rho;
  Eigen::MatrixXcd drho;
  for (auto _ : state) {
    gen(rho, drho);
    benchmark::DoNotOptimize(drho.data());
  }
  state.counters["dim"] = static_cast<double>(space->dim());
}
BENCHMARK(BM_LindbladRhs)->Arg(4)->Arg(6)->Arg(8);

static void BM_BlockEigensystem(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto c = coupling_matrices(build_chain(n, 0.1));
  const auto h = assemble_static(Space::block(n, n / 2), c, 0.0, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(block_eigensystem(h, n / 2));
}
BENCHMARK(BM_BlockEigensystem)->Arg(6)->Arg(8)->Arg(10);

static void BM_SpectralPopulations(benchmark::State& state) {
  const auto c = coupling_matrices(build_chain(4, 0.025));
  const DriveProtocol p{uniform_amplitudes(4, 40.0), 283.0, 0.98, 8.5, {1, 0}};
  const auto times = uniform_times(18.0, 2001);
  for (auto _ : state) benchmark::DoNotOptimize(coherent_populations(p, c, times));
}
BENCHMARK(BM_SpectralPopulations);

static void BM_DepthBoundary(benchmark::State& state) {
  const auto c = coupling_matrices(build_chain(4, 0.025));
  const auto target = resolve_target(c, {1, 0});
  const auto grid = default_ground_grid(21);
  for (auto _ : state) benchmark::DoNotOptimize(depth_boundary_general(target, static_cast<int>(state.range(0)), grid));
}
BENCHMARK(BM_DepthBoundary)->Arg(1)->Arg(2)->Arg(3);

static void BM_MinRateEnsemble(benchmark::State& state) {
  const std::vector<int> sizes{static_cast<int>(state.range(0))};
  const std::vector<double> strengths{0.4};
  for (auto _ : state) benchmark::DoNotOptimize(min_rate_statistics(sizes, 0.4, strengths, 100, 1));
}
BENCHMARK(BM_MinRateEnsemble)->Arg(6)->Arg(10);
BENCHMARK_MAIN();
