#include <benchmark/benchmark.h>

#include "hofloq/criticality.hpp"
#include "hofloq/invariants.hpp"

using namespace hofloq;

namespace {

const ModelParams kCritical = ModelParams::from_angles(0.75 * kPi, kPi);

void BM_KickedBuildFactorized(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kicked_2d({L, L, Boundary::open, Boundary::open}, kCritical));
}
BENCHMARK(BM_KickedBuildFactorized)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_SpectrumFactorized(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const auto u = kicked_2d({L, L, Boundary::open, Boundary::open}, kCritical);
  for (auto _ : state) benchmark::DoNotOptimize(eig_unitary(u));
}
BENCHMARK(BM_SpectrumFactorized)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_SpectrumDense(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const Mat u = kicked_2d({L, L, Boundary::open, Boundary::open}, kCritical).dense();
  for (auto _ : state) benchmark::DoNotOptimize(eig_unitary(u));
}
BENCHMARK(BM_SpectrumDense)->Arg(6)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_PerturbedBuild(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        perturbed_floquet_2d(kCritical, {0.1, 0.1, 0.2, 0.2}, {L, L, Boundary::open, Boundary::open}));
}
BENCHMARK(BM_PerturbedBuild)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_DisorderedBuild(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(disordered_floquet_2d(kCritical, 0.2, 1, {L, L, Boundary::open, Boundary::open}));
}
BENCHMARK(BM_DisorderedBuild)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_KickedInvariants(benchmark::State& state) {
  const ModelParams p{1.1, 2.3, 0.25 * kPi, 0.75 * kPi, 0.0, Protocol::kicked_v1};
  for (auto _ : state) benchmark::DoNotOptimize(kicked_invariants(p));
}
BENCHMARK(BM_KickedInvariants)->Unit(benchmark::kMillisecond);

void BM_SecondProtocolInvariants(benchmark::State& state) {
  const ModelParams p{kPi / 2, 4.0, 0.25 * kPi, 0.75 * kPi, kPi / 2, Protocol::kicked_v2};
  for (auto _ : state) benchmark::DoNotOptimize(kicked_invariants(p));
}
BENCHMARK(BM_SecondProtocolInvariants)->Unit(benchmark::kMillisecond);

void BM_WindingIntegral(benchmark::State& state) {
  const ModelParams p{1.1, 2.3, 0.25 * kPi, 0.75 * kPi, 0.0, Protocol::kicked_v1};
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sector_winding(Chain::creutz, p, Frame::sym1, grid));
}
BENCHMARK(BM_WindingIntegral)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);

void BM_PhaseScan(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ScanSpec s;
  s.first = {0.0, kTwoPi, n};
  s.second = {0.0, kTwoPi, n};
  s.with_gaps = false;
  for (auto _ : state) benchmark::DoNotOptimize(scan_phase_diagram(s));
}
BENCHMARK(BM_PhaseScan)->Arg(11)->Arg(21)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
