#include <random>

#include <benchmark/benchmark.h>

#include "romlab/dense.hpp"
#include "romlab/study.hpp"

namespace {

/// n = 16 ensemble: POD rank 31.
romlab::Laboratory& lab() {
  static romlab::Laboratory instance([] {
    romlab::Laboratory::Options o;
    o.mesh_n = 16;
    return o;
  }());
  return instance;
}

void BM_AssembleMass(benchmark::State& state) {
  const romlab::VelocitySpace space(romlab::build_mesh(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(romlab::assemble_mass(space));
}
BENCHMARK(BM_AssembleMass)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_AssembleStiffness(benchmark::State& state) {
  const romlab::VelocitySpace space(romlab::build_mesh(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(romlab::assemble_stiffness(space));
}
BENCHMARK(BM_AssembleStiffness)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SymmetricEig(benchmark::State& state) {
  const auto n = state.range(0);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> dist;
  romlab::Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = dist(rng);
  const romlab::Matrix sym = a * a.transpose();
  for (auto _ : state) benchmark::DoNotOptimize(romlab::symmetric_eig(sym));
}
BENCHMARK(BM_SymmetricEig)->Arg(32)->Arg(101)->Unit(benchmark::kMillisecond);

void BM_TensorBuild(benchmark::State& state) {
  auto& l = lab();
  const auto r = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(romlab::build_trilinear_tensor(l.basis(), r, l.space()));
}
BENCHMARK(BM_TensorBuild)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_LromStep(benchmark::State& state) {
  auto& l = lab();
  romlab::LROMConfig cfg;
  cfg.r = static_cast<std::size_t>(state.range(0));
  cfg.delta = 1e-2;
  cfg.dt = 1e-2;
  const auto ops = l.rom_operators(cfg);
  const romlab::FilterOperator filter(ops.stiffness, cfg.delta);
  for (auto _ : state)
    benchmark::DoNotOptimize(romlab::lrom_step(ops, filter, cfg, ops.initial, ops.forcing.col(1)));
}
BENCHMARK(BM_LromStep)->Arg(10)->Arg(30);

}  // namespace

BENCHMARK_MAIN();
