#include "infolab/bottleneck.hpp"
#include "infolab/estimators.hpp"
#include "infolab/homology.hpp"
#include "infolab/ising.hpp"
#include "infolab/mi_matrix.hpp"
#include "infolab/spectral.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace infolab;

namespace {

std::vector<double> normals(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  std::vector<double> v(n);
  for (auto& x : v) x = z(rng);
  return v;
}

Eigen::MatrixXd low_rank(int d, int rank) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> z;
  Eigen::MatrixXd g(d, rank);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = z(rng);
  return g * g.transpose();
}

void BM_KsgMI(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = normals(n, 1);
  auto y = normals(n, 2);
  for (std::size_t i = 0; i < n; ++i) y[i] += 0.5 * x[i];
  EstimatorConfig cfg;
  cfg.method = EstimatorMethod::knn;
  for (auto _ : state)
    benchmark::DoNotOptimize(estimate_mi(x, ColumnKind::continuous, y, ColumnKind::continuous, cfg));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KsgMI)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

void BM_PluginMIMatrix(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  Eigen::MatrixXd data(2000, d);
  for (Eigen::Index i = 0; i < data.size(); ++i) data.data()[i] = static_cast<double>(rng() % 2);
  const SampleMatrix s(data, std::vector<ColumnKind>(static_cast<std::size_t>(d), ColumnKind::discrete));
  for (auto _ : state) benchmark::DoNotOptimize(build_mi_matrix(s, {}, {DiagonalPolicy::automatic, 1}));
}
BENCHMARK(BM_PluginMIMatrix)->Arg(16)->Arg(64);

void BM_SolveIB(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  std::mt19937_64 rng(4);
  std::exponential_distribution<double> e(1.0);
  IBProblem p;
  p.joint.resize(k, k);
  for (Eigen::Index i = 0; i < p.joint.size(); ++i) p.joint.data()[i] = e(rng);
  p.joint /= p.joint.sum();
  p.cardinality_f = std::max(2, k / 4);
  p.lambda = 0.1;
  for (auto _ : state) benchmark::DoNotOptimize(solve_ib(p));
}
BENCHMARK(BM_SolveIB)->Arg(4)->Arg(16)->Arg(64);

void BM_IsingChain(benchmark::State& state) {
  IsingSpec spec;
  spec.L = static_cast<int>(state.range(0));
  spec.temperatures = {2.27};
  spec.sweeps = 1000;
  spec.burn_in = 100;
  for (auto _ : state) benchmark::DoNotOptimize(simulate(spec, 2.27, 1));
  state.SetItemsProcessed(state.iterations() * (spec.sweeps + spec.burn_in) * spec.sites());
}
BENCHMARK(BM_IsingChain)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_ExactSpectrum(benchmark::State& state) {
  const Eigen::MatrixXd m = low_rank(static_cast<int>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_summary(m));
}
BENCHMARK(BM_ExactSpectrum)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_RandomizedSpectrum(benchmark::State& state) {
  const Eigen::MatrixXd m = low_rank(static_cast<int>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(randomized_effective_rank(m, 15, 2));
}
BENCHMARK(BM_RandomizedSpectrum)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_RankFiltration(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::mt19937_64 rng(5);
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) m(i, j) = m(j, i) = static_cast<double>(rng() % 20) / 20.0;
  for (auto _ : state) benchmark::DoNotOptimize(rank_filtration(m));
}
BENCHMARK(BM_RankFiltration)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
