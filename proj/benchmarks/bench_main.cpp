#include <benchmark/benchmark.h>

#include <random>

#include "mlion/community.hpp"
#include "mlion/metrics.hpp"

using namespace mlion;

namespace {

Matrix random_symmetric(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Matrix a(n, n);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = normal(rng);
  return (a + a.transpose()) / std::sqrt(4.0 * static_cast<double>(n));
}

// N countries x L sectors, dense lognormal flows with heavier domestic trade.
MultilayerNetwork synthetic(std::size_t n, std::size_t l, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::lognormal_distribution<double> flow(0.0, 1.5);
  std::bernoulli_distribution present(0.65);
  const auto m = static_cast<Eigen::Index>(n * l);
  Matrix w = Matrix::Zero(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      const bool domestic = static_cast<std::size_t>(a) % n == static_cast<std::size_t>(b) % n;
      if (domestic || present(rng)) w(a, b) = flow(rng) * (domestic ? 50.0 : 1.0);
    }
  }
  std::vector<std::string> nodes, layers;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back("c" + std::to_string(i));
  for (std::size_t i = 0; i < l; ++i) layers.push_back("s" + std::to_string(i));
  return MultilayerNetwork(nodes, layers, std::move(w));
}

void BM_ExpmSymmetric(benchmark::State& state) {
  const Matrix s = random_symmetric(state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(expm_symmetric(s));
}
BENCHMARK(BM_ExpmSymmetric)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_ExpmGeneral(benchmark::State& state) {
  Matrix s = random_symmetric(state.range(0), 2);
  s.triangularView<Eigen::StrictlyLower>().setZero();
  for (auto _ : state) benchmark::DoNotOptimize(expm_general(s));
}
BENCHMARK(BM_ExpmGeneral)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto net = synthetic(n, 8, 3);
  const auto dist = detection_distances(net);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_thresholds(dist, net.dims(), 100));
}
BENCHMARK(BM_Sweep)->Arg(10)->Arg(40)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_DetectCommunities(benchmark::State& state) {
  const auto net = synthetic(static_cast<std::size_t>(state.range(0)), 8, 4);
  for (auto _ : state) benchmark::DoNotOptimize(detect_communities(net, {.r = 100}));
}
BENCHMARK(BM_DetectCommunities)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_StrengthTable(benchmark::State& state) {
  const auto net = synthetic(44, 56, 5);
  for (auto _ : state) benchmark::DoNotOptimize(strength_table(net, Direction::out, StrengthKind::total));
}
BENCHMARK(BM_StrengthTable)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
