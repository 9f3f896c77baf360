#include <benchmark/benchmark.h>

#include <random>

#include "snwit/optim.hpp"
#include "snwit/osd.hpp"
#include "snwit/qstate.hpp"
#include "snwit/specbounds.hpp"
#include "snwit/witness.hpp"

namespace {

using namespace snwit;

void BM_Osc(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  Rng rng = substream(1, d);
  const BipartiteState rho = random_mixed(d, 2 * d * d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(osc(rho));
}
BENCHMARK(BM_Osc)->DenseRange(2, 6)->Arg(8)->Arg(10);

void BM_LambdaExact(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const OSCSpectrum mu = osc(rho_family(k));
  for (auto _ : state) benchmark::DoNotOptimize(lambda_exact(mu, k));
}
BENCHMARK(BM_LambdaExact)->DenseRange(2, 4);

void BM_MaximizeF(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const OSCSpectrum mu = osc(rho_family(k));
  for (auto _ : state) {
    Rng rng = substream(1, k);
    benchmark::DoNotOptimize(maximize_F(mu, k, rng, {.restarts = 8}));
  }
}
BENCHMARK(BM_MaximizeF)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_AllBounds(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = u(gen);
  for (auto _ : state) benchmark::DoNotOptimize(all_bounds(m));
}
BENCHMARK(BM_AllBounds)->Arg(4)->Arg(16)->Arg(64);

}  // namespace
BENCHMARK_MAIN();
