// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "monospline/global.hpp"
#include "monospline/twopoint.hpp"

using namespace monospline;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::kSerial : Execution::kParallel;
}

std::vector<TwoPointData> triples(std::size_t n) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> U(0.0, 5.0);
  std::vector<TwoPointData> out;
  while (out.size() < n) {
    const double a = U(gen), b = U(gen), c = U(gen);
    if (c > 0.0) out.push_back({a, b, c});
  }
  return out;
}

void BM_MstarOracleBatch(benchmark::State& state) {
  const auto data = triples(64);
  for (auto _ : state) benchmark::DoNotOptimize(mstar_oracle_batch(data, 2000, mode(state)));
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

void BM_SeminormOracle(benchmark::State& state) {
  const HermiteDataset ds{{0.0, 0.8, 2.0, 2.7}, {0.0, 0.5, 0.5, 1.4}, {}};
  for (auto _ : state) benchmark::DoNotOptimize(seminorm_oracle_detailed(ds, static_cast<int>(state.range(1)), mode(state)));
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

}  // namespace

BENCHMARK(BM_MstarOracleBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeminormOracle)->Args({0, 32})->Args({1, 32})->Args({0, 64})->Args({1, 64})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
