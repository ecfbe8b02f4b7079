#include "ksplit/fixtures.hpp"
#include "ksplit/normal_form.hpp"
#include "ksplit/splitter.hpp"

#include <benchmark/benchmark.h>

using namespace ksplit;

namespace {

Matrix random_matrix(std::size_t n, Rng& rng) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<long long>(rng() % 201) - 100;
  return m;
}

void BM_Snf(benchmark::State& state) {
  Rng rng(1);
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(snf(m));
}
BENCHMARK(BM_Snf)->Arg(4)->Arg(8)->Arg(16);

void BM_IsPure(benchmark::State& state) {
  Rng rng(2);
  const FgGroup g({2, 4, 8, 16}, 2);
  std::vector<Vector> gens;
  for (int i = 0; i < state.range(0); ++i) gens.push_back(random_hom(FgGroup::free(1), g, rng).matrix().column(0));
  const Subgroup h(g, gens);
  for (auto _ : state) benchmark::DoNotOptimize(is_pure(h));
}
BENCHMARK(BM_IsPure)->Arg(1)->Arg(3)->Arg(6);

void BM_BuildIdealSplitting(benchmark::State& state) {
  const auto inst = random_instance(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_ideal_splitting(inst));
}
BENCHMARK(BM_BuildIdealSplitting)->Arg(3)->Arg(17)->Arg(42);

void BM_BuildTruncation(benchmark::State& state) {
  const auto inst = dp_truncation(3, state.range(0), state.range(0) - 1);
  for (auto _ : state) benchmark::DoNotOptimize(build_ideal_splitting(inst));
}
BENCHMARK(BM_BuildTruncation)->Arg(1)->Arg(2)->Arg(3);

}  // namespace
BENCHMARK_MAIN();
