#include <benchmark/benchmark.h>

#include "corpus.hpp"
#include "spbw/properties.hpp"

using namespace spbw;

static void SkewArmendarizZ3(benchmark::State& state) {
  const auto inst = load_corpus("z3_trivial.json");
  const auto d = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(is_skew_armendariz_bounded(*inst.module, *inst.presentation, d));
}
BENCHMARK(SkewArmendarizZ3)->DenseRange(0, 2);

static void LinearSkewArmendarizUT2(benchmark::State& state) {
  const auto inst = load_corpus("ut2_z2.json");
  for (auto _ : state) benchmark::DoNotOptimize(is_linearly_skew_armendariz(*inst.module, *inst.presentation));
}
BENCHMARK(LinearSkewArmendarizUT2);

static void BaerFamilyUT2(benchmark::State& state) {
  const auto inst = load_corpus("ut2_z2.json");
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_baer(*inst.module));
    benchmark::DoNotOptimize(is_quasi_baer(*inst.module));
  }
}
BENCHMARK(BaerFamilyUT2);

static void BoundedAnnihilatorZ4(benchmark::State& state) {
  const auto inst = load_corpus("z4.json");
  const auto& P = *inst.presentation;
  const std::vector<ModulePoly> ms{ModulePoly::constant(*inst.module, P, 2)};
  const auto d = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ann_in_A_bounded(ms, P, d));
}
BENCHMARK(BoundedAnnihilatorZ4)->DenseRange(1, 3);

static void TheoremSuite(benchmark::State& state, const char* file) {
  const auto inst = load_corpus(file);
  SuiteOptions opts;
  opts.embedding = inst.embedding;
  for (auto _ : state) benchmark::DoNotOptimize(theorem_suite(*inst.module, *inst.presentation, opts));
}
BENCHMARK_CAPTURE(TheoremSuite, z4, "z4.json")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(TheoremSuite, z2xz2_swap, "z2xz2_swap.json")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(TheoremSuite, quantum_plane_z5, "quantum_plane_z5.json")->Unit(benchmark::kMillisecond);
