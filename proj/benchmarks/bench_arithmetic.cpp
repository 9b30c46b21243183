#include <benchmark/benchmark.h>

#include "corpus.hpp"
#include "spbw/literal.hpp"
#include "spbw/polymodule.hpp"

using namespace spbw;

// (x1 + x2)^k in the quantum plane over Z5.
static void QuantumPlanePower(benchmark::State& state) {
  const auto inst = load_corpus("quantum_plane_z5.json");
  const auto& P = *inst.presentation;
  const SkewPoly base = parse_poly(P, "x1 + x2");
  for (auto _ : state) {
    SkewPoly f = SkewPoly::constant(P, P.ring().one());
    for (int k = 0; k < state.range(0); ++k) f = mul(f, base);
    benchmark::DoNotOptimize(f);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(QuantumPlanePower)->DenseRange(2, 12, 2)->Complexity();

// x1^k y in the Weyl-like extension of Z2[y]/(y^2).
static void WeylNormalize(benchmark::State& state) {
  const auto inst = load_corpus("weyl_dual_regular.json");
  const auto& P = *inst.presentation;
  const SkewPoly y = parse_poly(P, "y");
  const SkewPoly x = SkewPoly::monomial(P, MultiIndex{static_cast<unsigned>(state.range(0))}, P.ring().one());
  for (auto _ : state) benchmark::DoNotOptimize(mul(x, y));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(WeylNormalize)->RangeMultiplier(2)->Range(2, 64)->Complexity();

static void WeylQuotientAction(benchmark::State& state) {
  const auto inst = load_corpus("weyl_dual_quotient.json");
  const auto& P = *inst.presentation;
  const auto& M = *inst.module;
  const ModulePoly m = parse_module_poly(M, P, "1*x1^3 + 1*x1 + 1");
  const SkewPoly f = parse_poly(P, "y*x1^2 + (1+y)*x1 + y");
  const bool cached = state.range(0) != 0;
  ProductCache cache(P);
  for (auto _ : state) benchmark::DoNotOptimize(act(m, f, cached ? &cache : nullptr));
}
BENCHMARK(WeylQuotientAction)->Arg(0)->Arg(1);
