#include <crmw/generators.hpp>
#include <crmw/normalform.hpp>
#include <crmw/realize.hpp>
#include <crmw/symmetry.hpp>

#include <benchmark/benchmark.h>

namespace {

using namespace crmw;

ModelData fixture_model(int s, int r, int order) {
  Rng rng(7 + 100 * s + 10 * r);
  return random_model(rng, s, r, order);
}

// Args: s, r, order.
void BM_BuildModel(benchmark::State &state) {
  ModelData m = fixture_model(state.range(0), state.range(1), state.range(2));
  for (auto _ : state)
    benchmark::DoNotOptimize(build_model(m));
}
BENCHMARK(BM_BuildModel)->Args({1, 1, 8})->Args({2, 2, 6})->Args({3, 3, 5})->Unit(benchmark::kMillisecond);

void BM_Reconstruct(benchmark::State &state) {
  ModelData m = fixture_model(state.range(0), state.range(1), state.range(2));
  for (auto _ : state)
    benchmark::DoNotOptimize(reconstruct_from_HS(m));
}
BENCHMARK(BM_Reconstruct)->Args({1, 1, 8})->Args({2, 2, 6})->Args({3, 3, 5})->Unit(benchmark::kMillisecond);

void BM_PdeOracle(benchmark::State &state) {
  ModelData m = fixture_model(state.range(0), state.range(1), state.range(2));
  for (auto _ : state)
    benchmark::DoNotOptimize(pde_propagate_oracle(m));
}
BENCHMARK(BM_PdeOracle)->Args({1, 1, 8})->Args({2, 2, 6})->Args({3, 3, 5})->Unit(benchmark::kMillisecond);

void BM_VerifyRank(benchmark::State &state) {
  DefiningEquation eq = build_model(fixture_model(state.range(0), state.range(1), state.range(2)));
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_rank_condition(eq));
}
BENCHMARK(BM_VerifyRank)->Args({1, 1, 8})->Args({2, 2, 6})->Unit(benchmark::kMillisecond);

void BM_FirstOrderConstancy(benchmark::State &state) {
  DefiningEquation eq = build_model(fixture_model(state.range(0), state.range(1), 4));
  for (auto _ : state)
    benchmark::DoNotOptimize(first_order_constancy(eq));
}
BENCHMARK(BM_FirstOrderConstancy)->Args({2, 1})->Args({3, 3})->Unit(benchmark::kMillisecond);

// Args: s, r, order.
void BM_Realize(benchmark::State &state) {
  Rng rng(11);
  SymbolInput in = SymbolInput::from_symbol(
      random_realizable_symbol(rng, static_cast<int>(state.range(0)), static_cast<int>(state.range(1))));
  for (auto _ : state)
    benchmark::DoNotOptimize(realize_S_from_symbol(in, static_cast<int>(state.range(2))));
}
BENCHMARK(BM_Realize)->Args({2, 1, 6})->Args({2, 3, 6})->Args({3, 2, 5})->Unit(benchmark::kMillisecond);

void BM_Tangency(benchmark::State &state) {
  ModelData m = fixture_model(state.range(0), 1, state.range(1));
  DefiningEquation eq = build_model(m);
  HoloVectorField x = transversal_symmetry(m, Vec(static_cast<std::size_t>(m.s()), GR(1)), GR(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_tangency(eq, x));
}
BENCHMARK(BM_Tangency)->Args({1, 6})->Args({2, 6})->Unit(benchmark::kMillisecond);

void BM_NormalForm(benchmark::State &state) {
  ModelData m = fixture_model(state.range(0), state.range(1), 5);
  for (auto _ : state)
    benchmark::DoNotOptimize(normal_form_reduce(m));
}
BENCHMARK(BM_NormalForm)->Args({2, 2})->Args({3, 3})->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
