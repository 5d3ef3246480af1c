// Serial reference kernels against their OpenMP versions.
#include <benchmark/benchmark.h>

#include "powres/verify.hpp"
#include "support/instances.hpp"

using namespace powres;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

void BM_SupportSearch(benchmark::State& state) {
  const MonomialIdeal ideal = testing::random_pd1_instance(11, static_cast<int>(state.range(1))).ideal;
  for (auto _ : state) benchmark::DoNotOptimize(build_support_tree(ideal, mode(state)));
  label(state);
}
BENCHMARK(BM_SupportSearch)->ArgsProduct({{0, 1}, {5, 6}})->Unit(benchmark::kMillisecond);

void BM_DegreewiseExactness(benchmark::State& state) {
  const RootedTree tree = testing::branching_tree();
  const int r = static_cast<int>(state.range(1));
  const GradedComplex f = homogenize(assemble_complex(tree, r));
  std::vector<Monomial> gens;
  for (const auto& a : enumerate_Nr(tree.q(), r)) gens.push_back(power_generator(tree.labels(), a));
  for (auto _ : state) benchmark::DoNotOptimize(degreewise_exactness(f, gens, Field::rationals(), mode(state)));
  label(state);
}
BENCHMARK(BM_DegreewiseExactness)->ArgsProduct({{0, 1}, {3, 5}})->Unit(benchmark::kMillisecond);

void BM_ValidatePolyhedral(benchmark::State& state) {
  const CellComplex cells = assemble_complex(testing::running_tree(), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(validate_polyhedral(cells, mode(state)));
  label(state);
}
BENCHMARK(BM_ValidatePolyhedral)->ArgsProduct({{0, 1}, {4, 8}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
