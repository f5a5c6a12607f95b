#include <benchmark/benchmark.h>

#include "tvlab/complexes/complex.hpp"
#include "tvlab/core/linalg.hpp"
#include "tvlab/core/rng.hpp"
#include "tvlab/geometry/lp.hpp"
#include "tvlab/harness/fleet.hpp"
#include "tvlab/matroid/matroid.hpp"

using namespace tvlab;

namespace {

// Random feasibility system with small integer coefficients; about half are infeasible.
LinearSystem random_system(Rng& rng, std::size_t vars, std::size_t rows) {
  LinearSystem s(vars, true);
  for (std::size_t i = 0; i < rows; ++i) {
    LinearConstraint c;
    for (std::size_t j = 0; j < vars; ++j) c.coeffs.push_back(Rational(rng.uniform_int(-5, 5)));
    c.relation = i % 3 == 0 ? Relation::Equal : (i % 3 == 1 ? Relation::LessEq : Relation::GreaterEq);
    c.rhs = Rational(rng.uniform_int(-3, 3));
    s.add(std::move(c));
  }
  return s;
}

void BM_LpFeasible(benchmark::State& state) {
  Rng rng(7);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<LinearSystem> systems;
  for (int i = 0; i < 16; ++i) systems.push_back(random_system(rng, n, n));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lp_feasible(systems[i++ % systems.size()]));
  }
}
BENCHMARK(BM_LpFeasible)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_SmithNormalForm(benchmark::State& state) {
  Rng rng(11);
  const auto n = static_cast<std::size_t>(state.range(0));
  ZMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m(r, c) = rng.uniform_int(-9, 9);
  }
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(8)->Arg(16)->Arg(32);

void BM_HomologyOfSkeleton(benchmark::State& state) {
  // Full 2-skeleton of the simplex on n vertices.
  const int n = static_cast<int>(state.range(0));
  std::vector<Face> facets;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) facets.push_back({a, b, c});
  const SimplicialComplex k(facets);
  for (auto _ : state) benchmark::DoNotOptimize(reduced_homology(k));
}
BENCHMARK(BM_HomologyOfSkeleton)->Arg(6)->Arg(8)->Arg(10);

void BM_IndependenceComplex(benchmark::State& state) {
  const Matroid m = Matroid::uniform(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(reduced_homology(independence_complex(m)));
}
BENCHMARK(BM_IndependenceComplex)->Arg(6)->Arg(9);

void BM_FleetAutomorphisms(benchmark::State& state) {
  std::vector<Matroid> ms;
  for (const auto& entry : matroid_fleet(1)) ms.push_back(entry.spec.build());
  for (auto _ : state) {
    for (std::size_t i = 0; i < 10; ++i) benchmark::DoNotOptimize(matroid_automorphisms(ms[i]));
  }
}
BENCHMARK(BM_FleetAutomorphisms);

}  // namespace

BENCHMARK_MAIN();
