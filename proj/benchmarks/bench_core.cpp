#include <benchmark/benchmark.h>

#include "nilbohr/cube.hpp"
#include "nilbohr/search.hpp"
#include "nilbohr/sequence_spec.hpp"
#include "nilbohr/torus_poly.hpp"
#include "nilbohr/unitriangular.hpp"

using namespace nilbohr;

static void BM_EnumerateSyndetic(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto v = enumerate_syndetic(n, 2);
    benchmark::DoNotOptimize(v);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_EnumerateSyndetic)->DenseRange(8, 20, 4)->Complexity();

static void BM_EvaluatePolynomial(benchmark::State& state) {
  TorusPolynomial f = alternating_half_poly(3, 2, 12);
  IndexSet a{1, 3, 4, 6, 7, 9, 10, 12};
  for (auto _ : state) {
    auto v = evaluate(f, a);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_EvaluatePolynomial);

static void BM_StableEvaluate(benchmark::State& state) {
  StableCoefficients f = alternating_half_coeffs(4, 2);
  std::vector<int> elems;
  for (int x = 1; x <= static_cast<int>(state.range(0)); x += 2) elems.push_back(x);
  IndexSet a(elems);
  for (auto _ : state) {
    auto v = f.evaluate(a);
    benchmark::DoNotOptimize(v);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StableEvaluate)->RangeMultiplier(2)->Range(16, 256)->Complexity();

static void BM_ReduceModLattice(benchmark::State& state) {
  Unitriangular g(4);
  g.set(0, 1, Rat(355, 113));
  g.set(0, 2, Rat(-22, 7));
  g.set(0, 3, Rat(103, 99));
  g.set(1, 2, Rat(577, 408));
  g.set(1, 3, Rat(-5, 3));
  g.set(2, 3, Rat(1393, 985));
  for (auto _ : state) {
    auto r = reduce_mod_lattice(g);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ReduceModLattice);

static void BM_DistToIdentity(benchmark::State& state) {
  Unitriangular g(static_cast<int>(state.range(0)));
  for (int i = 0; i + 1 < g.size(); ++i) g.set(i, i + 1, Rat(7, 10));
  g.set(0, g.size() - 1, Rat(9, 11));
  for (auto _ : state) {
    auto d = dist_to_identity(g, 2);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_DistToIdentity)->Arg(3)->Arg(4);

static void BM_HKMembership(benchmark::State& state) {
  std::vector<TorusPoint> values;
  for (int i = 0; i < 8; ++i) values.push_back(TorusPoint({Rat(i % 5, 5)}));
  TorusCube c(3, 2, values);
  for (auto _ : state) {
    bool m = is_hk_cube_abelian(c);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_HKMembership);

static void BM_OrbitSearch(benchmark::State& state) {
  Unitriangular g = Unitriangular::heisenberg(Rat(3363, 2378), Rat(1393, 985), Rat(0));
  auto n = sequence_spec("id", static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto o = search_orbit_recurrence(g, n, 3, Rat(1, 10), static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(o);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_OrbitSearch)->DenseRange(8, 14, 2)->Complexity();

BENCHMARK_MAIN();
