#include <benchmark/benchmark.h>

#include "rspace/grassmann.hpp"
#include "rspace/lattice.hpp"

using namespace rspace;

namespace {

void BM_build_affine_top(benchmark::State& state) {
  Field q = Field::rationals();
  size_t n = static_cast<size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_affine_top(q, n));
}
BENCHMARK(BM_build_affine_top)->Arg(3)->Arg(4);

void BM_check_plucker(benchmark::State& state) {
  Field q = Field::rationals();
  SpaceMorphism p = plucker(q, 2, 4);
  for (auto _ : state) benchmark::DoNotOptimize(check_morphism(p));
}
BENCHMARK(BM_check_plucker);

void BM_grass_restriction(benchmark::State& state) {
  Field q = Field::rationals();
  RingedSpace g = build_grass(q, 2, 4);
  size_t bottom = 0;
  size_t top = g.size() - 1;
  RingHom restr = g.restriction(bottom, top);
  RingElement probe = g.stalk(bottom).var_element(0);
  for (auto _ : state) benchmark::DoNotOptimize(restr.apply(probe));
}
BENCHMARK(BM_grass_restriction);

void BM_free_dl(benchmark::State& state) {
  size_t n = static_cast<size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(free_dl(n));
}
BENCHMARK(BM_free_dl)->Arg(3)->Arg(4);

void BM_sspec_free3(benchmark::State& state) {
  DistLattice l = free_dl(3);
  for (auto _ : state) benchmark::DoNotOptimize(sspec(l));
}
BENCHMARK(BM_sspec_free3);

}  // namespace

BENCHMARK_MAIN();
