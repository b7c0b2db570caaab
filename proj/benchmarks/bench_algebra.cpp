#include <benchmark/benchmark.h>

#include "rspace/grassmann.hpp"
#include "rspace/linalg.hpp"
#include "rspace/stanley.hpp"

using namespace rspace;

namespace {

Poly dense_poly(const PolyRing& ring, uint32_t max_exp) {
  Poly p(ring);
  ExpVec e(ring.arity(), 0);
  std::function<void(size_t)> fill = [&](size_t i) {
    if (i == ring.arity()) {
      p.add_term(e, 1 + static_cast<long>(e[0]));
      return;
    }
    for (uint32_t v = 0; v <= max_exp; ++v) {
      e[i] = v;
      fill(i + 1);
    }
  };
  fill(0);
  return p;
}

void BM_poly_mul(benchmark::State& state) {
  PolyRing ring(Field::rationals(), {"x", "y", "z"});
  Poly a = dense_poly(ring, static_cast<uint32_t>(state.range(0)));
  Poly b = dense_poly(ring, static_cast<uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_poly_mul)->Arg(2)->Arg(3);

void BM_exact_div(benchmark::State& state) {
  PolyRing ring(Field::rationals(), {"x", "y"});
  Poly a = dense_poly(ring, 3);
  Poly product = a * a;
  for (auto _ : state) benchmark::DoNotOptimize(product.exact_div(a));
}
BENCHMARK(BM_exact_div);

void BM_generic_det(benchmark::State& state) {
  size_t n = static_cast<size_t>(state.range(0));
  std::vector<std::string> vars;
  for (size_t i = 1; i <= n; ++i)
    for (size_t j = 1; j <= n; ++j)
      vars.push_back("x" + std::to_string(i) + std::to_string(j));
  LocalizedRing ring = LocalizedRing::polynomial(Field::rationals(), vars);
  RingMatrix m(ring, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m.at(i, j) = ring.var_element(i * n + j);
  for (auto _ : state) benchmark::DoNotOptimize(m.det());
}
BENCHMARK(BM_generic_det)->Arg(3)->Arg(4)->Arg(5);

void BM_homology_rp2(benchmark::State& state) {
  SimplicialComplex k = rp2_6();
  Field f2 = Field::prime(2);
  for (auto _ : state) benchmark::DoNotOptimize(reduced_homology(k, f2));
}
BENCHMARK(BM_homology_rp2);

void BM_smith(benchmark::State& state) {
  auto m = boundary_matrix(rp2_6(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_smith);

}  // namespace
