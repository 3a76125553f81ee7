#include <benchmark/benchmark.h>

#include "zlab/dyadic.hpp"
#include "zlab/spectral.hpp"

namespace {

zlab::RadialField gaussian(const zlab::RadialGrid& g) {
  return zlab::sample_physical(g, [](double r) {
    return zlab::cplx(std::exp(-0.5 * r * r), 0.0);
  });
}

void BM_Forward(benchmark::State& state) {
  const zlab::RadialGrid g = zlab::build_grid(static_cast<int>(state.range(0)), 32.0);
  const zlab::RadialField f = gaussian(g);
  zlab::forward(f);  // warm the transform cache
  for (auto _ : state) {
    auto F = zlab::forward(f);
    benchmark::DoNotOptimize(F.values.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Forward)->RangeMultiplier(2)->Range(128, 1024)->Complexity();

void BM_Paraproduct(benchmark::State& state) {
  const zlab::RadialGrid g = zlab::build_grid(static_cast<int>(state.range(0)), 32.0);
  const zlab::DyadicSystem dys = zlab::DyadicSystem::make(g);
  const zlab::RadialField f = gaussian(g);
  for (auto _ : state) {
    auto p = zlab::paraproduct(dys, f, f, zlab::Paraproduct::HL);
    benchmark::DoNotOptimize(p.values.data());
  }
}
BENCHMARK(BM_Paraproduct)->Arg(128)->Arg(256)->Arg(512);

}  // namespace
