#include <benchmark/benchmark.h>

#include "zlab/multiplier.hpp"
#include "zlab/spectral.hpp"

namespace {

zlab::RadialField bump(const zlab::RadialGrid& g, double c, double w) {
  return zlab::sample_spectral(g, [=](double rho) {
    const double d = (rho - c) / w;
    return zlab::cplx(std::exp(-0.5 * d * d), 0.0);
  });
}

void BM_KernelAssembly(benchmark::State& state) {
  const zlab::RadialGrid g = zlab::build_grid(static_cast<int>(state.range(0)), 32.0);
  for (auto _ : state) {
    auto k = zlab::BilinearKernel::assemble(g, zlab::omega_spec());
    benchmark::DoNotOptimize(k.nnz());
  }
}
BENCHMARK(BM_KernelAssembly)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_KernelApply(benchmark::State& state) {
  const zlab::RadialGrid g = zlab::build_grid(static_cast<int>(state.range(0)), 32.0);
  const auto& k = zlab::bilinear_kernel(g, zlab::omega_spec());
  const zlab::RadialField N = bump(g, 7.0, 1.0);
  const zlab::RadialField u = bump(g, 0.3, 0.15);
  for (auto _ : state) {
    auto out = k.apply(N, u);
    benchmark::DoNotOptimize(out.values.data());
  }
}
BENCHMARK(BM_KernelApply)->Arg(128)->Arg(256)->Arg(512);

void BM_DirectQuadrature(benchmark::State& state) {
  const zlab::RadialGrid g = zlab::build_grid(static_cast<int>(state.range(0)), 32.0);
  const zlab::RadialField N = bump(g, 7.0, 1.0);
  const zlab::RadialField u = bump(g, 0.3, 0.15);
  for (auto _ : state) {
    auto out = zlab::apply_bilinear(zlab::omega_spec(), N, u);
    benchmark::DoNotOptimize(out.values.data());
  }
}
BENCHMARK(BM_DirectQuadrature)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
