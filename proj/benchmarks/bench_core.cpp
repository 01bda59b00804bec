#include <benchmark/benchmark.h>

#include "pinchlab/mesh.hpp"
#include "pinchlab/rigidity.hpp"
#include "pinchlab/spectral.hpp"

using namespace pinchlab;

namespace {

SurfaceMesh fixture(int subdiv) {
  const auto model = AmbientModel::make(0.0);
  return generate_icosphere(model, model.base_point(), 1.0, subdiv);
}

void BM_icosphere(benchmark::State& state) {
  const auto model = AmbientModel::make(0.0);
  for (auto _ : state) {
    auto mesh = generate_icosphere(model, model.base_point(), 1.0,
                                   static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(mesh.vertices.data());
  }
}
BENCHMARK(BM_icosphere)->Arg(3)->Arg(4)->Arg(5);

void BM_assemble(benchmark::State& state) {
  const auto mesh = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto op = assemble(mesh);
    benchmark::DoNotOptimize(op.stiffness);
  }
}
BENCHMARK(BM_assemble)->Arg(3)->Arg(4)->Arg(5);

void BM_lambda1(benchmark::State& state) {
  const auto op = assemble(fixture(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    auto eig = lambda1(op, 1e-10);
    benchmark::DoNotOptimize(eig.lambda1);
  }
}
BENCHMARK(BM_lambda1)->Arg(3)->Arg(4)->Arg(5);

void BM_riccati(benchmark::State& state) {
  const auto prof = linear_profile(-1.0, 1.0, 2.0);
  const double dt = 2.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto sol = integrate_riccati(prof, dt);
    benchmark::DoNotOptimize(sol.rho.back());
  }
}
BENCHMARK(BM_riccati)->Arg(2000)->Arg(8000)->Arg(32000);

}  // namespace

BENCHMARK_MAIN();
