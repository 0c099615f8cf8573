#include <curvlift/analytic.hpp>
#include <curvlift/curvature.hpp>
#include <curvlift/study.hpp>

#include <benchmark/benchmark.h>

namespace {

using namespace curvlift;

Mesh perturbed_mesh(int level) {
  Mesh mesh = build_structured_square(level);
  perturb_interior(mesh, level_seed(1, level));
  return mesh;
}

struct Setup {
  Mesh mesh;
  AnalyticMetric ghat;
  ReggeSpace regge;
  VectorXd gcoeffs;
  LagrangeSpace lagrange;

  Setup(int level, int k)
      : mesh(perturbed_mesh(level)),
        ghat(benchmark_metric()),
        regge(mesh, k),
        gcoeffs(regge.interpolate([this](const Vec2& x) { return ghat.jet(x).v; })),
        lagrange(mesh, k) {}
};

void bench_interpolate(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  Setup s(level, k);
  for (auto _ : state) {
    VectorXd c = s.regge.interpolate([&](const Vec2& x) { return s.ghat.jet(x).v; });
    benchmark::DoNotOptimize(c.data());
  }
}
BENCHMARK(bench_interpolate)->Args({3, 1})->Args({4, 2})->Unit(benchmark::kMillisecond);

void bench_gauss_functional(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  Setup s(level, k);
  const MetricField g_h = regge_metric_field(s.regge, s.gcoeffs);
  for (auto _ : state) {
    VectorXd f = assemble_gauss_functional(s.lagrange, g_h, 2 * k + 6);
    benchmark::DoNotOptimize(f.data());
  }
}
BENCHMARK(bench_gauss_functional)->Args({3, 1})->Args({4, 2})->Unit(benchmark::kMillisecond);

void bench_mass_assembly(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  Setup s(level, k);
  const MetricField g_h = regge_metric_field(s.regge, s.gcoeffs);
  for (auto _ : state) {
    SparseMat m = assemble_weighted_mass(s.lagrange, g_h, 2 * k + 6);
    benchmark::DoNotOptimize(m.valuePtr());
  }
}
BENCHMARK(bench_mass_assembly)->Args({3, 1})->Args({4, 2})->Unit(benchmark::kMillisecond);

void bench_lift(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  Setup s(level, k);
  const MetricField g_h = regge_metric_field(s.regge, s.gcoeffs);
  for (auto _ : state) {
    VectorXd kh = lift_curvature(s.lagrange, g_h, s.ghat, 2 * k + 6);
    benchmark::DoNotOptimize(kh.data());
  }
}
BENCHMARK(bench_lift)->Args({3, 1})->Args({4, 2})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
