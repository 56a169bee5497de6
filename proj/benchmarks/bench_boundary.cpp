#include <benchmark/benchmark.h>

#include <numbers>

#include "qjm/approximation.hpp"
#include "qjm/detail/ellipse.hpp"

namespace {

void BM_ellipse_projection(benchmark::State& state) {
  double x = 1.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qjm::detail::project_to_ellipse_region(1.0, 0.6, x, 0.9));
    x = x > 2.0 ? 1.1 : x + 1e-6;
  }
}
BENCHMARK(BM_ellipse_projection);

void BM_min_d2_sample(benchmark::State& state) {
  const qjm::TargetPair target =
      qjm::TargetPair::from_angle(std::numbers::pi / 2);
  const double d1 = qjm::d0(target.theta);
  qjm::BoundaryOptions opts;
  opts.grid = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qjm::min_d2_given_d1(target, d1, opts));
  }
}
BENCHMARK(BM_min_d2_sample)->Arg(32)->Arg(96);

void BM_boundary_curve_small(benchmark::State& state) {
  const qjm::TargetPair target =
      qjm::TargetPair::from_angle(std::numbers::pi / 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qjm::boundary_curve(target, 9, {}));
  }
}
BENCHMARK(BM_boundary_curve_small);

}  // namespace
