#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "qjm/jointness.hpp"
#include "qjm/oracle.hpp"

namespace {

std::vector<std::pair<qjm::SimpleObservable, qjm::SimpleObservable>>
make_pairs(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<std::pair<qjm::SimpleObservable, qjm::SimpleObservable>> pairs;
  pairs.reserve(count);
  auto effect = [&] {
    qjm::Vec3 a{gauss(rng), gauss(rng), gauss(rng)};
    const double r = 0.999 * uni(rng);
    a = (r / qjm::norm(a)) * a;
    const double alpha = r + (2.0 - 2.0 * r) * uni(rng);
    return qjm::Effect{alpha, a};
  };
  for (int i = 0; i < count; ++i) {
    pairs.push_back({{effect()}, {effect()}});
  }
  return pairs;
}

void BM_decide_jm(benchmark::State& state) {
  const auto pairs = make_pairs(256, 1);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [o1, o2] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(qjm::decide_jm(o1, o2));
  }
}
BENCHMARK(BM_decide_jm);

void BM_jordan_joint(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(qjm::jordan_joint({0.5, 0, 0}, {0, 0.5, 0}));
  }
}
BENCHMARK(BM_jordan_joint);

void BM_informational_completeness(benchmark::State& state) {
  const qjm::JointObservable g = qjm::covariant_joint(
      {0.5, 0, 0}, {0, 0.5, 0},
      {0.55, 0.1, qjm::orthogonal_unit({0.5, 0, 0}, {0, 0.5, 0})});
  for (auto _ : state) {
    benchmark::DoNotOptimize(qjm::informational_completeness(g));
  }
}
BENCHMARK(BM_informational_completeness);

void BM_brute_force_jm(benchmark::State& state) {
  const auto pairs = make_pairs(16, 2);
  std::size_t i = 0;
  const int resolution = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const auto& [o1, o2] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(qjm::oracle::brute_force_jm(o1, o2, resolution));
  }
}
BENCHMARK(BM_brute_force_jm)->Arg(16)->Arg(32);

}  // namespace
