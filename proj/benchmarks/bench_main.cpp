#include <benchmark/benchmark.h>

#include <random>

#include "filament/edt.hpp"
#include "filament/extract.hpp"
#include "filament/sampler.hpp"
#include "filament/support.hpp"

namespace {

using namespace filament;

std::vector<Point2> circle_sample(std::size_t n) {
  SamplerConfig c;
  c.curves = {build_curve({"circle", {{"r", 1.0}}, {}, false, 512})};
  c.noise = {0.2, 0.0};
  c.n = n;
  c.seed = 1;
  return sample(c).points;
}

void BM_Boundary(benchmark::State& state) {
  const auto pts = circle_sample(state.range(0));
  const double eps = nn_max_epsilon(pts);
  for (auto _ : state) benchmark::DoNotOptimize(SupportEstimate::build(pts, eps));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Boundary)->RangeMultiplier(4)->Range(500, 32000)->Unit(benchmark::kMillisecond)->Complexity();

void BM_DistanceToBoundary(benchmark::State& state) {
  const auto pts = circle_sample(state.range(0));
  const auto s = SupportEstimate::build(pts, nn_max_epsilon(pts));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  std::vector<Point2> q(1024);
  for (auto& p : q) p = {u(rng), u(rng)};
  for (auto _ : state) {
    for (Point2 p : q) benchmark::DoNotOptimize(s->distance_to_boundary(p));
  }
  state.SetItemsProcessed(state.iterations() * q.size());
}
BENCHMARK(BM_DistanceToBoundary)->Arg(2000)->Arg(32000);

void BM_EdtRegion(benchmark::State& state) {
  const auto pts = circle_sample(state.range(0));
  const auto s = SupportEstimate::build(pts, nn_max_epsilon(pts));
  for (auto _ : state) benchmark::DoNotOptimize(edt_region(s));
}
BENCHMARK(BM_EdtRegion)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_Extract(benchmark::State& state) {
  const auto pts = circle_sample(state.range(0));
  const auto s = SupportEstimate::build(pts, nn_max_epsilon(pts));
  const auto region = region_view(edt_region(s));
  ExtractOptions opt;
  opt.mode = ExtractMode::closed;
  for (auto _ : state) benchmark::DoNotOptimize(extract_curve(region, opt));
}
BENCHMARK(BM_Extract)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
