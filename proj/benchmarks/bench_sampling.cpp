#include <benchmark/benchmark.h>

#include "trdf/diffusion.hpp"
#include "trdf/rng.hpp"
#include "trdf/sphere.hpp"
#include "trdf/subordinator.hpp"

namespace {

void BM_RngUniform(benchmark::State& state) {
  trdf::RngStream rng(1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(rng.uniform());
}
BENCHMARK(BM_RngUniform);

void BM_RngNormal(benchmark::State& state) {
  trdf::RngStream rng(1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(rng.normal());
}
BENCHMARK(BM_RngNormal);

void BM_StableIncrement(benchmark::State& state) {
  trdf::RngStream rng(1, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(trdf::sample_stable_increment(0.6, 1e-3, rng));
}
BENCHMARK(BM_StableIncrement);

void BM_InverseMarginal(benchmark::State& state) {
  trdf::RngStream rng(1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(trdf::sample_inverse_marginal(0.6, 1.0, rng));
}
BENCHMARK(BM_InverseMarginal);

void BM_GeodesicStep(benchmark::State& state) {
  trdf::SpherePoint p{1.1, 0.3};
  trdf::RngStream rng(1, 2);
  for (auto _ : state) {
    p = trdf::geodesic_step(p, rng.normal(0.0, 0.04), rng.normal(0.0, 0.04));
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_GeodesicStep);

void BM_BrownianPath(benchmark::State& state) {
  trdf::RngStream rng(1, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        trdf::simulate_sphere_bm(trdf::SpherePoint::north_pole(), {1.0}, 1e-3, rng));
  }
}
BENCHMARK(BM_BrownianPath);

void BM_TrdPath(benchmark::State& state) {
  trdf::RngStream rng(1, 2);
  trdf::StableParams sp;
  sp.nu = 0.6;
  sp.grid_dt = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        trdf::simulate_trd({1.1, 0.3}, 0.6, 0.0, {0.5, 1.0}, sp, 1e-3, rng));
  }
}
BENCHMARK(BM_TrdPath);

}  // namespace
