#include <benchmark/benchmark.h>

#include <cmath>

#include "trdf/legendre.hpp"
#include "trdf/mittag_leffler.hpp"
#include "trdf/wigner.hpp"

namespace {

void BM_MittagLefflerTaylor(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(trdf::mittag_leffler(0.6, -1.5));
}
BENCHMARK(BM_MittagLefflerTaylor);

void BM_MittagLefflerIntegral(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(trdf::mittag_leffler(0.6, -5.0));
}
BENCHMARK(BM_MittagLefflerIntegral);

void BM_MittagLefflerAsymptotic(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(trdf::mittag_leffler(0.6, -200.0));
}
BENCHMARK(BM_MittagLefflerAsymptotic);

void BM_AssocLegendreTable(benchmark::State& state) {
  const int l_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(trdf::assoc_legendre_table(l_max, 0.37));
}
BENCHMARK(BM_AssocLegendreTable)->Arg(20)->Arg(60)->Arg(200);

void BM_SphericalHarmonic(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(trdf::spherical_harmonic({10, 4}, 1.1, 2.2));
}
BENCHMARK(BM_SphericalHarmonic);

void BM_Wigner3j(benchmark::State& state) {
  const int l = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(trdf::wigner_3j(l, l, l, 2, -1, -1));
}
BENCHMARK(BM_Wigner3j)->Arg(4)->Arg(20)->Arg(80);

}  // namespace
