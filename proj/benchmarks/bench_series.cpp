#include <benchmark/benchmark.h>

#include "trdf/diffusion.hpp"
#include "trdf/estimate.hpp"
#include "trdf/fields.hpp"

namespace {

void BM_EigenDecaySequence(benchmark::State& state) {
  const int l_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(trdf::eigen_decay_sequence(0.6, 0.5, l_max));
}
BENCHMARK(BM_EigenDecaySequence)->Arg(20)->Arg(80)->Arg(400);

void BM_TransitionDensity(benchmark::State& state) {
  trdf::DensityParams dp;
  dp.nu = 0.7;
  dp.l_max = static_cast<int>(state.range(0));
  const trdf::SpherePoint x{1.2, 0.4}, x0{0.8, 1.9};
  for (auto _ : state) benchmark::DoNotOptimize(trdf::transition_density(x, 0.5, x0, dp));
}
BENCHMARK(BM_TransitionDensity)->Arg(40)->Arg(80);

void BM_CovSamePoint(benchmark::State& state) {
  trdf::CovarianceQuery q;
  q.nu = 0.6;
  q.t1 = q.t2 = 0.5;
  q.spectrum = trdf::PowerSpectrum::power_law(1.0, 3.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(trdf::cov_same_point(q));
}
BENCHMARK(BM_CovSamePoint)->Arg(20)->Arg(80);

void BM_CovFracLagIntegral(benchmark::State& state) {
  const auto spec = trdf::PowerSpectrum::power_law(1.0, 3.0, 20);
  for (auto _ : state)
    benchmark::DoNotOptimize(trdf::cov_fractional_lag_integral(spec, 0.6, 0.5, 1.0));
}
BENCHMARK(BM_CovFracLagIntegral);

void BM_FieldEvaluate(benchmark::State& state) {
  trdf::RngStream rng(1, 2);
  const auto spec = trdf::PowerSpectrum::power_law(1.0, 3.0, static_cast<int>(state.range(0)));
  const auto coeffs = trdf::sample_coefficients(spec, rng);
  const trdf::SpherePoint x{1.2, 0.4};
  for (auto _ : state) benchmark::DoNotOptimize(trdf::evaluate_field(coeffs, x));
}
BENCHMARK(BM_FieldEvaluate)->Arg(20)->Arg(60);

void BM_SampleCoefficients(benchmark::State& state) {
  trdf::RngStream rng(1, 2);
  const auto spec = trdf::PowerSpectrum::power_law(1.0, 3.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(trdf::sample_coefficients(spec, rng));
}
BENCHMARK(BM_SampleCoefficients)->Arg(20)->Arg(60);

}  // namespace
