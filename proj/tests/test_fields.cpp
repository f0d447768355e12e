#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "trdf/fields.hpp"
#include "trdf/legendre.hpp"

using namespace trdf;

namespace {
constexpr double kFourPi = 12.56637061435917295385;

double spectrum_variance(const PowerSpectrum& s) {
  double v = 0.0;
  for (int l = 0; l <= s.l_max(); ++l) v += (2.0 * l + 1.0) / kFourPi * s[l];
  return v;
}
}  // namespace

TEST_CASE("power spectrum construction and validation") {
  const PowerSpectrum s = PowerSpectrum::power_law(2.0, 3.0, 10);
  CHECK(s.l_max() == 10);
  CHECK(s[0] == 2.0);
  CHECK(s[3] == doctest::Approx(2.0 * std::pow(4.0, -3.0)));
  PowerSpectrum bad;
  bad.c = {1.0, -0.5};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_THROWS_AS(PowerSpectrum{}.validate(), std::invalid_argument);

  // summability proxy for the default family: the tail contributes a
  // vanishing fraction of sum (2l+1) C_l once alpha > 2
  const PowerSpectrum big = PowerSpectrum::power_law(1.0, 3.0, 2000);
  double total = 0.0, last = 0.0;
  for (int l = 0; l <= big.l_max(); ++l) {
    last = (2.0 * l + 1.0) * big[l];
    total += last;
  }
  CHECK(last / total < 1e-6);
}

TEST_CASE("coefficient sampling laws") {
  PowerSpectrum zero;
  zero.c = {0.0, 0.0, 0.0};
  RngStream rng(3, 0);
  const HarmonicCoefficients z = sample_coefficients(zero, rng);
  for (int l = 0; l <= 2; ++l)
    for (int m = -l; m <= l; ++m) CHECK(std::abs(z.at(l, m)) == 0.0);

  // E|a_lm|^2 = C_l and cross-orthogonality, sampled
  PowerSpectrum spec;
  spec.c = {1.0, 0.7, 0.5, 2.0, 0.4};
  const long long n = 20000;
  double sum33 = 0.0, sum33sq = 0.0;
  std::complex<double> cross = 0.0;
  for (long long r = 0; r < n; ++r) {
    RngStream srng(5, static_cast<std::uint64_t>(r));
    const HarmonicCoefficients c = sample_coefficients(spec, srng);
    CHECK(c.max_symmetry_violation() == 0.0);  // exact by construction
    const double a2 = std::norm(c.at(3, 1));
    sum33 += a2;
    sum33sq += a2 * a2;
    cross += c.at(2, 1) * std::conj(c.at(4, 1));
  }
  const double mean = sum33 / n;
  const double se = std::sqrt((sum33sq / n - mean * mean) / n);
  CHECK(std::abs(mean - 2.0) < 3.5 * se);
  CHECK(std::abs(cross) / n < 3.5 * std::sqrt(spec[2] * spec[4] / n));
}

TEST_CASE("field evaluation") {
  PowerSpectrum spec;
  spec.c = {1.0};
  HarmonicCoefficients c(0);
  c.at(0, 0) = 2.5;
  CHECK(evaluate_field(c, {1.0, 2.0}) == doctest::Approx(2.5 / std::sqrt(kFourPi)));

  HarmonicCoefficients zero(3);
  CHECK(evaluate_field(zero, {0.5, 0.5}) == 0.0);

  // broken reality symmetry raises the consistency error
  HarmonicCoefficients badc(2);
  badc.at(2, 1) = {0.3, 0.4};
  badc.at(2, -1) = {10.0, 0.0};  // should be 0.3 + 0.4i times -1 conjugated
  CHECK_THROWS_AS(evaluate_field(badc, {1.3, 0.7}), ConsistencyError);

  // cross-check the accumulation against a naive double loop over harmonics
  RngStream rng(7, 0);
  const PowerSpectrum ps = PowerSpectrum::power_law(1.0, 3.0, 12);
  const HarmonicCoefficients coeffs = sample_coefficients(ps, rng);
  for (int i = 0; i < 10; ++i) {
    const SpherePoint x = random_uniform_point(rng);
    std::complex<double> naive = 0.0;
    for (int l = 0; l <= 12; ++l)
      for (int m = -l; m <= l; ++m)
        naive += coeffs.at(l, m) * spherical_harmonic({l, m}, x.theta, x.phi);
    CHECK(std::abs(naive.imag()) < 1e-12);
    CHECK(evaluate_field(coeffs, x) == doctest::Approx(naive.real()).epsilon(1e-11));
  }
}

TEST_CASE("field variance matches the spectrum") {
  const PowerSpectrum spec = PowerSpectrum::power_law(1.0, 3.0, 10);
  const SpherePoint x{1.234, 2.345};
  const long long n = 20000;
  double s = 0.0, s2 = 0.0;
  for (long long r = 0; r < n; ++r) {
    RngStream rng(11, static_cast<std::uint64_t>(r));
    const double v = evaluate_field(sample_coefficients(spec, rng), x);
    s += v;
    s2 += v * v;
  }
  const double var = s2 / n - (s / n) * (s / n);
  const double se = var * std::sqrt(2.0 / n);  // gaussian fourth-moment
  CHECK(std::abs(var - spectrum_variance(spec)) < 3.5 * se);
}

TEST_CASE("static covariance") {
  const PowerSpectrum spec = PowerSpectrum::power_law(1.0, 3.0, 16);
  const SpherePoint x{0.7, 0.2}, y{1.9, 4.4};
  CHECK(field_covariance_static(spec, x, x) ==
        doctest::Approx(spectrum_variance(spec)).epsilon(1e-13));
  PowerSpectrum mono;
  mono.c = {3.0};
  CHECK(field_covariance_static(mono, x, y) == doctest::Approx(3.0 / kFourPi));
}

TEST_CASE("time-changed field evaluation") {
  const PowerSpectrum spec = PowerSpectrum::power_law(1.0, 3.0, 8);
  RngStream rng(13, 0);
  const HarmonicCoefficients coeffs = sample_coefficients(spec, rng);
  StableParams sp;
  sp.nu = 0.6;
  sp.grid_dt = 1e-3;
  const SpherePoint x0{1.0, 1.0};
  const TrdPath path = simulate_trd(x0, 0.6, 0.0, {0.5, 1.0}, sp, 1e-3, rng);
  // at the start time the composition is the plain field at the start point
  CHECK(evaluate_time_changed_field(coeffs, path, 0.0) ==
        doctest::Approx(evaluate_field(coeffs, x0)));
  CHECK(evaluate_time_changed_field(coeffs, path, 1.0) ==
        doctest::Approx(evaluate_field(coeffs, path.points.back())));
  CHECK_THROWS_AS(evaluate_time_changed_field(coeffs, path, 0.7), std::invalid_argument);
}

TEST_CASE("covariance formulas: structure and pinned reductions") {
  const PowerSpectrum spec = PowerSpectrum::power_law(1.0, 3.0, 16);
  const SpherePoint x{1.0471975511965976, 0.8}, y{2.0943951023931953, 2.5};

  CovarianceQuery q{0.6, 0.0, 0.5, 0.5, x, x, spec, -1};
  // zero lag gives the field variance
  CovarianceQuery q0 = q;
  q0.t1 = q0.t2 = 0.0;
  CHECK(cov_same_point(q0) == doctest::Approx(spectrum_variance(spec)).epsilon(1e-13));

  // nu = 1 same-point covariance equals the markov lag form
  CovarianceQuery q1 = q;
  q1.nu = 1.0;
  CHECK(cov_same_point(q1) == doctest::Approx(cov_markov_lag(spec, 0.0, 0.5)).epsilon(1e-12));

  CovarianceQuery qbad = q;
  qbad.t1 = -0.1;
  CHECK_THROWS_AS(cov_same_point(qbad), std::invalid_argument);
  qbad = q;
  qbad.nu = 1.5;
  CHECK_THROWS_AS(cov_same_point(qbad), std::domain_error);

  // two-point: same point is rejected, and t1 = t2 = t0 reduces to the static form
  CovarianceQuery q2{0.6, 0.0, 0.0, 0.0, x, y, spec, -1};
  CHECK(cov_two_points(q2) ==
        doctest::Approx(field_covariance_static(spec, x, y)).epsilon(1e-12));
  CovarianceQuery qsame = q2;
  qsame.y = x;
  CHECK_THROWS_AS(cov_two_points(qsame), std::invalid_argument);
  PowerSpectrum mono;
  mono.c = {4.0};
  CovarianceQuery qm{0.5, 0.0, 0.3, 0.9, x, y, mono, -1};
  CHECK(cov_two_points(qm) == doctest::Approx(4.0 / kFourPi).epsilon(1e-14));

  // markov lag: zero lag gives variance; lag sum converges fast
  CHECK(cov_markov_lag(spec, 0.5, 0.5) ==
        doctest::Approx(spectrum_variance(spec)).epsilon(1e-13));
  CHECK_THROWS_AS(cov_markov_lag(spec, 1.0, 0.5), std::invalid_argument);
  double partial = 0.0;
  PowerSpectrum centered = spec;
  centered.c[0] = 0.0;
  for (int h = 1; h <= 20; ++h) partial += cov_markov_lag(centered, 0.0, h);
  double tail = 0.0;
  for (int h = 21; h <= 40; ++h) tail += cov_markov_lag(centered, 0.0, h);
  CHECK(tail < 1e-10);
  CHECK(partial > 0.0);
}

TEST_CASE("frequency components sum to the two-point covariance") {
  const PowerSpectrum spec = PowerSpectrum::power_law(1.0, 3.0, 12);
  const SpherePoint x{1.1, 0.3}, y{1.4, 2.0};
  const double nu = 0.7, t0 = 0.0, t1 = 0.4, t2 = 0.9;
  double sum = 0.0;
  for (int l = 0; l <= 12; ++l) sum += frequency_component_cov(l, nu, t0, t1, t2, x, y, spec);
  CovarianceQuery q{nu, t0, t1, t2, x, y, spec, -1};
  CHECK(sum == doctest::Approx(cov_two_points(q)).epsilon(1e-12));
}

TEST_CASE("running-time covariance integral form") {
  PowerSpectrum single;
  single.c = {0.0, 1.0};  // isolate mu = 2
  const double pref = 3.0 / kFourPi;

  // frozen values from the independent overshoot-law oracle
  CHECK(cov_fractional_lag_integral(single, 0.6, 0.5, 1.0) / pref ==
        doctest::Approx(0.629976).epsilon(2e-6));
  CHECK(cov_fractional_lag_integral(single, 0.4, 0.5, 1.5) / pref ==
        doctest::Approx(0.665672).epsilon(2e-6));

  // T1 = T2 collapses to the variance
  CHECK(cov_fractional_lag_integral(single, 0.6, 1.0, 1.0) / pref ==
        doctest::Approx(1.0).epsilon(1e-7));

  // exponential reduction at nu = 1
  for (double T1 : {0.25, 0.5}) {
    CHECK(std::abs(cov_fractional_lag_integral(single, 1.0, T1, 1.0) / pref -
                   std::exp(-2.0 * (1.0 - T1))) < 1e-8);
  }

  // long-horizon tail constant
  const double scaled = cov_fractional_lag_integral(single, 0.5, 0.5, 1e3) / pref * std::pow(1e3, 0.5) *
                        std::tgamma(0.5);
  CHECK(std::abs(scaled / (0.5 + std::pow(0.5, 0.5) / std::tgamma(1.5)) - 1.0) < 0.05);

  CHECK_THROWS_AS(cov_fractional_lag_integral(single, 0.6, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(cov_fractional_lag_integral(single, 0.6, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("equilibrium diffusion covariance") {
  CHECK(trd_equilibrium_cov(0.7, 0.0) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(trd_equilibrium_cov(0.7, -1.0), std::domain_error);

  double sum = 0.0;
  for (int h = 1; h <= 60; ++h) sum += trd_equilibrium_cov(1.0, h);
  CHECK(sum == doctest::Approx((1.0 / 3.0) / (std::exp(2.0) - 1.0)).epsilon(1e-9));

  // heavy-tail scaling at nu = 1/2
  const double v = trd_equilibrium_cov(0.5, 1e4) * std::pow(1e4, 0.5);
  CHECK(std::abs(v - (1.0 / 3.0) / (2.0 * std::tgamma(0.5))) / v < 0.05);
}

TEST_CASE("sobolev sums") {
  auto delta = [](int l) { return l == 0 ? 1.0 : 0.0; };
  for (double s : {0.0, 1.0, 3.5}) {
    const SobolevSum r = sobolev_norm(delta, s, 200);
    CHECK(r.partial_sum == doctest::Approx(1.0));
    CHECK(r.converged);
  }

  const double s = 1.25;
  auto convergent = [s](int l) { return std::pow(2.0 * l + 1.0, -2.0 * s - 2.0); };
  const SobolevSum c = sobolev_norm(convergent, s, 10000);
  // terms are (2l+1)^{-2}; the full sum is pi^2/8
  CHECK(c.converged);
  CHECK(std::abs(c.partial_sum + c.tail_estimate - 1.2337005501361697) /
            1.2337005501361697 <
        1e-4);

  auto divergent = [s](int l) { return std::pow(2.0 * l + 1.0, -2.0 * s); };
  CHECK_FALSE(sobolev_norm(divergent, s, 5000).converged);

  CHECK_THROWS_AS(sobolev_norm(delta, -1.0, 100), std::domain_error);
}
