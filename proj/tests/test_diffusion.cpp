#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "trdf/diffusion.hpp"
#include "trdf/legendre.hpp"
#include "trdf/mittag_leffler.hpp"
#include "trdf/sphere.hpp"

using namespace trdf;
using trdf_test::ks_two_sample;
using trdf_test::ml_series_quad;

namespace {
constexpr double kFourPi = 12.56637061435917295385;
}

TEST_CASE("sphere brownian motion basics") {
  RngStream rng(3, 0);
  const SpherePoint x0{1.2, 0.4};
  const auto pts = simulate_sphere_bm(x0, {0.0, 0.1, 0.2}, 1e-3, rng);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0].theta == x0.theta);  // t = 0 is the start point, exactly
  CHECK(pts[0].phi == x0.phi);
  CHECK_THROWS_AS(simulate_sphere_bm(x0, {0.1}, 0.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(simulate_sphere_bm(x0, {0.2, 0.1}, 1e-3, rng), std::invalid_argument);
}

TEST_CASE("sphere brownian motion degree-one decay") {
  // E[cos theta_t] from the north pole is exp(-2t) + O(dt).
  const long long n = 20000;
  const double t = 0.5;
  double sum = 0.0;
  for (long long p = 0; p < n; ++p) {
    RngStream rng(5, static_cast<std::uint64_t>(p));
    sum += std::cos(simulate_sphere_bm(SpherePoint::north_pole(), {t}, 1e-3, rng)[0].theta);
  }
  const double mean = sum / n;
  const double se = std::sqrt((1.0 - std::exp(-4.0 * t)) / (2.0 * n)) + 1e-3;  // variance bound
  CHECK(std::abs(mean - std::exp(-2.0 * t)) < 3.5 * se + 2e-3 /* dt bias allowance */);
}

TEST_CASE("trd composition") {
  StableParams sp;
  sp.nu = 0.5;
  sp.grid_dt = 1e-3;
  RngStream rng(7, 0);
  const SpherePoint x0{0.8, 2.0};

  CHECK_THROWS_AS(simulate_trd(x0, 1.5, 0.0, {1.0}, sp, 1e-3, rng), std::domain_error);
  CHECK_THROWS_AS(simulate_trd(x0, 0.5, 1.0, {0.5}, sp, 1e-3, rng), std::invalid_argument);
  CHECK_THROWS_AS(simulate_trd(x0, 0.5, 0.0, {0.5, 0.5}, sp, 1e-3, rng), std::invalid_argument);

  const TrdPath path = simulate_trd(x0, 0.5, 0.25, {0.5, 1.0, 1.5}, sp, 1e-3, rng);
  REQUIRE(path.t_grid.size() == 4);  // t0 prepended
  CHECK(path.t_grid[0] == 0.25);
  CHECK(path.points[0].theta == x0.theta);
  CHECK(path.points[0].phi == x0.phi);
  CHECK(path.nu == 0.5);

  // flat subordinator stretches pin the diffusion in place, bit-for-bit
  std::vector<double> grid;
  for (double t = 0.01; t <= 2.0001; t += 0.01) grid.push_back(t);
  long long flat = 0, total = 0;
  for (int p = 0; p < 30; ++p) {
    RngStream prng(11, static_cast<std::uint64_t>(p));
    const TrdPath tp = simulate_trd(x0, 0.5, 0.0, grid, sp, 1e-3, prng);
    for (std::size_t i = 2; i < tp.points.size(); ++i) {
      if (tp.points[i].theta == tp.points[i - 1].theta &&
          tp.points[i].phi == tp.points[i - 1].phi)
        ++flat;
      ++total;
    }
  }
  CHECK(static_cast<double>(flat) / static_cast<double>(total) > 0.10);
}

TEST_CASE("trd at nu = 1 is plain sphere brownian motion (two-sample KS)") {
  StableParams sp;
  sp.nu = 0.5;  // unused at nu = 1
  sp.grid_dt = 1e-3;
  const long long n = 10000;
  std::vector<double> trd_cos(n), bm_cos(n);
  for (long long p = 0; p < n; ++p) {
    RngStream a(13, static_cast<std::uint64_t>(p));
    trd_cos[p] =
        std::cos(simulate_trd(SpherePoint::north_pole(), 1.0, 0.0, {1.0}, sp, 1e-3, a)
                     .points.back()
                     .theta);
    RngStream b(17, static_cast<std::uint64_t>(p));
    bm_cos[p] = std::cos(simulate_sphere_bm(SpherePoint::north_pole(), {1.0}, 1e-3, b)[0].theta);
  }
  CHECK(ks_two_sample(trd_cos, bm_cos) < 1.628 * std::sqrt(2.0 / n));  // 1% level
}

TEST_CASE("mean harmonic decay along the trd (degree one)") {
  // E Y_10(X_t) = E_nu(-2 t^nu) Y_10(x0)
  const double nu = 0.6, t = 1.0;
  const SpherePoint x0{1.1, 0.0};
  StableParams sp;
  sp.nu = nu;
  sp.grid_dt = 1e-3;
  const long long n = 20000;
  double sum = 0.0;
  for (long long p = 0; p < n; ++p) {
    RngStream rng(19, static_cast<std::uint64_t>(p));
    const TrdPath path = simulate_trd(x0, nu, 0.0, {t}, sp, 1e-3, rng);
    sum += spherical_harmonic({1, 0}, path.points.back().theta, path.points.back().phi).real();
  }
  const double mc = sum / n;
  const double expect = mittag_leffler(nu, -2.0) *
                        spherical_harmonic({1, 0}, x0.theta, x0.phi).real();
  const double se = std::sqrt(3.0 / kFourPi / n);
  CHECK(std::abs(mc - expect) < 3.5 * se + 3e-3);
}

TEST_CASE("transition density series") {
  DensityParams dp;
  dp.nu = 0.7;
  dp.l_max = 60;
  const SpherePoint x0{0.9, 1.7};

  CHECK_THROWS_AS(transition_density(x0, 0.0, x0, dp), std::domain_error);
  DensityParams bad = dp;
  bad.r_coeffs = {0.5, 1.0};
  CHECK_THROWS_AS(transition_density(x0, 1.0, x0, bad), std::domain_error);

  // integrates to one by quadrature exact past the truncation degree
  const QuadratureGrid grid = build_quadrature(64, 129);
  double integral = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k)
    integral += grid.weights[k] * transition_density(grid.nodes[k], 0.3, x0, dp);
  CHECK(std::abs(integral - 1.0) < 1e-8);

  // nu = 1 at long times settles to the uniform density
  DensityParams markov;
  markov.nu = 1.0;
  markov.l_max = 40;
  double worst = 0.0;
  for (const SpherePoint& node : grid.nodes)
    worst = std::max(worst,
                     std::abs(transition_density(node, 30.0, x0, markov) - 1.0 / kFourPi));
  CHECK(worst < 1e-10);

  // nu = 1, moderate times: two-term truncation bounds the remainder by the
  // l = 2 eigenvalue decay
  for (double dt : {1.0, 1.5}) {
    for (const SpherePoint& node : {SpherePoint{0.3, 0.1}, SpherePoint{2.2, 4.0}}) {
      const double u = transition_density(node, dp.t0 + dt, x0, markov);
      const double two_term =
          (1.0 + 3.0 * std::exp(-2.0 * dt) * legendre_p(1, inner_product(node, x0))) / kFourPi;
      CHECK(std::abs(u - two_term) < std::exp(-6.0 * dt) * 5.0 / kFourPi);
    }
  }
}

TEST_CASE("density series terms agree with the quad-precision oracle") {
  // first few eigen-decay factors straight from the series oracle
  const double nu = 0.7, dt = 0.3;
  const auto decay = eigen_decay_sequence(nu, dt, 3);
  for (int l = 0; l <= 3; ++l) {
    const double x = l * (l + 1) * std::pow(dt, nu);
    CHECK(decay[l] == doctest::Approx(ml_series_quad(nu, x)).epsilon(1e-10));
  }
}

TEST_CASE("automatic truncation selection") {
  // markov case truncates quickly
  const int l1 = select_density_l_max(1.0, 0.5, 1.0);
  CHECK(l1 < 30);
  CHECK(density_tail_estimate(1.0, 0.5, 1.0, l1) < 1e-8);
  // heavy-tail case saturates the cap instead of pretending to converge
  CHECK(select_density_l_max(0.6, 0.5, 1.0) == 2000);
  // near the start the truncation rule refuses point initial data
  CHECK_THROWS_AS(select_density_l_max(0.6, 1e-4, 1.0), std::domain_error);
}

TEST_CASE("solution angular power spectrum") {
  DensityParams dp;
  dp.nu = 0.8;
  const double a0 = 0.37;
  CHECK(solution_angular_spectrum(2, 1e-9, dp, a0) == doctest::Approx(a0).epsilon(1e-6));
  CHECK_THROWS_AS(solution_angular_spectrum(2, 0.0, dp, a0), std::domain_error);

  // nonincreasing in t and bounded by the initial power
  double prev = a0;
  for (double t : {0.1, 0.5, 1.0, 5.0}) {
    const double v = solution_angular_spectrum(2, t, dp, a0);
    CHECK(v <= prev * (1.0 + 1e-12));
    CHECK(v <= a0);
    prev = v;
  }

  // nu = 1 reduction
  DensityParams m;
  m.nu = 1.0;
  CHECK(solution_angular_spectrum(3, 0.7, m, a0) ==
        doctest::Approx(std::exp(-2.0 * 12.0 * 0.7) * a0).epsilon(1e-12));

  // high-degree power tail: value * l^4 -> (dt^-nu / Gamma(1-nu))^2 * A_l
  const int l = 200;
  const double dt = 0.5;
  const double v = solution_angular_spectrum(l, dp.t0 + dt, dp, a0);
  const double target = std::pow(std::pow(dt, -dp.nu) / std::tgamma(1.0 - dp.nu), 2.0) * a0;
  CHECK(std::abs(v * std::pow(static_cast<double>(l) * (l + 1), 2.0) / target - 1.0) < 0.05);
}

TEST_CASE("chapman-kolmogorov composition defect") {
  DensityParams dp;
  dp.l_max = 40;
  const SpherePoint x0{1.3, 0.4}, x2{2.0, 2.2};

  CHECK_THROWS_AS(chapman_kolmogorov_defect(1.0, 0.5, 0.5, 1.0, x0, x2, dp),
                  std::invalid_argument);

  // the semigroup case composes exactly
  CHECK(std::abs(chapman_kolmogorov_defect(1.0, 0.0, 0.5, 1.0, x0, x2, dp)) < 1e-10);

  // fractional case fails to compose; compare the leading terms against the
  // quad-precision series oracle
  const double d = chapman_kolmogorov_defect(0.6, 0.0, 0.5, 1.0, x0, x0, dp);
  CHECK(d > 1e-3);
  DensityParams low = dp;
  low.l_max = 3;
  const double d3 = chapman_kolmogorov_defect(0.6, 0.0, 0.5, 1.0, x0, x0, low);
  double oracle = 0.0;
  for (int l = 0; l <= 3; ++l) {
    const double mu = l * (l + 1);
    const double e20 = ml_series_quad(0.6, mu * std::pow(1.0, 0.6));
    const double e21 = ml_series_quad(0.6, mu * std::pow(0.5, 0.6));
    const double e10 = e21;
    oracle += (2.0 * l + 1.0) / kFourPi * (e20 - e21 * e10);
  }
  CHECK(d3 == doctest::Approx(oracle).epsilon(1e-9));

  // scaling a single R_l breaks the identity even in the markov case
  DensityParams scaled = dp;
  scaled.r_coeffs = {1.0, 0.5};
  CHECK(std::abs(chapman_kolmogorov_defect(1.0, 0.0, 0.5, 1.0, x0, x2, scaled)) > 1e-4);
}

TEST_CASE("trd marginal law matches the density series (KS)") {
  for (double nu : {0.6, 1.0}) {
    const double t1 = 0.6;
    const int L = 60;
    const auto decay = eigen_decay_sequence(nu, t1, L);
    auto cdf = [&](double c) {
      const auto p = legendre_p_sequence(L + 1, c);
      double f = 0.5 * (c + 1.0);
      for (int l = 1; l <= L; ++l) f += 0.5 * decay[l] * (p[l - 1] - p[l + 1]);
      return f;
    };
    const long long n = 5000;
    std::vector<double> sim(n), exact(n);
    StableParams sp;
    sp.nu = (nu < 1.0) ? nu : 0.5;
    sp.grid_dt = 1e-3;
    for (long long p = 0; p < n; ++p) {
      RngStream rng(23, static_cast<std::uint64_t>(p));
      sim[p] = std::cos(
          simulate_trd(SpherePoint::north_pole(), nu, 0.0, {t1}, sp, 1e-3, rng).points.back()
              .theta);
    }
    RngStream urng(29, 0);
    for (long long p = 0; p < n; ++p) {
      const double u = urng.uniform();
      double lo = -1.0, hi = 1.0;
      for (int it = 0; it < 50; ++it) (cdf(0.5 * (lo + hi)) < u ? lo : hi) = 0.5 * (lo + hi);
      exact[p] = 0.5 * (lo + hi);
    }
    CAPTURE(nu);
    CHECK(ks_two_sample(sim, exact) < 1.628 * std::sqrt(2.0 / n) + 0.01);
  }
}
