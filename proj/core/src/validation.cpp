#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <complex>
#include <stdexcept>

#include "trdf/diffusion.hpp"
#include "trdf/estimate.hpp"
#include "trdf/fields.hpp"
#include "trdf/fracderiv.hpp"
#include "trdf/legendre.hpp"
#include "trdf/mittag_leffler.hpp"
#include "trdf/sphere.hpp"
#include "trdf/subordinator.hpp"
#include "trdf/wigner.hpp"

namespace trdf {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kFourPi = 12.56637061435917295385;

// Disjoint stream-id blocks per check, so checks never share random draws.
constexpr std::uint64_t stream_block(std::uint64_t k) { return k << 32; }

struct SuiteContext {
  std::uint64_t seed = 0;
  double scale = 1.0;  // replication multiplier from the budget
  int workers = 1;
  std::vector<ValidationCheck>* checks = nullptr;

  void add(const std::string& name, double estimate, double analytic, double tolerance) const {
    checks->push_back(
        {name, estimate, analytic, tolerance, std::abs(estimate - analytic) <= tolerance});
  }

  long long n(long long base, long long floor_n = 2000) const {
    return std::max(floor_n, static_cast<long long>(static_cast<double>(base) * scale));
  }
};

// ---------------------------------------------------------------------------
// specfun

void suite_specfun(const SuiteContext& ctx) {
  {
    double worst = 0.0;
    for (double nu = 0.1; nu <= 1.0001; nu += 0.1)
      worst = std::max(worst, std::abs(mittag_leffler(std::min(nu, 1.0), 0.0) - 1.0));
    ctx.add("ml-at-zero", worst, 0.0, 0.0);
  }
  {
    double worst = 0.0;
    for (double x = 0.0; x <= 20.0; x += 0.02)
      worst = std::max(worst, std::abs(mittag_leffler(1.0, -x) - std::exp(-x)));
    ctx.add("ml-exp-reduction", worst, 0.0, 1e-10);
  }
  {
    RngStream rng(ctx.seed, stream_block(101));
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double nu = rng.uniform(0.02, 0.999);
      const double x = rng.uniform(0.0, 50.0);
      const double xa = std::pow(x, nu);
      const double e = mittag_leffler(nu, -xa);
      worst = std::max({worst, -e, e - 1.0 / (1.0 + xa)});
    }
    ctx.add("ml-complete-monotone-bound", worst, 0.0, 1e-12);
  }
  {
    // deviation bounded by the second expansion term (with a 0.02 floor)
    double worst = 0.0;
    for (double nu : {0.3, 0.5, 0.8}) {
      const double x = 1e3;
      const double xa = std::pow(x, nu);
      const double e = mittag_leffler(nu, -xa);
      const double second =
          (nu == 0.5) ? 0.0
                      : std::tgamma(1.0 - nu) / (xa * std::abs(std::tgamma(1.0 - 2.0 * nu)));
      worst = std::max(worst, std::abs(e * xa * std::tgamma(1.0 - nu) - 1.0) -
                                  std::max(0.0, 1.5 * second - 0.02));
    }
    ctx.add("ml-tail-asymptotic", worst, 0.0, 0.02);
  }
  {
    double worst = 0.0;
    for (double nu = 0.15; nu <= 0.96; nu += 0.1) {
      for (double seam : {std::min(5.0, std::pow(8.0, nu)), std::pow(28.0, nu)}) {
        const double lo = mittag_leffler(nu, -seam * (1.0 - 1e-9));
        const double hi = mittag_leffler(nu, -seam * (1.0 + 1e-9));
        worst = std::max(worst, std::abs(lo - hi));
      }
    }
    ctx.add("ml-seam-continuity", worst, 0.0, 1e-9);
  }
  {
    double worst = 0.0;
    for (double nu : {0.4, 0.7})
      for (double mu : {2.0, 6.0}) {
        const double t = 1.0;
        auto f = [=](double s) { return mittag_leffler(nu, -mu * std::pow(s, nu)); };
        const double d = caputo_derivative_numeric(f, nu, t);
        worst = std::max(worst, std::abs(d + mu * f(t)));
      }
    ctx.add("caputo-eigenfunction", worst, 0.0, 5e-4);
  }
  {
    auto f = [](double s) { return s; };
    const double d = caputo_derivative_numeric(f, 0.5, 1.0);
    ctx.add("caputo-linear", d, 2.0 / std::sqrt(kPi), 1e-8);
  }
  {
    // Riemann-Liouville of E_nu(-t^nu) equals t^{-nu}/Gamma(1-nu) - E_nu(-t^nu).
    const double nu = 0.5, t = 1.0;
    auto f = [=](double s) { return mittag_leffler(nu, -std::pow(s, nu)); };
    const double rl = riemann_liouville_from_caputo(caputo_derivative_numeric(f, nu, t), 1.0, nu, t);
    const double expected = std::pow(t, -nu) / std::tgamma(1.0 - nu) - f(t);
    ctx.add("rl-eigen-identity", rl, expected, 5e-4);
  }
  {
    RngStream rng(ctx.seed, stream_block(102));
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const SpherePoint p = random_uniform_point(rng);
      for (int l = 0; l <= 10; ++l)
        for (int m = -l; m <= l; ++m) {
          const auto y = spherical_harmonic({l, m}, p.theta, p.phi);
          const auto ym = spherical_harmonic({l, -m}, p.theta, p.phi);
          const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
          worst = std::max(worst, std::abs(std::conj(y) - sgn * ym));
        }
    }
    ctx.add("harmonic-conjugation", worst, 0.0, 1e-12);
  }
  {
    RngStream rng(ctx.seed, stream_block(103));
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const SpherePoint a = random_uniform_point(rng);
      const SpherePoint b = random_uniform_point(rng);
      const double ip = inner_product(a, b);
      for (int l = 0; l <= 10; ++l) {
        std::complex<double> s = 0.0;
        for (int m = -l; m <= l; ++m)
          s += spherical_harmonic({l, m}, a.theta, a.phi) *
               std::conj(spherical_harmonic({l, m}, b.theta, b.phi));
        worst = std::max(worst,
                         std::abs(s - (2.0 * l + 1.0) / kFourPi * legendre_p(l, ip)));
      }
    }
    ctx.add("harmonic-addition-theorem", worst, 0.0, 1e-10);
  }
  {
    ctx.add("legendre-p2", legendre_p(2, 0.5), -0.125, 1e-15);
    const double x = 0.37;
    ctx.add("legendre-p3", legendre_p(3, x), 0.5 * (5.0 * x * x * x - 3.0 * x), 1e-15);
  }
}

// ---------------------------------------------------------------------------
// wigner

void suite_wigner(const SuiteContext& ctx) {
  ctx.add("w3j-112", wigner_3j(1, 1, 2, 0, 0, 0), std::sqrt(2.0 / 15.0), 1e-14);
  ctx.add("w3j-330", wigner_3j(3, 3, 0, 1, -1, 0), 1.0 / std::sqrt(7.0), 1e-14);
  ctx.add("w3j-parity-zero", wigner_3j(1, 1, 1, 0, 0, 0), 0.0, 0.0);

  {
    double worst = 0.0;
    for (int l1 = 0; l1 <= 6; ++l1)
      for (int l2 = 0; l2 <= 6; ++l2)
        for (int l3 = std::abs(l1 - l2); l3 <= std::min(6, l1 + l2); ++l3)
          for (int m1 = -l1; m1 <= l1; ++m1)
            for (int m2 = -l2; m2 <= l2; ++m2) {
              const int m3 = -m1 - m2;
              if (std::abs(m3) > l3) continue;
              const double a = wigner_3j(l1, l2, l3, m1, m2, m3);
              const double sgn = ((l1 + l2 + l3) % 2 == 0) ? 1.0 : -1.0;
              worst = std::max(
                  {worst, std::abs(a - sgn * wigner_3j(l1, l2, l3, -m1, -m2, -m3)),
                   std::abs(a - wigner_3j(l2, l3, l1, m2, m3, m1)),
                   std::abs(a - wigner_3j(l3, l1, l2, m3, m1, m2))});
            }
    ctx.add("w3j-parity-and-cyclic", worst, 0.0, 1e-12);
  }
  {
    double worst = 0.0;
    const int l1 = 2, l2 = 3;
    for (int L = std::abs(l1 - l2); L <= l1 + l2; ++L)
      for (int X = std::abs(l1 - l2); X <= l1 + l2; ++X)
        for (int M = -1; M <= 1; ++M) {
          const double s = orthogonality_sum(OrthKind::orth1, {l1, l2, L, M, X, M});
          const double expect = (L == X) ? 1.0 / (2.0 * L + 1.0) : 0.0;
          worst = std::max(worst, std::abs(s - expect));
        }
    ctx.add("w3j-orth1", worst, 0.0, 1e-12);
  }
  {
    double worst = 0.0;
    for (int l : {1, 2, 4})
      for (int gamma = 0; gamma <= 4; ++gamma)
        for (int kappa = -gamma; kappa <= gamma; ++kappa) {
          const double s = orthogonality_sum(OrthKind::orth2, {l, gamma, kappa});
          const double expect = (gamma == 0 && kappa == 0) ? std::sqrt(2.0 * l + 1.0) : 0.0;
          worst = std::max(worst, std::abs(s - expect));
        }
    ctx.add("w3j-orth2", worst, 0.0, 1e-12);
  }
  {
    double worst = 0.0;
    for (int l1 = 1; l1 <= 4; ++l1)
      for (int l2 = 1; l2 <= 4; ++l2)
        for (int m1 = -l1; m1 <= l1; ++m1)
          for (int m2 = -l2; m2 <= l2; ++m2) {
            const double diag = orthogonality_sum(OrthKind::orth3, {l1, l2, m1, m2, m1, m2});
            worst = std::max(worst, std::abs(diag - 1.0));
            const int M1 = m1 + 1, M2 = m2 - 1;
            if (std::abs(M1) <= l1 && std::abs(M2) <= l2) {
              const double off = orthogonality_sum(OrthKind::orth3, {l1, l2, m1, m2, M1, M2});
              worst = std::max(worst, std::abs(off));
            }
          }
    ctx.add("w3j-orth3", worst, 0.0, 1e-12);
  }
  {
    double worst = 0.0;
    for (auto [a, b, c] : {std::array<int, 3>{1, 1, 2}, {2, 3, 4}, {5, 5, 6}})
      worst = std::max(worst, std::abs(orthogonality_sum(OrthKind::orth4, {a, b, c}) - 1.0));
    ctx.add("w3j-orth4", worst, 0.0, 1e-12);
  }
  {
    // Triple-product integrals against direct quadrature, l <= 3.
    const QuadratureGrid grid = build_quadrature(12, 25);
    const int L = 3;
    std::vector<std::vector<std::complex<double>>> y(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
      y[k].resize(plm_offset(L, L) + 1 + static_cast<std::size_t>(L) * (L + 1) + L + 1);
      // store full (l,m) with index l(l+1)+m
      y[k].assign(static_cast<std::size_t>(L + 1) * (L + 1), 0.0);
      for (int l = 0; l <= L; ++l)
        for (int m = -l; m <= l; ++m)
          y[k][static_cast<std::size_t>(l) * (l + 1) + m] =
              spherical_harmonic({l, m}, grid.nodes[k].theta, grid.nodes[k].phi);
    }
    auto yat = [&](std::size_t k, int l, int m) {
      return y[k][static_cast<std::size_t>(l) * (l + 1) + m];
    };
    double worst = 0.0;
    for (int l1 = 0; l1 <= L; ++l1)
      for (int l2 = 0; l2 <= L; ++l2)
        for (int l3 = 0; l3 <= L; ++l3)
          for (int m1 = -l1; m1 <= l1; ++m1)
            for (int m2 = -l2; m2 <= l2; ++m2) {
              const int m3 = -m1 - m2;
              if (std::abs(m3) > l3) continue;
              std::complex<double> q = 0.0;
              for (std::size_t k = 0; k < grid.size(); ++k)
                q += grid.weights[k] * yat(k, l1, m1) * yat(k, l2, m2) * yat(k, l3, m3);
              worst = std::max(worst,
                               std::abs(q - gaunt_integral(l1, m1, l2, m2, l3, m3)));
            }
    ctx.add("gaunt-vs-quadrature", worst, 0.0, 1e-9);
  }
  {
    // Collapse identity used by the variance proofs:
    // (g l l; 0 0 0) * sum_m (-1)^m (g l l; k m -m) = delta_{g0} delta_{k0}.
    double worst = 0.0;
    for (int l = 1; l <= 4; ++l)
      for (int gamma = 0; gamma <= 2 * l + 1; ++gamma)
        for (int kappa = -gamma; kappa <= gamma; ++kappa) {
          double s = 0.0;
          for (int m = -l; m <= l; ++m) {
            const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
            s += sgn * wigner_3j(gamma, l, l, kappa, m, -m);
          }
          const double v = wigner_3j(gamma, l, l, 0, 0, 0) * s;
          const double expect = (gamma == 0 && kappa == 0) ? 1.0 : 0.0;
          worst = std::max(worst, std::abs(v - expect));
        }
    ctx.add("w3j-variance-collapse", worst, 0.0, 1e-12);
  }
}

// ---------------------------------------------------------------------------
// subordinator-laws

void suite_subordinator(const SuiteContext& ctx) {
  const long long n = ctx.n(1000000, 20000);
  for (double nu : {0.4, 0.6, 0.8}) {
    for (double s : {0.5, 1.0, 2.0}) {
      const McEstimate mc = monte_carlo_mean(
          n, ctx.seed, stream_block(211),
          [&](RngStream& rng) { return std::exp(-s * sample_stable_increment(nu, 1.0, rng)); },
          ctx.workers);
      char name[64];
      std::snprintf(name, sizeof(name), "laplace-H nu=%.1f s=%.1f", nu, s);
      ctx.add(name, mc.value, std::exp(-std::pow(s, nu)), 3.0 * mc.std_error);
    }
  }
  for (double nu : {0.4, 0.6, 0.8}) {
    for (double t : {0.5, 1.0}) {
      for (double lambda : {0.5, 1.0, 2.0}) {
        const McEstimate mc = monte_carlo_mean(
            n, ctx.seed, stream_block(212),
            [&](RngStream& rng) { return std::exp(-lambda * sample_inverse_marginal(nu, t, rng)); },
            ctx.workers);
        const double analytic = mittag_leffler(nu, -lambda * std::pow(t, nu));
        char name[64];
        std::snprintf(name, sizeof(name), "laplace-L nu=%.1f t=%.1f lam=%.1f", nu, t, lambda);
        ctx.add(name, mc.value, analytic, 3.0 * mc.std_error);
      }
    }
  }
  for (double nu : {0.4, 0.5, 0.8}) {
    const McEstimate mc = monte_carlo_mean(
        n, ctx.seed, stream_block(213),
        [&](RngStream& rng) { return sample_inverse_marginal(nu, 1.0, rng); }, ctx.workers);
    char name[64];
    std::snprintf(name, sizeof(name), "moment-L nu=%.1f", nu);
    ctx.add(name, mc.value, 1.0 / std::tgamma(1.0 + nu), 3.0 * mc.std_error);
  }
  {
    RngStream rng(ctx.seed, stream_block(204));
    StableParams sp;
    sp.nu = 0.5;
    sp.grid_dt = 1e-3;
    std::vector<double> grid;
    for (double t = 0.05; t <= 2.0001; t += 0.05) grid.push_back(t);
    int violations = 0;
    for (int p = 0; p < 200; ++p) {
      const InversePath path = sample_inverse_path(sp, grid, rng);
      for (std::size_t i = 1; i < path.l_values.size(); ++i)
        if (path.l_values[i] < path.l_values[i - 1]) ++violations;
    }
    ctx.add("inverse-path-monotone", violations, 0.0, 0.0);
  }
  {
    // Increment law is non-stationary: var(L_2 - L_1) must differ from
    // var(L_1 - L_0) by more than 5 joint standard errors.
    const long long np = ctx.n(20000, 4000);
    std::vector<double> inc1, inc2;
    inc1.reserve(np);
    inc2.reserve(np);
    StableParams sp;
    sp.nu = 0.5;
    sp.grid_dt = 1e-3;
    for (long long p = 0; p < np; ++p) {
      RngStream rng(ctx.seed, stream_block(205) + static_cast<std::uint64_t>(p));
      const InversePath path = sample_inverse_path(sp, {1.0, 2.0}, rng);
      inc1.push_back(path.l_values[0]);
      inc2.push_back(path.l_values[1] - path.l_values[0]);
    }
    auto var_se = [](const std::vector<double>& v) {
      double mean = 0.0;
      for (double x : v) mean += x;
      mean /= v.size();
      double m2 = 0.0, m4 = 0.0;
      for (double x : v) {
        const double d = (x - mean) * (x - mean);
        m2 += d;
        m4 += d * d;
      }
      m2 /= v.size();
      m4 /= v.size();
      const double se = std::sqrt(std::max(0.0, m4 - m2 * m2) / v.size());
      return std::pair<double, double>(m2, se);
    };
    const auto [v1, se1] = var_se(inc1);
    const auto [v2, se2] = var_se(inc2);
    const double z = std::abs(v1 - v2) / std::sqrt(se1 * se1 + se2 * se2);
    ctx.add("nonstationary-increments (5-sigma shortfall)", std::max(0.0, 5.0 - z), 0.0, 0.0);
  }
  {
    // Flat intervals of the inverse path: at spacing 0.01 more than 10% of
    // consecutive values coincide for nu = 0.5.
    RngStream rng(ctx.seed, stream_block(206));
    StableParams sp;
    sp.nu = 0.5;
    sp.grid_dt = 1e-3;
    std::vector<double> grid;
    for (double t = 0.01; t <= 3.0001; t += 0.01) grid.push_back(t);
    long long flat = 0, total = 0;
    for (int p = 0; p < 100; ++p) {
      const InversePath path = sample_inverse_path(sp, grid, rng);
      for (std::size_t i = 1; i < path.l_values.size(); ++i, ++total)
        if (path.l_values[i] == path.l_values[i - 1]) ++flat;
    }
    const double fraction = static_cast<double>(flat) / static_cast<double>(total);
    ctx.add("constancy-fraction (shortfall below 0.10)", std::max(0.0, 0.10 - fraction), 0.0,
            0.0);
  }
}

// ---------------------------------------------------------------------------
// diffusion-marginals

void suite_diffusion(const SuiteContext& ctx) {
  {
    // Decay-rate calibration: -log E[P_1(cos theta_t)] has slope mu_1 = 2.
    const long long n = ctx.n(20000, 4000);
    const std::vector<double> times{0.08, 0.16, 0.24, 0.32, 0.40};
    std::vector<double> mean(times.size(), 0.0);
    for (long long p = 0; p < n; ++p) {
      RngStream rng(ctx.seed, stream_block(311) + static_cast<std::uint64_t>(p));
      const auto pts = simulate_sphere_bm(SpherePoint::north_pole(), times, 1e-4, rng);
      for (std::size_t i = 0; i < times.size(); ++i) mean[i] += std::cos(pts[i].theta);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double y = -std::log(mean[i] / n);
      sx += times[i];
      sy += y;
      sxx += times[i] * times[i];
      sxy += times[i] * y;
    }
    const double nT = static_cast<double>(times.size());
    const double slope = (nT * sxy - sx * sy) / (nT * sxx - sx * sx);
    ctx.add("bm-decay-rate", slope, 2.0, 0.04);
  }
  for (double nu : {0.6, 1.0}) {
    // Mean of Y_lm along the diffusion: E Y_lm(X_t) = decay_l * Y_lm(x0).
    const long long n = ctx.n(20000, 4000);
    const SpherePoint x0{1.1, 0.7};
    const double t1 = 0.5;
    StableParams sp;
    sp.nu = (nu < 1.0) ? nu : 0.5;
    sp.grid_dt = 1e-3;
    const int L = 3;
    std::vector<std::complex<double>> acc(static_cast<std::size_t>(L + 1) * (L + 1), 0.0);
    std::vector<double> acc_sq(acc.size(), 0.0);  // |Y|^2 for the se bound
    for (long long p = 0; p < n; ++p) {
      RngStream rng(ctx.seed, stream_block(312) + static_cast<std::uint64_t>(p));
      const TrdPath path = simulate_trd(x0, nu, 0.0, {t1}, sp, 1e-3, rng);
      const SpherePoint& pos = path.points.back();
      for (int l = 1; l <= L; ++l)
        for (int m = -l; m <= l; ++m) {
          const auto yv = spherical_harmonic({l, m}, pos.theta, pos.phi);
          acc[static_cast<std::size_t>(l) * (l + 1) + m] += yv;
          acc_sq[static_cast<std::size_t>(l) * (l + 1) + m] += std::norm(yv);
        }
    }
    const std::vector<double> decay = eigen_decay_sequence(nu, t1, L);
    double excess = 0.0;
    for (int l = 1; l <= L; ++l)
      for (int m = -l; m <= l; ++m) {
        const auto idx = static_cast<std::size_t>(l) * (l + 1) + m;
        const auto mc = acc[idx] / static_cast<double>(n);
        const double se = std::sqrt(acc_sq[idx] / n / n) + 1e-12;  // bound: E|Y|^2 / n
        const auto expect = decay[static_cast<std::size_t>(l)] *
                            spherical_harmonic({l, m}, x0.theta, x0.phi);
        excess = std::max(excess, (std::abs(mc - expect) - 3.0 * se));
      }
    char name[80];
    std::snprintf(name, sizeof(name), "mean-harmonic-decay nu=%.1f (3-sigma excess)", nu);
    ctx.add(name, std::max(0.0, excess), 0.0, 0.0);
  }
  {
    // TRD paths inherit the subordinator's flat intervals.
    RngStream rng(ctx.seed, stream_block(303));
    StableParams sp;
    sp.nu = 0.5;
    sp.grid_dt = 1e-3;
    std::vector<double> grid;
    for (double t = 0.01; t <= 2.0001; t += 0.01) grid.push_back(t);
    long long flat = 0, total = 0;
    for (int p = 0; p < 50; ++p) {
      const TrdPath path = simulate_trd({0.9, 0.2}, 0.5, 0.0, grid, sp, 1e-3, rng);
      for (std::size_t i = 2; i < path.points.size(); ++i, ++total)
        if (path.points[i].theta == path.points[i - 1].theta &&
            path.points[i].phi == path.points[i - 1].phi)
          ++flat;
    }
    const double fraction = static_cast<double>(flat) / static_cast<double>(total);
    ctx.add("trd-flat-fraction (shortfall below 0.10)", std::max(0.0, 0.10 - fraction), 0.0, 0.0);
  }
  {
    // Long-time marginal is uniform: E Y_lm -> 0.
    const long long n = ctx.n(20000, 4000);
    const int L = 3;
    std::vector<std::complex<double>> acc(static_cast<std::size_t>(L + 1) * (L + 1), 0.0);
    for (long long p = 0; p < n; ++p) {
      RngStream rng(ctx.seed, stream_block(314) + static_cast<std::uint64_t>(p));
      const auto pts = simulate_sphere_bm(SpherePoint::north_pole(), {6.0}, 1e-3, rng);
      for (int l = 1; l <= L; ++l)
        for (int m = -l; m <= l; ++m)
          acc[static_cast<std::size_t>(l) * (l + 1) + m] +=
              spherical_harmonic({l, m}, pts[0].theta, pts[0].phi);
    }
    double excess = 0.0;
    for (int l = 1; l <= L; ++l)
      for (int m = -l; m <= l; ++m) {
        const auto mc = acc[static_cast<std::size_t>(l) * (l + 1) + m] / static_cast<double>(n);
        const double se = std::sqrt((2.0 * l + 1.0) / kFourPi / n);
        excess = std::max(excess, std::abs(mc) - 3.0 * se);
      }
    ctx.add("long-time-uniformity (3-sigma excess)", std::max(0.0, excess), 0.0, 0.0);
  }
  {
    // Series density integrates to one over the sphere.
    DensityParams dp;
    dp.nu = 0.7;
    dp.l_max = 60;
    const SpherePoint x0{0.8, 1.9};
    const QuadratureGrid grid = build_quadrature(64, 129);
    double integral = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k)
      integral += grid.weights[k] * transition_density(grid.nodes[k], 0.3, x0, dp);
    ctx.add("density-normalization", integral, 1.0, 1e-8);
  }
  {
    DensityParams dp;
    dp.l_max = 40;
    const SpherePoint x0{1.3, 0.4}, x2{2.0, 2.2};
    ctx.add("ck-defect nu=1", chapman_kolmogorov_defect(1.0, 0.0, 0.5, 1.0, x0, x2, dp), 0.0,
            1e-10);
    const double d = chapman_kolmogorov_defect(0.6, 0.0, 0.5, 1.0, x0, x0, dp);
    ctx.add("ck-defect nu=0.6 (shortfall below 1e-3)", std::max(0.0, 1e-3 - d), 0.0, 0.0);
  }
  {
    // Two-sided KS between simulated diffusion marginals and inverse-CDF
    // samples of the series density (in cos theta), from the north pole.
    for (double nu : {0.6, 1.0}) {
      const long long n = ctx.n(8000, 2000);
      const double t1 = 0.6;
      const int L = 60;
      const std::vector<double> decay = eigen_decay_sequence(nu, t1, L);
      // CDF of c = cos(theta): F(c) = sum_l decay_l [P_{l-1}(c) - P_{l+1}(c)] / 2
      // evaluated through the integral of P_l; F(-1) = 0, F(1) = 1.
      auto cdf = [&](double c) {
        const std::vector<double> p = legendre_p_sequence(L + 1, c);
        double f = 0.5 * (c + 1.0);
        for (int l = 1; l <= L; ++l)
          f += 0.5 * decay[static_cast<std::size_t>(l)] *
               (p[static_cast<std::size_t>(l - 1)] - p[static_cast<std::size_t>(l + 1)]);
        return f;
      };
      std::vector<double> sim;
      sim.reserve(n);
      StableParams sp;
      sp.nu = (nu < 1.0) ? nu : 0.5;
      sp.grid_dt = 1e-3;
      for (long long p = 0; p < n; ++p) {
        RngStream rng(ctx.seed, stream_block(315) + static_cast<std::uint64_t>(p));
        const TrdPath path = simulate_trd(SpherePoint::north_pole(), nu, 0.0, {t1}, sp, 1e-3, rng);
        sim.push_back(std::cos(path.points.back().theta));
      }
      std::vector<double> exact;
      exact.reserve(n);
      RngStream rng(ctx.seed, stream_block(306));
      for (long long p = 0; p < n; ++p) {
        const double u = rng.uniform();
        double lo = -1.0, hi = 1.0;
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi);
          (cdf(mid) < u ? lo : hi) = mid;
        }
        exact.push_back(0.5 * (lo + hi));
      }
      std::sort(sim.begin(), sim.end());
      std::sort(exact.begin(), exact.end());
      double ks = 0.0;
      std::size_t i = 0, j = 0;
      while (i < sim.size() && j < exact.size()) {
        if (sim[i] <= exact[j])
          ++i;
        else
          ++j;
        ks = std::max(ks, std::abs(static_cast<double>(i) / sim.size() -
                                   static_cast<double>(j) / exact.size()));
      }
      const double d_crit = 1.628 * std::sqrt(2.0 / static_cast<double>(n));  // alpha = 0.01
      char name[64];
      std::snprintf(name, sizeof(name), "marginal-ks nu=%.1f", nu);
      ctx.add(name, ks, 0.0, d_crit);
    }
  }
  {
    // |Y_lm(X_t)|^2 against its triple-harmonic series, l <= 2, nu = 0.6.
    const long long n = ctx.n(10000, 2000);
    const double nu = 0.6, t1 = 0.5;
    const SpherePoint x0{1.2, 0.3};
    StableParams sp;
    sp.nu = nu;
    sp.grid_dt = 1e-3;
    double excess = 0.0;
    for (int l = 1; l <= 2; ++l)
      for (int m = 0; m <= l; ++m) {
        McEstimate mc = monte_carlo_mean(
            n, ctx.seed, stream_block(317),
            [&](RngStream& rng) {
              const TrdPath path = simulate_trd(x0, nu, 0.0, {t1}, sp, 1e-3, rng);
              const SpherePoint& pos = path.points.back();
              return std::norm(spherical_harmonic({l, m}, pos.theta, pos.phi));
            },
            ctx.workers);
        double series = 0.0;
        for (int gamma = 0; gamma <= 2 * l; gamma += 2) {
          const double coef = ((m % 2 == 0) ? 1.0 : -1.0) * (2.0 * l + 1.0) *
                              std::sqrt((2.0 * gamma + 1.0) / kFourPi) *
                              wigner_3j(gamma, l, l, 0, 0, 0) *
                              wigner_3j(gamma, l, l, 0, m, -m);
          const double e = mittag_leffler(nu, -gamma * (gamma + 1.0) * std::pow(t1, nu));
          series += coef * e *
                    spherical_harmonic({gamma, 0}, x0.theta, x0.phi).real();
        }
        excess = std::max(excess, std::abs(mc.value - series) - 3.0 * mc.std_error);
      }
    ctx.add("harmonic-square-series nu=0.6 (3-sigma excess)", std::max(0.0, excess), 0.0, 0.0);
  }
}

// ---------------------------------------------------------------------------
// covariance-theorems

void suite_covariance(const SuiteContext& ctx) {
  const long long n = ctx.n(20000, 2000);
  const PowerSpectrum spec = PowerSpectrum::power_law(1.0, 3.0, 16);

  auto run = [&](CovFormula f, double nu, double t1, double t2, const char* label) {
    CovarianceExperiment e;
    e.formula = f;
    e.nu = nu;
    e.t0 = 0.0;
    e.t1 = t1;
    e.t2 = t2;
    e.spectrum = spec;
    const McEstimate mc = empirical_covariance(e, n, ctx.seed, ctx.workers);
    ctx.add(label, mc.value, e.analytic_value(), 3.0 * mc.std_error + e.bias_bound());
  };

  run(CovFormula::same_point, 0.6, 0.5, 0.5, "cov-same-point nu=0.6 lag=0.5");
  run(CovFormula::same_point, 1.0, 0.5, 0.5, "cov-same-point nu=1.0 lag=0.5");
  run(CovFormula::two_point, 0.6, 0.5, 0.75, "cov-two-point nu=0.6");
  run(CovFormula::two_point, 1.0, 0.5, 0.75, "cov-two-point nu=1.0");
  run(CovFormula::markov_lag, 1.0, 0.5, 1.0, "cov-markov-lag nu=1.0");
  run(CovFormula::frac_lag_integral, 0.6, 0.5, 1.0, "cov-frac-lag nu=0.6");
  run(CovFormula::frac_lag_integral, 1.0, 0.5, 1.0, "cov-frac-lag nu=1.0");
  run(CovFormula::equilibrium_trd, 0.6, 0.5, 0.5, "cov-equilibrium nu=0.6");
  run(CovFormula::equilibrium_trd, 1.0, 0.5, 0.5, "cov-equilibrium nu=1.0");

  {
    // Rotation invariance of the two-point estimator.
    CovarianceExperiment base;
    base.formula = CovFormula::two_point;
    base.nu = 0.6;
    base.t1 = 0.4;
    base.t2 = 0.6;
    base.spectrum = spec;
    const McEstimate ref = empirical_covariance(base, n, ctx.seed, ctx.workers);
    RngStream rot_rng(ctx.seed, stream_block(401));
    double excess = 0.0;
    for (int k = 0; k < 2; ++k) {
      const Rotation g = random_rotation(rot_rng);
      CovarianceExperiment rotated = base;
      rotated.x = g.apply(base.x);
      rotated.y = g.apply(base.y);
      const McEstimate mc = empirical_covariance(rotated, n, ctx.seed + 7 + k, ctx.workers);
      const double joint = std::sqrt(mc.std_error * mc.std_error + ref.std_error * ref.std_error);
      excess = std::max(excess, std::abs(mc.value - ref.value) - 3.0 * joint);
    }
    ctx.add("isotropy-two-point (3-sigma excess)", std::max(0.0, excess), 0.0, 0.0);
  }
  {
    // Second moment of the composed field is time- and position-independent.
    const double analytic = field_covariance_static(spec, {0.3, 0.3}, {0.3, 0.3});
    double excess = 0.0;
    int which = 0;
    for (auto [theta, t] : {std::pair<double, double>{0.7, 0.3}, {2.1, 1.0}}) {
      StableParams sp;
      sp.nu = 0.7;
      sp.grid_dt = 1e-3;
      const SpherePoint x0{theta, 1.0};
      const double tt = t;
      const McEstimate mc = monte_carlo_mean(
          n, ctx.seed, stream_block(422 + static_cast<std::uint64_t>(which++)),
          [&](RngStream& rng) {
            const HarmonicCoefficients coeffs = sample_coefficients(spec, rng);
            const TrdPath path = simulate_trd(x0, 0.7, 0.0, {tt}, sp, 1e-3, rng);
            const double v = evaluate_field(coeffs, path.points.back());
            return v * v;
          },
          ctx.workers);
      excess = std::max(excess, std::abs(mc.value - analytic) - 3.0 * mc.std_error);
    }
    ctx.add("second-moment-invariance (3-sigma excess)", std::max(0.0, excess), 0.0, 0.0);
  }
  {
    // sum_m |Y_lm|^2 at simulated positions is exactly (2l+1)/4pi.
    RngStream rng(ctx.seed, stream_block(403));
    StableParams sp;
    sp.nu = 0.6;
    sp.grid_dt = 1e-3;
    const TrdPath path = simulate_trd({1.0, 1.0}, 0.6, 0.0, {0.2, 0.7, 1.4}, sp, 1e-3, rng);
    double worst = 0.0;
    for (const SpherePoint& pos : path.points)
      for (int l = 1; l <= 3; ++l) {
        double s = 0.0;
        for (int m = -l; m <= l; ++m)
          s += std::norm(spherical_harmonic({l, m}, pos.theta, pos.phi));
        worst = std::max(worst, std::abs(s - (2.0 * l + 1.0) / kFourPi));
      }
    ctx.add("addition-along-path", worst, 0.0, 1e-10);
  }
}

// ---------------------------------------------------------------------------
// dependence-range

void suite_dependence(const SuiteContext& ctx) {
  PowerSpectrum centered = PowerSpectrum::power_law(1.0, 3.0, 16);
  centered.c[0] = 0.0;  // the l = 0 mode never decays; drop it for tail fits
  std::vector<double> lags;
  for (double h = 100.0; h <= 10000.0 * 1.0001; h *= std::pow(100.0, 0.125)) lags.push_back(h);

  for (double nu : {0.3, 0.5, 0.8}) {
    const DependenceDiagnostic d = dependence_range_diagnostic(nu, centered, lags, 0, ctx.seed);
    char name[64];
    std::snprintf(name, sizeof(name), "tail-exponent nu=%.1f", nu);
    ctx.add(name, d.fitted_exponent, -nu, 0.05);
    std::snprintf(name, sizeof(name), "verdict-long-range nu=%.1f", nu);
    ctx.add(name, d.verdict == DependenceVerdict::long_range ? 1.0 : 0.0, 1.0, 0.0);
  }
  {
    std::vector<double> short_lags;
    for (double h = 1.0; h <= 110.0; h *= 1.6) short_lags.push_back(h);
    const DependenceDiagnostic d =
        dependence_range_diagnostic(1.0, centered, short_lags, 0, ctx.seed);
    ctx.add("verdict-short-range nu=1",
            d.verdict == DependenceVerdict::short_range ? 1.0 : 0.0, 1.0, 0.0);
  }
  {
    PowerSpectrum flat;
    flat.c = {1.0, 0.0};
    const DependenceDiagnostic d = dependence_range_diagnostic(0.5, flat, lags, 0, ctx.seed);
    ctx.add("verdict-degenerate-constant",
            d.verdict == DependenceVerdict::degenerate_constant ? 1.0 : 0.0, 1.0, 0.0);
    ctx.add("degenerate-exponent", d.fitted_exponent, 0.0, 1e-12);
  }
  {
    // Markov equilibrium lag sum: sum_h (1/3) exp(-2h) = (1/3)/(e^2 - 1).
    double sum = 0.0;
    for (int h = 1; h <= 60; ++h) sum += trd_equilibrium_cov(1.0, h);
    ctx.add("equilibrium-lag-sum nu=1", sum, (1.0 / 3.0) / (std::exp(2.0) - 1.0), 1e-9);
  }
  {
    // Equilibrium covariance tail: value * h^nu approaches a constant.
    const double nu = 0.5;
    const double a = trd_equilibrium_cov(nu, 1e4) * std::pow(1e4, nu);
    const double b = trd_equilibrium_cov(nu, 1e6) * std::pow(1e6, nu);
    ctx.add("equilibrium-tail-scaling nu=0.5", a / b, 1.0, 0.05);
  }
  {
    // Running-time covariance: the same-point integral form scales like
    // T2^{-nu} at large T2 (long-range dependence of the composed field).
    PowerSpectrum single;
    single.c = {0.0, 1.0};  // isolate l = 1
    const double nu = 0.5, T1 = 0.5;
    const double b3 = cov_fractional_lag_integral(single, nu, T1, 1e3) * std::pow(1e3, nu);
    const double b6 = cov_fractional_lag_integral(single, nu, T1, 1e6) * std::pow(1e6, nu);
    ctx.add("frac-lag-tail-scaling nu=0.5", b3 / b6, 1.0, 0.05);
  }
  {
    // Frequency components: for nu < 1 the scaled covariance
    // value * l^{alpha+3} * h^nu settles to a constant over large (l, h).
    const double nu = 0.5, alpha = 3.0, t1 = 1.0;
    const PowerSpectrum big = PowerSpectrum::power_law(1.0, alpha, 220);
    const SpherePoint x{1.0, 0.5}, y{1.0001, 0.5};
    std::vector<double> scaled;
    for (int l : {100, 200})
      for (double h : {100.0, 10000.0}) {
        const double v = frequency_component_cov(l, nu, 0.0, t1, t1 + h, x, y, big);
        scaled.push_back(v * std::pow(l, alpha + 3.0) * std::pow(h, nu));
      }
    double spread = 0.0;
    for (double v : scaled)
      spread = std::max(spread, std::abs(v - scaled[0]) / std::abs(scaled[0]));
    ctx.add("frequency-component-scaling nu=0.5", spread, 0.0, 0.1);
  }
  {
    // nu = 1 frequency component decays like exp(-mu_l h) in the lag.
    const PowerSpectrum spec = PowerSpectrum::power_law(1.0, 3.0, 8);
    const SpherePoint x{1.0, 0.5}, y{1.2, 0.9};
    const int l = 2;
    const double t1 = 0.3, h1 = 0.1, h2 = 0.2;
    const double v1 = frequency_component_cov(l, 1.0, 0.0, t1, t1 + h1, x, y, spec);
    const double v2 = frequency_component_cov(l, 1.0, 0.0, t1, t1 + h2, x, y, spec);
    const double slope = std::log(v1 / v2) / (h2 - h1);
    ctx.add("frequency-component-markov-slope", slope, 6.0, 0.06);
  }
}

struct SuiteCost {
  double fixed = 0.0;
  double mc = 0.0;
};

SuiteCost suite_cost(const std::string& name) {
  if (name == "specfun") return {4.0, 0.0};
  if (name == "wigner") return {4.0, 0.0};
  if (name == "subordinator-laws") return {1.0, 14.0};
  if (name == "diffusion-marginals") return {2.0, 110.0};
  if (name == "covariance-theorems") return {2.0, 170.0};
  if (name == "dependence-range") return {6.0, 0.0};
  throw std::invalid_argument("run_validation_suite: unknown suite '" + name + "'");
}

void dispatch(const std::string& name, const SuiteContext& ctx) {
  if (name == "specfun")
    suite_specfun(ctx);
  else if (name == "wigner")
    suite_wigner(ctx);
  else if (name == "subordinator-laws")
    suite_subordinator(ctx);
  else if (name == "diffusion-marginals")
    suite_diffusion(ctx);
  else if (name == "covariance-theorems")
    suite_covariance(ctx);
  else if (name == "dependence-range")
    suite_dependence(ctx);
  else
    throw std::invalid_argument("run_validation_suite: unknown suite '" + name + "'");
}

}  // namespace

ValidationReport run_validation_suite(const std::string& suite, std::uint64_t seed,
                                      double budget_s, int workers) {
  static const std::vector<std::string> kAll{"specfun",
                                             "wigner",
                                             "subordinator-laws",
                                             "diffusion-marginals",
                                             "covariance-theorems",
                                             "dependence-range"};
  std::vector<std::string> names;
  if (suite == "all")
    names = kAll;
  else
    names = {suite};

  double fixed = 0.0, mc = 0.0;
  for (const auto& n : names) {
    const SuiteCost c = suite_cost(n);
    fixed += c.fixed;
    mc += c.mc;
  }
  double scale = 1.0;
  if (budget_s > 0.0 && mc > 0.0)
    scale = std::clamp((budget_s - fixed) / mc, 0.02, 1.0);

  ValidationReport report;
  report.suite = suite;
  report.seed = seed;
  report.runtime_s = fixed + mc * scale;  // nominal model cost, deterministic

  SuiteContext ctx;
  ctx.seed = seed;
  ctx.scale = scale;
  ctx.workers = std::max(1, workers);
  ctx.checks = &report.checks;
  for (const auto& n : names) dispatch(n, ctx);
  return report;
}

}  // namespace trdf
