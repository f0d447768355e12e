#include "trdf/mittag_leffler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "trdf/quadrature.hpp"

namespace trdf {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 1/Gamma(w), finite for all real w (zero at the poles of Gamma).
double rgamma(double w) {
  if (w > 0.5) return 1.0 / std::tgamma(w);
  return std::tgamma(1.0 - w) * std::sin(kPi * w) / kPi;
}

// Taylor sum E_nu(z) = sum_n z^n / Gamma(nu n + 1), viable while the largest
// term stays small enough that cancellation leaves ~1e-12 absolute accuracy.
double ml_taylor(double nu, double z, int max_terms) {
  const double ax = std::abs(z);
  double sum = 1.0;
  if (ax == 0.0) return sum;
  const double lx = std::log(ax);
  for (int n = 1; n <= max_terms; ++n) {
    const double mag = std::exp(n * lx - std::lgamma(nu * n + 1.0));
    const double term = (n % 2 == 0) ? mag : -mag;  // z < 0
    sum += term;
    if (mag < 1e-17 && n >= 10) break;
  }
  return sum;
}

// Tail expansion E_nu(-x) = sum_{k>=1} (-1)^{k+1} x^{-k} / Gamma(1 - nu k).
// Via reflection, 1/Gamma(1 - nu k) = Gamma(nu k) sin(pi nu k) / pi, so each
// term is sin-modulated under the smooth envelope x^{-k} Gamma(nu k) / pi.
// Truncation happens where the envelope turns (the optimal point, error
// ~exp(-x^{1/nu})), not at the oscillation's local upswings; pole terms are
// plain zeros of the sin factor.
double ml_asymptotic(double nu, double x, int max_terms) {
  const double lx = std::log(x);
  double sum = 0.0;
  double prev_env = HUGE_VAL;
  for (int k = 1; k <= max_terms; ++k) {
    const double log_env = -k * lx + std::lgamma(nu * k) - 1.1447298858494002;  // - log(pi)
    if (log_env >= prev_env) break;
    prev_env = log_env;
    const double term = std::exp(log_env) * std::sin(kPi * nu * k);
    sum += (k % 2 == 1) ? term : -term;
    if (log_env < -42.0) break;
  }
  return sum;
}

// Spectral representation on the cut: with lambda = x^{1/nu}, c = cos(nu pi),
//   E_nu(-x) = sin(nu pi)/(nu pi) * Int_0^inf exp(-lambda v^{1/nu}) / (v^2 + 2cv + 1) dv.
// The denominator develops a near-pole at v=1 as nu -> 1, so the adaptive
// panels are seeded around it.
double ml_integral(double nu, double x) {
  const double lambda = std::pow(x, 1.0 / nu);
  const double c = std::cos(nu * kPi);
  const double vmax = std::pow(45.0 / lambda, nu);

  auto integrand = [=](double v) {
    return std::exp(-lambda * std::pow(v, 1.0 / nu)) / ((v + 2.0 * c) * v + 1.0);
  };

  std::vector<double> cuts{0.0};
  if (c < -0.5 && vmax > 0.5) {
    const double w = std::sqrt(2.0 * (1.0 + c)) + 1e-8;
    for (double p : {1.0 - 6.0 * w, 1.0 - w, 1.0 + w, 1.0 + 6.0 * w})
      if (p > 0.0 && p < vmax) cuts.push_back(p);
  }
  // For small nu the exponential factor drops like a cliff at v = 1/x; seed
  // panels that bracket the boundary layer.
  for (double p : {0.3 / x, 0.7 / x, 0.9 / x, 1.0 / x, 1.15 / x, 1.4 / x, 3.0 / x, 0.25})
    if (p > 0.0 && p < vmax) cuts.push_back(p);
  cuts.push_back(vmax);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    integral += adaptive_gauss(integrand, cuts[i], cuts[i + 1], 1e-14, 32);
  return std::sin(nu * kPi) / (nu * kPi) * integral;
}

}  // namespace

void MittagLefflerParams::validate() const {
  if (!(nu > 0.0) || nu > 1.0) throw std::domain_error("mittag_leffler: order must lie in (0,1]");
  if (series_terms_max < 10)
    throw std::domain_error("mittag_leffler: series_terms_max must be >= 10");
  if (asymptotic_terms < 1)
    throw std::domain_error("mittag_leffler: asymptotic_terms must be positive");
  if (!(crossover_radius > 0.0))
    throw std::domain_error("mittag_leffler: crossover_radius must be positive");
}

double mittag_leffler(double nu, double z, MittagLefflerParams params) {
  params.nu = nu;
  params.validate();
  if (z > 0.0) throw std::domain_error("mittag_leffler: positive arguments are unsupported");
  if (z == 0.0) return 1.0;
  if (nu == 1.0) return std::exp(z);

  const double x = -z;
  const double taylor_radius = std::min(params.crossover_radius, std::pow(8.0, nu));
  if (x <= taylor_radius) return ml_taylor(nu, z, params.series_terms_max);

  const double asymptotic_radius = std::pow(28.0, nu);
  if (x >= asymptotic_radius) return ml_asymptotic(nu, x, params.asymptotic_terms);

  return ml_integral(nu, x);
}

double mittag_leffler(double nu, double z) { return mittag_leffler(nu, z, MittagLefflerParams{}); }

}  // namespace trdf
