#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"

#include <gmpxx.h>
#include <quadmath.h>

namespace trdf_test {

double ml_series_quad(double nu, double x) {
  if (x == 0.0) return 1.0;
  const __float128 lx = logq(x);
  const __float128 qnu = nu;
  __float128 sum = 1.0;
  for (int n = 1; n <= 20000; ++n) {
    const __float128 mag = expq(n * lx - lgammaq(qnu * n + 1.0));
    sum += (n % 2 == 0) ? mag : -mag;
    if (mag < static_cast<__float128>(1e-38) && n > 20) break;
  }
  return static_cast<double>(sum);
}

double ml_half_closed_form(double x) {
  return static_cast<double>(expl(static_cast<long double>(x) * x) *
                             erfcl(static_cast<long double>(x)));
}

namespace {

mpq_class factorial_q(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return {f};
}

}  // namespace

double wigner_3j_exact(int l1, int l2, int l3, int m1, int m2, int m3) {
  if (std::abs(m1) > l1 || std::abs(m2) > l2 || std::abs(m3) > l3) return 0.0;
  if (m1 + m2 + m3 != 0) return 0.0;
  if (l3 < std::abs(l1 - l2) || l3 > l1 + l2) return 0.0;

  // Racah single-sum form, evaluated in exact rationals; only the final
  // square root is floating.
  const mpq_class delta = factorial_q(l1 + l2 - l3) * factorial_q(l1 - l2 + l3) *
                          factorial_q(-l1 + l2 + l3) / factorial_q(l1 + l2 + l3 + 1);
  const mpq_class prod = factorial_q(l1 + m1) * factorial_q(l1 - m1) * factorial_q(l2 + m2) *
                         factorial_q(l2 - m2) * factorial_q(l3 + m3) * factorial_q(l3 - m3);
  mpq_class s = 0;
  const int z_min = std::max({0, l2 - l3 - m1, l1 - l3 + m2});
  const int z_max = std::min({l1 + l2 - l3, l1 - m1, l2 + m2});
  for (int z = z_min; z <= z_max; ++z) {
    mpq_class term =
        mpq_class(1) / (factorial_q(z) * factorial_q(l1 + l2 - l3 - z) *
                        factorial_q(l1 - m1 - z) * factorial_q(l2 + m2 - z) *
                        factorial_q(l3 - l2 + m1 + z) * factorial_q(l3 - l1 - m2 + z));
    s += (z % 2 == 0) ? term : -term;
  }
  const int phase = ((l1 - l2 - m3) % 2 == 0) ? 1 : -1;
  const int sign = phase * sgn(s);
  const mpq_class value_sq = delta * prod * s * s;
  return sign * std::sqrt(value_sq.get_d());
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double ks = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    ks = std::max(ks, std::abs(static_cast<double>(i) / a.size() -
                               static_cast<double>(j) / b.size()));
  }
  return ks;
}

}  // namespace trdf_test
