#include "trdf/legendre.hpp"

#include <cmath>
#include <stdexcept>

namespace trdf {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrt4Pi = 0.28209479177387814347;  // 1/sqrt(4 pi)
}  // namespace

double legendre_p(int l, double x) {
  if (l < 0) throw std::domain_error("legendre_p: degree must be nonnegative");
  if (std::abs(x) > 1.0) throw std::domain_error("legendre_p: |x| must be <= 1");
  double p0 = 1.0;
  if (l == 0) return p0;
  double p1 = x;
  for (int k = 2; k <= l; ++k) {
    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

std::vector<double> legendre_p_sequence(int l_max, double x) {
  if (l_max < 0) throw std::domain_error("legendre_p_sequence: degree must be nonnegative");
  if (std::abs(x) > 1.0) throw std::domain_error("legendre_p_sequence: |x| must be <= 1");
  std::vector<double> p(l_max + 1);
  p[0] = 1.0;
  if (l_max >= 1) p[1] = x;
  for (int k = 2; k <= l_max; ++k)
    p[k] = ((2 * k - 1) * x * p[k - 1] - (k - 1) * p[k - 2]) / k;
  return p;
}

std::vector<double> assoc_legendre_table(int l_max, double ct) {
  // Normalized recurrence: seed the m-diagonal, then march upward in l.
  // The Condon-Shortley (-1)^m is carried by the minus sign in the diagonal
  // step. Normalization inside the recurrence keeps every entry O(1).
  if (l_max < 0) throw std::domain_error("assoc_legendre_table: degree must be nonnegative");
  if (std::abs(ct) > 1.0) throw std::domain_error("assoc_legendre_table: |x| must be <= 1");
  const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
  std::vector<double> p(plm_offset(l_max, l_max) + 1);
  p[plm_offset(0, 0)] = kInvSqrt4Pi;
  for (int m = 1; m <= l_max; ++m)
    p[plm_offset(m, m)] =
        -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * st * p[plm_offset(m - 1, m - 1)];
  for (int m = 0; m < l_max; ++m) {
    p[plm_offset(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * ct * p[plm_offset(m, m)];
    for (int l = m + 2; l <= l_max; ++l) {
      const double a =
          std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
      const double b = std::sqrt(((2.0 * l + 1.0) * (l - 1.0 + m) * (l - 1.0 - m)) /
                                 ((2.0 * l - 3.0) * (static_cast<double>(l) * l -
                                                     static_cast<double>(m) * m)));
      p[plm_offset(l, m)] = a * ct * p[plm_offset(l - 1, m)] - b * p[plm_offset(l - 2, m)];
    }
  }
  return p;
}

double assoc_legendre_normalized(int l, int m, double x) {
  if (l < 0 || m < 0 || m > l)
    throw std::domain_error("assoc_legendre_normalized: need 0 <= m <= l");
  if (std::abs(x) > 1.0) throw std::domain_error("assoc_legendre_normalized: |x| must be <= 1");
  const double st = std::sqrt(std::max(0.0, 1.0 - x * x));
  double pmm = kInvSqrt4Pi;
  for (int k = 1; k <= m; ++k) pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * st;
  if (l == m) return pmm;
  double pm1 = std::sqrt(2.0 * m + 3.0) * x * pmm;
  if (l == m + 1) return pm1;
  double plm = 0.0;
  for (int k = m + 2; k <= l; ++k) {
    const double a =
        std::sqrt((4.0 * k * k - 1.0) / (static_cast<double>(k) * k - static_cast<double>(m) * m));
    const double b = std::sqrt(((2.0 * k + 1.0) * (k - 1.0 + m) * (k - 1.0 - m)) /
                               ((2.0 * k - 3.0) * (static_cast<double>(k) * k -
                                                   static_cast<double>(m) * m)));
    plm = a * x * pm1 - b * pmm;
    pmm = pm1;
    pm1 = plm;
  }
  return plm;
}

std::complex<double> spherical_harmonic(HarmonicIndex idx, double theta, double phi) {
  if (!idx.valid()) throw std::domain_error("spherical_harmonic: invalid (l,m) index");
  if (theta < 0.0 || theta > kPi)
    throw std::domain_error("spherical_harmonic: colatitude outside [0,pi]");
  if (phi < 0.0 || phi >= 2.0 * kPi + 1e-12)
    throw std::domain_error("spherical_harmonic: longitude outside [0,2pi)");
  const int am = std::abs(idx.m);
  const double plm = assoc_legendre_normalized(idx.l, am, std::cos(theta));
  const std::complex<double> e(std::cos(am * phi), std::sin(am * phi));
  std::complex<double> y = plm * e;
  if (idx.m < 0) y = (am % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
  return y;
}

}  // namespace trdf
