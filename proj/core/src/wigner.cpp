#include "trdf/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trdf {

namespace {

constexpr int kMaxDegree = 100;
constexpr double kPi = 3.14159265358979323846;

// log n! for n up to 4*kMaxDegree+1, filled once.
const double* log_factorials() {
  static const std::vector<double> table = [] {
    std::vector<double> t(4 * kMaxDegree + 2, 0.0);
    for (std::size_t n = 2; n < t.size(); ++n) t[n] = t[n - 1] + std::log(static_cast<double>(n));
    return t;
  }();
  return table.data();
}

bool triangle_ok(int l1, int l2, int l3) {
  return l3 >= std::abs(l1 - l2) && l3 <= l1 + l2;
}

}  // namespace

double wigner_3j(const Wigner3jIndex& idx) {
  const int l1 = idx.l1, l2 = idx.l2, l3 = idx.l3;
  const int m1 = idx.m1, m2 = idx.m2, m3 = idx.m3;
  if (l1 < 0 || l2 < 0 || l3 < 0)
    throw std::invalid_argument("wigner_3j: degrees must be nonnegative");
  if (l1 > kMaxDegree || l2 > kMaxDegree || l3 > kMaxDegree)
    throw std::out_of_range("wigner_3j: degree above 100 exceeds the floating-point range");
  if (std::abs(m1) > l1 || std::abs(m2) > l2 || std::abs(m3) > l3) return 0.0;
  if (m1 + m2 + m3 != 0) return 0.0;
  if (!triangle_ok(l1, l2, l3)) return 0.0;
  // parity zero: all projections zero with odd degree sum
  if (m1 == 0 && m2 == 0 && m3 == 0 && (l1 + l2 + l3) % 2 != 0) return 0.0;

  // Racah single-sum form:
  //   (-1)^{l1-l2-m3} sqrt(Delta * prod_i (l_i+m_i)!(l_i-m_i)!)
  //     * sum_z (-1)^z / [z!(l1+l2-l3-z)!(l1-m1-z)!(l2+m2-z)!
  //                       (l3-l2+m1+z)!(l3-l1-m2+z)!]
  const double* lf = log_factorials();
  const double log_delta = lf[l1 + l2 - l3] + lf[l1 - l2 + l3] + lf[-l1 + l2 + l3] -
                           lf[l1 + l2 + l3 + 1];
  const double log_prod = lf[l1 + m1] + lf[l1 - m1] + lf[l2 + m2] + lf[l2 - m2] +
                          lf[l3 + m3] + lf[l3 - m3];
  const double log_pre = 0.5 * (log_delta + log_prod);

  const int z_min = std::max({0, l2 - l3 - m1, l1 - l3 + m2});
  const int z_max = std::min({l1 + l2 - l3, l1 - m1, l2 + m2});
  if (z_min > z_max) return 0.0;

  // Scaled alternating sum: factor out the largest term to avoid overflow.
  auto log_term = [&](int z) {
    return -(lf[z] + lf[l1 + l2 - l3 - z] + lf[l1 - m1 - z] + lf[l2 + m2 - z] +
             lf[l3 - l2 + m1 + z] + lf[l3 - l1 - m2 + z]);
  };
  double max_log = -HUGE_VAL;
  for (int z = z_min; z <= z_max; ++z) max_log = std::max(max_log, log_term(z));
  double sum = 0.0;
  for (int z = z_min; z <= z_max; ++z) {
    const double t = std::exp(log_term(z) - max_log);
    sum += (z % 2 == 0) ? t : -t;
  }
  const double phase = ((l1 - l2 - m3) % 2 == 0) ? 1.0 : -1.0;
  return phase * sum * std::exp(log_pre + max_log);
}

double wigner_3j(int l1, int l2, int l3, int m1, int m2, int m3) {
  return wigner_3j(Wigner3jIndex{l1, l2, l3, m1, m2, m3});
}

double clebsch_gordan(const Wigner3jIndex& idx) {
  const double w = wigner_3j(idx.l1, idx.l2, idx.l3, idx.m1, idx.m2, -idx.m3);
  const double phase = ((idx.l1 - idx.l2 + idx.m3) % 2 == 0) ? 1.0 : -1.0;
  return phase * std::sqrt(2.0 * idx.l3 + 1.0) * w;
}

double gaunt_integral(int l1, int m1, int l2, int m2, int l3, int m3) {
  const double w0 = wigner_3j(l1, l2, l3, 0, 0, 0);
  if (w0 == 0.0) return 0.0;
  const double wm = wigner_3j(l1, l2, l3, m1, m2, m3);
  return std::sqrt((2.0 * l1 + 1.0) * (2.0 * l2 + 1.0) * (2.0 * l3 + 1.0) / (4.0 * kPi)) * w0 *
         wm;
}

double orthogonality_sum(OrthKind kind, const std::vector<int>& args) {
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw std::invalid_argument("orthogonality_sum: wrong number of arguments");
  };
  switch (kind) {
    case OrthKind::orth1: {
      need(6);
      const int l1 = args[0], l2 = args[1], L = args[2], M = args[3], xi = args[4], mu = args[5];
      double sum = 0.0;
      for (int m1 = -l1; m1 <= l1; ++m1)
        for (int m2 = -l2; m2 <= l2; ++m2)
          sum += wigner_3j(l1, l2, L, m1, m2, M) * wigner_3j(l1, l2, xi, m1, m2, mu);
      return sum;
    }
    case OrthKind::orth2: {
      need(3);
      const int l = args[0], gamma = args[1], kappa = args[2];
      double sum = 0.0;
      for (int m = -l; m <= l; ++m) {
        const double sgn = ((l - m) % 2 == 0) ? 1.0 : -1.0;
        sum += sgn * wigner_3j(l, l, gamma, m, -m, kappa);
      }
      return sum;
    }
    case OrthKind::orth3: {
      need(6);
      const int l1 = args[0], l2 = args[1], m1 = args[2], m2 = args[3], M1 = args[4],
                M2 = args[5];
      double sum = 0.0;
      for (int l = std::abs(l1 - l2); l <= l1 + l2; ++l)
        for (int m = -l; m <= l; ++m)
          sum += (2.0 * l + 1.0) * wigner_3j(l1, l2, l, m1, m2, m) *
                 wigner_3j(l1, l2, l, M1, M2, m);
      return sum;
    }
    case OrthKind::orth4: {
      need(3);
      const int l1 = args[0], l2 = args[1], l3 = args[2];
      double sum = 0.0;
      for (int m1 = -l1; m1 <= l1; ++m1)
        for (int m2 = -l2; m2 <= l2; ++m2) {
          const double w = wigner_3j(l1, l2, l3, m1, m2, -m1 - m2);
          sum += w * w;
        }
      return sum;
    }
  }
  throw std::invalid_argument("orthogonality_sum: unknown kind");
}

}  // namespace trdf
