#pragma once

#include <vector>

// Test-side reference implementations, deliberately independent of the
// library's evaluation paths.

namespace trdf_test {

/// E_nu(-x) by direct Taylor summation in __float128. The alternating series
/// loses ~exp(x^{1/nu}) to cancellation, so quad precision keeps ~1e-12
/// absolute accuracy for x^{1/nu} up to ~50, which covers every regime seam.
double ml_series_quad(double nu, double x);

/// E_{1/2}(-x) = exp(x^2) erfc(x), in long double.
double ml_half_closed_form(double x);

/// Wigner 3j symbol evaluated in exact rational arithmetic (GMP); only the
/// final square root is floating. Intended for degrees up to ~20.
double wigner_3j_exact(int l1, int l2, int l3, int m1, int m2, int m3);

/// Two-sample Kolmogorov-Smirnov statistic (inputs need not be sorted).
double ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace trdf_test
