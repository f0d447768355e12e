#pragma once

#include <vector>

namespace trdf {

/// Index triple for a Wigner 3j symbol. Degrees must be nonnegative; the
/// symbol itself vanishes unless |m_i| <= l_i, m1+m2+m3 = 0 and the degrees
/// satisfy the triangle inequality.
struct Wigner3jIndex {
  int l1 = 0, l2 = 0, l3 = 0;
  int m1 = 0, m2 = 0, m3 = 0;
};

/// Wigner 3j symbol via the Racah single-sum formula with log-factorials.
///
/// Selection-rule failures return exactly 0 (they are zeros of the symbol,
/// not errors). Degrees above 100 throw std::out_of_range: past that the
/// alternating sum cancels beyond double precision. Negative degrees throw
/// std::invalid_argument.
double wigner_3j(const Wigner3jIndex& idx);
double wigner_3j(int l1, int l2, int l3, int m1, int m2, int m3);

/// Clebsch-Gordan coefficient C^{l3 m3}_{l1 m1 l2 m2}; here (l3, m3) is the
/// coupled pair:  C = (-1)^{l1-l2+m3} sqrt(2 l3 + 1) * 3j(l1,l2,l3; m1,m2,-m3).
double clebsch_gordan(const Wigner3jIndex& idx);

/// Integral of Y_{l1 m1} Y_{l2 m2} Y_{l3 m3} over the sphere:
///   sqrt((2l1+1)(2l2+1)(2l3+1)/(4 pi)) * 3j(l;0,0,0) * 3j(l;m1,m2,m3).
double gaunt_integral(int l1, int m1, int l2, int m2, int l3, int m3);

/// Left-hand sides of the four 3j orthogonality identities, by direct
/// summation over wigner_3j. Test-harness helper. Argument layout:
///   orth1: {l1, l2, L, M, xi, mu}   sum over m1, m2
///   orth2: {l, gamma, kappa}        sum_m (-1)^{l-m} 3j(l,l,gamma; m,-m,kappa)
///   orth3: {l1, l2, m1, m2, M1, M2} sum over l, m of (2l+1) * 3j * 3j
///   orth4: {l1, l2, l3}             sum over all m of 3j^2
enum class OrthKind { orth1, orth2, orth3, orth4 };
double orthogonality_sum(OrthKind kind, const std::vector<int>& args);

}  // namespace trdf
