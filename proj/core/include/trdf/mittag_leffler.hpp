#pragma once

namespace trdf {

/// Evaluation policy for E_nu on the negative real axis.
///
/// Three regimes are stitched together: a Taylor series near the origin, a
/// spectral-representation quadrature in the middle, and the power-tail
/// asymptotic expansion far out. The Taylor radius is capped at 8^nu because
/// the alternating series loses ~e^{|z|^(1/nu)} digits to cancellation, so a
/// flat radius would be unusable at small nu; the asymptotic regime starts at
/// 28^nu where the optimally truncated tail expansion is below 1e-11. The
/// regimes agree to better than 1e-10 at both seams (unit-tested).
struct MittagLefflerParams {
  double nu = 0.5;                // order, in (0, 1]
  int series_terms_max = 600;     // >= 10
  int asymptotic_terms = 240;
  double crossover_radius = 5.0;  // > 0; Taylor used for |z| <= min(this, 8^nu)

  void validate() const;  // throws std::domain_error on a bad field
};

/// E_nu(z) for z <= 0 and nu in (0,1], absolute error <= 1e-10.
///
/// Satisfies 0 <= E_nu(-x^nu) <= 1/(1+x^nu) and E_1(z) = exp(z).
/// Throws std::domain_error for nu outside (0,1] or z > 0.
double mittag_leffler(double nu, double z, MittagLefflerParams params);
double mittag_leffler(double nu, double z);

}  // namespace trdf
