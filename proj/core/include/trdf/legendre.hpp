#pragma once

#include <complex>
#include <vector>

namespace trdf {

/// Degree/order pair for a spherical harmonic; requires |m| <= l.
struct HarmonicIndex {
  int l = 0;
  int m = 0;

  bool valid() const { return l >= 0 && m >= -l && m <= l; }
  /// Laplacian eigenvalue mu_l = l(l+1).
  double eigenvalue() const { return static_cast<double>(l) * (l + 1); }
};

/// Legendre polynomial P_l(x) for |x| <= 1, by the three-term recurrence.
/// P_l(1) = 1 for all l. Throws std::domain_error for |x| > 1.
double legendre_p(int l, double x);

/// P_0(x) .. P_lmax(x) in one sweep.
std::vector<double> legendre_p_sequence(int l_max, double x);

/// Fully normalized associated Legendre \tilde P_lm(cos theta) for m >= 0,
/// including the Condon-Shortley phase, so that
///   Y_lm(theta,phi) = \tilde P_lm(cos theta) * exp(i m phi).
/// Normalization is applied inside the recurrence; stable past l ~ 1500.
double assoc_legendre_normalized(int l, int m, double x);

/// Complex spherical harmonic Y_lm(theta, phi).
/// Obeys conj(Y_lm) = (-1)^m Y_{l,-m}. Throws std::domain_error for an
/// invalid index or angles outside [0,pi] x [0,2pi].
std::complex<double> spherical_harmonic(HarmonicIndex idx, double theta, double phi);

/// Table of \tilde P_lm(cos theta) for all 0 <= m <= l <= l_max; entry (l,m)
/// sits at l(l+1)/2 + m. Used by the field evaluators to avoid per-harmonic
/// recurrences.
std::vector<double> assoc_legendre_table(int l_max, double cos_theta);

inline std::size_t plm_offset(int l, int m) {
  return static_cast<std::size_t>(l) * (l + 1) / 2 + m;
}

}  // namespace trdf
