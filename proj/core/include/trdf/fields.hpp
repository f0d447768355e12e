#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "trdf/diffusion.hpp"
#include "trdf/rng.hpp"
#include "trdf/sphere.hpp"

namespace trdf {

/// Angular power spectrum C_0..C_L of an isotropic field. The power_law
/// factory gives C_l = amplitude * (l+1)^{-alpha}; alpha > 2 keeps
/// sum (2l+1) C_l summable.
struct PowerSpectrum {
  std::vector<double> c;

  static PowerSpectrum power_law(double amplitude, double alpha, int l_max);

  int l_max() const { return static_cast<int>(c.size()) - 1; }
  double operator[](int l) const { return c[static_cast<std::size_t>(l)]; }
  void validate() const;  // entries nonnegative, not empty
};

/// Triangular array of complex harmonic coefficients a_lm, 0 <= l <= L,
/// |m| <= l, stored at index l(l+1)+m. Sampled coefficients satisfy the
/// reality symmetry a_{l,-m} = (-1)^m conj(a_lm) with a_{l0} real, so the
/// synthesized field is real.
class HarmonicCoefficients {
public:
  explicit HarmonicCoefficients(int l_max)
      : l_max_(l_max), a_(static_cast<std::size_t>(l_max + 1) * (l_max + 1)) {}

  int l_max() const { return l_max_; }
  std::complex<double>& at(int l, int m) { return a_[index(l, m)]; }
  const std::complex<double>& at(int l, int m) const { return a_[index(l, m)]; }

  /// Largest |a_{l,-m} - (-1)^m conj(a_lm)| over the array.
  double max_symmetry_violation() const;

private:
  std::size_t index(int l, int m) const {
    if (l < 0 || l > l_max_ || m < -l || m > l)
      throw std::out_of_range("HarmonicCoefficients: index out of range");
    return static_cast<std::size_t>(l) * (l + 1) + m;
  }
  int l_max_;
  std::vector<std::complex<double>> a_;
};

/// Thrown when data violates a structural contract (e.g. a synthesized field
/// value with a non-negligible imaginary part).
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Query for the two-time covariance formulas; times satisfy t0 <= t1 <= t2.
struct CovarianceQuery {
  double nu = 1.0;
  double t0 = 0.0, t1 = 0.0, t2 = 0.0;
  SpherePoint x, y;
  PowerSpectrum spectrum;
  int l_max = -1;  // -1: use the spectrum's length

  void validate() const;
};

/// Gaussian coefficients with E|a_lm|^2 = C_l: a_{l0} ~ N(0, C_l) real,
/// a_lm = (g1 + i g2) sqrt(C_l/2) for m > 0, negative m by the reality
/// symmetry.
HarmonicCoefficients sample_coefficients(const PowerSpectrum& spectrum, RngStream& rng);

/// sum_{l,m} a_lm Y_lm(x). The full complex sum is accumulated; an imaginary
/// residual above 1e-8 means the coefficients break the reality symmetry and
/// raises ConsistencyError. The (discarded) residual is below 1e-10 for
/// coefficients from sample_coefficients.
double evaluate_field(const HarmonicCoefficients& coeffs, const SpherePoint& x);

/// Composition T(path position at time t); t must be a grid time of the path.
double evaluate_time_changed_field(const HarmonicCoefficients& coeffs, const TrdPath& path,
                                   double t);

/// Static covariance sum_l ((2l+1)/4pi) C_l P_l(<x,y>).
double field_covariance_static(const PowerSpectrum& spectrum, const SpherePoint& x,
                               const SpherePoint& y, int l_max = -1);

/// Covariance of the composed field against its start-time value at the same
/// point: sum_l ((2l+1)/4pi) C_l E_nu(-mu_l (t1-t0)^nu).
double cov_same_point(const CovarianceQuery& q);

/// Two distinct starting points (independent drivers):
/// sum_l ((2l+1)/4pi) C_l E_nu(-mu_l (t1-t0)^nu) E_nu(-mu_l (t2-t0)^nu) P_l(<x,y>).
/// Throws std::invalid_argument when x == y; use cov_same_point instead.
double cov_two_points(const CovarianceQuery& q);

/// Markovian (nu = 1) same-point covariance, a function of the lag only:
/// sum_l ((2l+1)/4pi) C_l exp(-mu_l (t2-t1)).
double cov_markov_lag(const PowerSpectrum& spectrum, double t1, double t2, int l_max = -1);

/// Same-point covariance at two running times T1 = t1-t0 <= T2 = t2-t0 from
/// the conditioning-through-the-subordinator route:
///   sum_l ((2l+1)/4pi) C_l [ E_nu(-mu_l T2^nu) + (mu_l nu T2^nu / Gamma(1+nu))
///     * Int_0^{T1/T2} E_nu(-mu_l T2^nu (1-z)^nu) z^{nu-1} dz ].
/// The bracket is the Laplace functional E exp(-mu_l (L_{T2} - L_{T1})) of the
/// inverse subordinator's increment: 1 at T1 = T2, exp(-mu_l (T2-T1)) at
/// nu = 1, and ~ (1/mu_l + T1^nu/Gamma(1+nu)) / (T2^nu Gamma(1-nu)) as
/// T2 -> infinity. The z^{nu-1} endpoint singularity is removed by
/// substituting u = z^nu before quadrature (mandatory: plain rules fail for
/// nu < 1/2).
double cov_fractional_lag_integral(const PowerSpectrum& spectrum, double nu, double T1, double T2,
                                   int l_max = -1, int quad_n = 48);

/// Covariance carried by the single degree l.
double frequency_component_cov(int l, double nu, double t0, double t1, double t2,
                               const SpherePoint& x, const SpherePoint& y,
                               const PowerSpectrum& spectrum);

/// Equilibrium covariance of the diffusion itself: (1/3) E_nu(-2 h^nu).
double trd_equilibrium_cov(double nu, double h);

/// Partial sum of sum_l (2l+1)^{2s} A_l with an integral-test tail estimate.
/// `converged` is false when the terms decay too slowly for the tail to be
/// finite (fitted decay exponent >= -1).
struct SobolevSum {
  double partial_sum = 0.0;
  double tail_estimate = 0.0;
  bool converged = true;
};
SobolevSum sobolev_norm(const std::function<double(int)>& a_l, double s, int l_cap = 10000);

}  // namespace trdf
