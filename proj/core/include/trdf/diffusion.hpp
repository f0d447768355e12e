#pragma once

#include <cstdint>
#include <vector>

#include "trdf/rng.hpp"
#include "trdf/sphere.hpp"
#include "trdf/subordinator.hpp"

namespace trdf {

/// One realization of the time-changed rotational diffusion, sampled on
/// t_grid (absolute times, first entry = start time). points[0] is the start
/// point; for nu < 1 the path is constant wherever the driving inverse
/// subordinator is flat.
struct TrdPath {
  std::vector<double> t_grid;
  std::vector<SpherePoint> points;
  double nu = 1.0;
  std::uint64_t seed = 0;
};

/// Parameters of the transition-density series
///   u(x,t) = sum_l ((2l+1)/4pi) R_l E_nu(-mu_l (t-t0)^nu) P_l(<x,x0>).
/// r_coeffs holds R_l with R_0 = 1; an empty vector means R_l == 1 (point
/// initial datum). l_max < 0 requests automatic truncation (see
/// select_density_l_max).
struct DensityParams {
  double nu = 1.0;
  int l_max = -1;
  std::vector<double> r_coeffs;
  double t0 = 0.0;

  double r(int l) const {
    return (l < static_cast<int>(r_coeffs.size())) ? r_coeffs[static_cast<std::size_t>(l)] : 1.0;
  }
  void validate() const;  // nu in (0,1], R_0 == 1
};

/// E_nu(-l(l+1) dt^nu) for l = 0..l_max; the eigen-decay factors every series
/// in this library is built from.
std::vector<double> eigen_decay_sequence(double nu, double dt, int l_max);

/// Brownian motion on the unit sphere with generator Delta (no 1/2), started
/// at x0 at time 0 and returned at the given nonnegative increasing times.
/// Geodesic random walk: each internal step draws two independent N(0, 2 dt)
/// tangent components, so E P_l(<x0, X_t>) = exp(-l(l+1) t) + O(dt).
std::vector<SpherePoint> simulate_sphere_bm(const SpherePoint& x0,
                                            const std::vector<double>& t_grid,
                                            double dt_internal, RngStream& rng);

/// Time-changed rotational diffusion started at x0 at time t0. For nu < 1 one
/// Brownian path is run in operational time and evaluated at the inverse-
/// subordinator values (both drawn from `rng`), which preserves the joint law
/// across evaluation times; nu = 1 reduces to plain sphere Brownian motion.
/// t_grid must be increasing with t_grid[0] >= t0; if t_grid[0] > t0 the
/// start time is prepended so that points[0] == x0 always holds.
TrdPath simulate_trd(const SpherePoint& x0, double nu, double t0,
                     const std::vector<double>& t_grid, const StableParams& stable,
                     double dt_internal, RngStream& rng);

/// Transition density of the TRD at x given start x0, truncated at l_max
/// terms. Throws std::domain_error for t <= t0.
double transition_density(const SpherePoint& x, double t, const SpherePoint& x0,
                          const DensityParams& params);

/// Degree-l angular power of the solution at time t given the initial power
/// al_u0: (E_nu(-mu_l (t-t0)^nu))^2 * al_u0. Nonincreasing in t.
double solution_angular_spectrum(int l, double t, const DensityParams& params, double al_u0);

/// u(x2,t2;x0,t0) minus the Chapman-Kolmogorov composition through t1:
///   sum_l ((2l+1)/4pi) R_l^2 E_nu(-mu_l (t2-t1)^nu) E_nu(-mu_l (t1-t0)^nu) P_l(<x2,x0>).
/// Zero (to truncation tolerance) iff nu = 1 and R_l == 1.
double chapman_kolmogorov_defect(double nu, double t0, double t1, double t2,
                                 const SpherePoint& x0, const SpherePoint& x2,
                                 const DensityParams& params);

/// Smallest truncation degree for which the next-term-times-geometric-tail
/// bound drops below 1e-8, capped at 2000. With nu < 1 the series near t = t0
/// converges too slowly to truncate meaningfully, so dt < 1e-3 with a point
/// initial datum is rejected with a diagnostic.
int select_density_l_max(double nu, double dt, double sup_r);

/// The same bound evaluated at a given truncation, reported alongside series
/// outputs.
double density_tail_estimate(double nu, double dt, double sup_r, int l_max);

}  // namespace trdf
