#pragma once

#include <cstdint>
#include <vector>

#include "trdf/rng.hpp"

namespace trdf {

/// Parameters for stable-subordinator path generation.
struct StableParams {
  double nu = 0.5;        // stability index, in (0,1)
  std::uint64_t seed = 0;
  double grid_dt = 1e-3;  // operational-time step of the simulated subordinator

  void validate() const;  // throws std::domain_error
};

/// One realization of the inverse subordinator sampled on a time grid.
/// l_values is nondecreasing and starts at >= 0.
struct InversePath {
  std::vector<double> t_grid;
  std::vector<double> l_values;
};

/// One increment of the stable subordinator over duration dt, i.e. a draw
/// with Laplace transform E exp(-s X) = exp(-dt s^nu). Strictly positive.
///
/// Kanter's representation: with U uniform(0,1) and E unit exponential,
///   X = sin(nu pi U) / sin(pi U)^{1/nu} * (sin((1-nu) pi U) / E)^{(1-nu)/nu},
/// scaled by dt^{1/nu}. Validated against the Laplace transform in the tests.
double sample_stable_increment(double nu, double dt, RngStream& rng);

/// One draw of the inverse subordinator at time t, via the marginal identity
/// L_t = (t / H_1)^nu in distribution; satisfies E exp(-lambda L_t) =
/// E_nu(-lambda t^nu). Throws std::domain_error for t <= 0.
double sample_inverse_marginal(double nu, double t, RngStream& rng);

/// Joint inverse-subordinator path by first-passage inversion: the forward
/// subordinator is simulated on a grid of step params.grid_dt until it
/// exceeds max(t_grid), and L_t = inf{tau : H_tau > t} is read off at each
/// grid time. Output is nondecreasing; the grid bias is O(grid_dt^nu).
/// Throws std::invalid_argument for an empty or non-increasing grid.
InversePath sample_inverse_path(const StableParams& params, const std::vector<double>& t_grid,
                                RngStream& rng);

}  // namespace trdf
