#include "trdf/subordinator.hpp"

#include <cmath>
#include <stdexcept>

namespace trdf {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void StableParams::validate() const {
  if (!(nu > 0.0) || nu >= 1.0) throw std::domain_error("StableParams: index must lie in (0,1)");
  if (!(grid_dt > 0.0)) throw std::domain_error("StableParams: grid_dt must be positive");
}

double sample_stable_increment(double nu, double dt, RngStream& rng) {
  if (!(nu > 0.0) || nu >= 1.0)
    throw std::domain_error("sample_stable_increment: index must lie in (0,1)");
  if (!(dt > 0.0)) throw std::domain_error("sample_stable_increment: dt must be positive");
  const double u = rng.uniform();
  const double e = rng.exponential();
  const double x = std::sin(nu * kPi * u) / std::pow(std::sin(kPi * u), 1.0 / nu) *
                   std::pow(std::sin((1.0 - nu) * kPi * u) / e, (1.0 - nu) / nu);
  return std::pow(dt, 1.0 / nu) * x;
}

double sample_inverse_marginal(double nu, double t, RngStream& rng) {
  if (!(t > 0.0)) throw std::domain_error("sample_inverse_marginal: t must be positive");
  const double h1 = sample_stable_increment(nu, 1.0, rng);
  return std::pow(t / h1, nu);
}

InversePath sample_inverse_path(const StableParams& params, const std::vector<double>& t_grid,
                                RngStream& rng) {
  params.validate();
  if (t_grid.empty()) throw std::invalid_argument("sample_inverse_path: empty time grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0) || (i > 0 && t_grid[i] <= t_grid[i - 1]))
      throw std::invalid_argument("sample_inverse_path: grid must be positive and increasing");
  }

  InversePath path;
  path.t_grid = t_grid;
  path.l_values.reserve(t_grid.size());

  // March the forward subordinator; L_t is the first operational time whose
  // subordinator value exceeds t.
  double h = 0.0;
  double tau = 0.0;
  for (double t : t_grid) {
    while (h <= t) {
      h += sample_stable_increment(params.nu, params.grid_dt, rng);
      tau += params.grid_dt;
    }
    path.l_values.push_back(tau);
  }
  return path;
}

}  // namespace trdf
