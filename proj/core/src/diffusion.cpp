#include "trdf/diffusion.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "trdf/legendre.hpp"
#include "trdf/mittag_leffler.hpp"

namespace trdf {

namespace {
constexpr double kFourPi = 12.56637061435917295385;
}

void DensityParams::validate() const {
  if (!(nu > 0.0) || nu > 1.0) throw std::domain_error("DensityParams: order must lie in (0,1]");
  if (!r_coeffs.empty() && r_coeffs[0] != 1.0)
    throw std::domain_error("DensityParams: R_0 must equal 1");
}

std::vector<double> eigen_decay_sequence(double nu, double dt, int l_max) {
  if (!(dt > 0.0)) throw std::domain_error("eigen_decay_sequence: dt must be positive");
  std::vector<double> e(static_cast<std::size_t>(l_max) + 1);
  const double tau = std::pow(dt, nu);
  for (int l = 0; l <= l_max; ++l) {
    const double mu = static_cast<double>(l) * (l + 1);
    e[static_cast<std::size_t>(l)] = mittag_leffler(nu, -mu * tau);
  }
  return e;
}

std::vector<SpherePoint> simulate_sphere_bm(const SpherePoint& x0,
                                            const std::vector<double>& t_grid,
                                            double dt_internal, RngStream& rng) {
  if (!(dt_internal > 0.0))
    throw std::invalid_argument("simulate_sphere_bm: dt_internal must be positive");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] < 0.0 || (i > 0 && t_grid[i] < t_grid[i - 1]))
      throw std::invalid_argument("simulate_sphere_bm: grid must be nonnegative, nondecreasing");
  }
  std::vector<SpherePoint> out;
  out.reserve(t_grid.size());
  SpherePoint pos = x0;
  double now = 0.0;
  for (double t : t_grid) {
    double remaining = t - now;
    while (remaining > 0.0) {
      const double step = std::min(remaining, dt_internal);
      const double sd = std::sqrt(2.0 * step);
      pos = geodesic_step(pos, rng.normal(0.0, sd), rng.normal(0.0, sd));
      remaining -= step;
    }
    now = t;
    out.push_back(pos);
  }
  return out;
}

TrdPath simulate_trd(const SpherePoint& x0, double nu, double t0,
                     const std::vector<double>& t_grid, const StableParams& stable,
                     double dt_internal, RngStream& rng) {
  if (!(nu > 0.0) || nu > 1.0) throw std::domain_error("simulate_trd: order must lie in (0,1]");
  if (t_grid.empty()) throw std::invalid_argument("simulate_trd: empty time grid");
  if (t_grid.front() < t0)
    throw std::invalid_argument("simulate_trd: grid must not start before t0");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (t_grid[i] <= t_grid[i - 1])
      throw std::invalid_argument("simulate_trd: grid must be strictly increasing");

  TrdPath path;
  path.nu = nu;
  path.seed = stable.seed;
  if (t_grid.front() > t0) path.t_grid.push_back(t0);
  path.t_grid.insert(path.t_grid.end(), t_grid.begin(), t_grid.end());

  // Operational times: the identity map for nu = 1, otherwise one inverse-
  // subordinator path evaluated on the elapsed-time grid.
  std::vector<double> op_times;
  op_times.reserve(path.t_grid.size());
  if (nu == 1.0) {
    for (double t : path.t_grid) op_times.push_back(t - t0);
  } else {
    op_times.push_back(0.0);
    std::vector<double> elapsed;  // path.t_grid[0] is always t0 here
    for (std::size_t i = 1; i < path.t_grid.size(); ++i)
      elapsed.push_back(path.t_grid[i] - t0);
    if (!elapsed.empty()) {
      StableParams sp = stable;
      sp.nu = nu;
      const InversePath inv = sample_inverse_path(sp, elapsed, rng);
      op_times.insert(op_times.end(), inv.l_values.begin(), inv.l_values.end());
    }
  }

  // One Brownian path, walked forward to each (nondecreasing) operational
  // time; flat subordinator intervals reproduce the same point exactly.
  path.points = simulate_sphere_bm(x0, op_times, dt_internal, rng);
  return path;
}

double transition_density(const SpherePoint& x, double t, const SpherePoint& x0,
                          const DensityParams& params) {
  params.validate();
  if (!(t > params.t0)) throw std::domain_error("transition_density: need t > t0");
  const double dt = t - params.t0;
  double sup_r = 1.0;
  for (double r : params.r_coeffs) sup_r = std::max(sup_r, std::abs(r));
  const int l_max =
      (params.l_max >= 0) ? params.l_max : select_density_l_max(params.nu, dt, sup_r);

  const std::vector<double> decay = eigen_decay_sequence(params.nu, dt, l_max);
  const std::vector<double> p = legendre_p_sequence(l_max, inner_product(x, x0));
  double sum = 0.0;
  for (int l = l_max; l >= 0; --l)
    sum += (2.0 * l + 1.0) / kFourPi * params.r(l) * decay[static_cast<std::size_t>(l)] *
           p[static_cast<std::size_t>(l)];
  return sum;
}

double solution_angular_spectrum(int l, double t, const DensityParams& params, double al_u0) {
  params.validate();
  if (l < 0) throw std::domain_error("solution_angular_spectrum: degree must be nonnegative");
  if (!(t > params.t0)) throw std::domain_error("solution_angular_spectrum: need t > t0");
  const double mu = static_cast<double>(l) * (l + 1);
  const double e = mittag_leffler(params.nu, -mu * std::pow(t - params.t0, params.nu));
  return e * e * al_u0;
}

double chapman_kolmogorov_defect(double nu, double t0, double t1, double t2,
                                 const SpherePoint& x0, const SpherePoint& x2,
                                 const DensityParams& params) {
  if (!(t0 < t1 && t1 < t2))
    throw std::invalid_argument("chapman_kolmogorov_defect: need t0 < t1 < t2");
  DensityParams p = params;
  p.nu = nu;
  p.t0 = t0;
  p.validate();
  double sup_r = 1.0;
  for (double r : p.r_coeffs) sup_r = std::max(sup_r, std::abs(r));
  const int l_max = (p.l_max >= 0) ? p.l_max : select_density_l_max(nu, t2 - t0, sup_r);

  const std::vector<double> e20 = eigen_decay_sequence(nu, t2 - t0, l_max);
  const std::vector<double> e21 = eigen_decay_sequence(nu, t2 - t1, l_max);
  const std::vector<double> e10 = eigen_decay_sequence(nu, t1 - t0, l_max);
  const std::vector<double> pl = legendre_p_sequence(l_max, inner_product(x2, x0));
  double defect = 0.0;
  for (int li = l_max; li >= 0; --li) {
    const auto l = static_cast<std::size_t>(li);
    const double rl = p.r(li);
    defect += (2.0 * li + 1.0) / kFourPi * pl[l] * (rl * e20[l] - rl * rl * e21[l] * e10[l]);
  }
  return defect;
}

int select_density_l_max(double nu, double dt, double sup_r) {
  constexpr int kCap = 2000;
  constexpr double kTol = 1e-8;
  for (int l = 1; l < kCap; ++l) {
    if (density_tail_estimate(nu, dt, sup_r, l) < kTol) return l;
  }
  if (nu < 1.0 && dt < 1e-3)
    throw std::domain_error(
        "select_density_l_max: series truncation cannot reach 1e-8 for dt = " +
        std::to_string(dt) +
        " with nu < 1 and a point initial datum; supply l_max explicitly or move away from t0");
  return kCap;
}

double density_tail_estimate(double nu, double dt, double sup_r, int l_max) {
  const double tau = std::pow(dt, nu);
  auto term = [&](int l) {
    const double mu = static_cast<double>(l) * (l + 1);
    return (2.0 * l + 1.0) / kFourPi * sup_r * mittag_leffler(nu, -mu * tau);
  };
  const double t1 = term(l_max + 1);
  const double t2 = term(l_max + 2);
  if (t1 <= 0.0) return 0.0;
  const double ratio = t2 / t1;
  const double geometric = (ratio < 1.0) ? 1.0 / (1.0 - ratio) : 1e30;
  return t1 * geometric;
}

}  // namespace trdf
