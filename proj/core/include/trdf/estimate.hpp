#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trdf/fields.hpp"
#include "trdf/sphere.hpp"

namespace trdf {

/// Monte Carlo estimate with its standard error over n independent
/// replications.
struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long long n = 0;
};

enum class CovFormula { same_point, two_point, markov_lag, frac_lag_integral, equilibrium_trd };

CovFormula cov_formula_from_name(const std::string& name);  // "same-point", "two-point", ...
std::string cov_formula_name(CovFormula f);

/// Declarative description of one covariance experiment: which closed form is
/// under test and with what parameters. The sampling side pairs evaluations
/// per the dependence convention: evaluations started from the same point
/// share one diffusion driver, distinct starting points get independent
/// drivers, and the random field coefficients are always shared.
struct CovarianceExperiment {
  CovFormula formula = CovFormula::same_point;
  double nu = 1.0;
  double t0 = 0.0;
  double t1 = 0.5;
  double t2 = 1.0;
  SpherePoint x{1.0471975511965976, 0.8};  // theta = pi/3
  SpherePoint y{2.0943951023931953, 2.5};  // theta = 2pi/3
  PowerSpectrum spectrum = PowerSpectrum::power_law(1.0, 3.0, 20);
  double dt_internal = 1e-3;  // diffusion step in operational time
  double grid_dt = 1e-3;      // subordinator grid step

  /// The closed-form value this experiment estimates.
  double analytic_value() const;

  /// Stated discretization-bias allowance added to MC tolerances: the series
  /// re-summed with eigen-decay arguments perturbed by the relative step bias
  /// (dt_internal) plus the subordinator grid shift (grid_dt).
  double bias_bound() const;
};

/// Mean and standard error of `sample` over n replications. Replication r
/// draws from stream (seed, stream_offset + r), so the result is independent
/// of the worker count; per-block partial sums are combined in fixed order,
/// which makes repeated runs bit-identical.
McEstimate monte_carlo_mean(long long n, std::uint64_t seed, std::uint64_t stream_offset,
                            const std::function<double(RngStream&)>& sample, int workers = 1);

/// Mean and standard error of the paired products over n_paths replications.
/// Replication r draws from stream (seed, r), so results are independent of
/// the worker count; partial sums are combined in fixed block order.
McEstimate empirical_covariance(const CovarianceExperiment& e, long long n_paths,
                                std::uint64_t seed, int workers = 1);

/// Realized angular power Â_l = sum_m |â_lm|^2 from field samples on a
/// quadrature grid (one value per node, grid order). The grid must be exact
/// to degree 2*l_max. â_lm is the quadrature of T * conj(Y_lm).
std::vector<double> estimate_power_spectrum(const std::vector<double>& samples,
                                            const QuadratureGrid& grid, int l_max);

enum class DependenceVerdict { long_range, short_range, degenerate_constant, inconclusive };

std::string to_string(DependenceVerdict v);

struct DependenceDiagnostic {
  double fitted_exponent = 0.0;
  DependenceVerdict verdict = DependenceVerdict::inconclusive;
  std::vector<double> lags;
  std::vector<double> analytic;    // same-point covariance per lag
  std::vector<McEstimate> mc_head;  // MC at the first two lags when n_paths > 0
};

/// Fits the tail exponent of the analytic lag covariance over h_grid (which
/// must span at least two decades) and classifies the dependence range.
/// A long-range verdict means the fitted exponent lies in (-1, 0), so the
/// lag sums diverge; super-polynomial decay gives short-range; a flat curve
/// is degenerate-constant. n_paths > 0 additionally estimates the first two
/// lags by Monte Carlo.
DependenceDiagnostic dependence_range_diagnostic(double nu, const PowerSpectrum& spectrum,
                                                 const std::vector<double>& h_grid,
                                                 long long n_paths, std::uint64_t seed);

struct ValidationCheck {
  std::string name;
  double estimate = 0.0;
  double analytic = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ValidationReport {
  std::string suite;
  std::uint64_t seed = 0;
  /// Nominal runtime from the deterministic cost model, in seconds. Wall time
  /// is intentionally not stored so that identical (suite, seed, workers)
  /// runs produce identical reports.
  double runtime_s = 0.0;
  std::vector<ValidationCheck> checks;

  bool all_passed() const;
};

/// Runs one of the named check batteries: "specfun", "wigner",
/// "subordinator-laws", "diffusion-marginals", "covariance-theorems",
/// "dependence-range", or "all". The budget (seconds) scales Monte Carlo
/// replication counts down through a fixed cost model; tolerances are always
/// at least 3 standard errors, so reduced runs widen rather than break.
/// Throws std::invalid_argument for an unknown suite.
ValidationReport run_validation_suite(const std::string& suite, std::uint64_t seed,
                                      double budget_s, int workers = 1);

}  // namespace trdf
