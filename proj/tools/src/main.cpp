#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "output.hpp"
#include "trdf/diffusion.hpp"
#include "trdf/estimate.hpp"
#include "trdf/fields.hpp"
#include "trdf/legendre.hpp"
#include "trdf/mittag_leffler.hpp"
#include "trdf/sphere.hpp"
#include "trdf/subordinator.hpp"
#include "trdf/wigner.hpp"

namespace {

using namespace trdf;
using trdf_cli::fmt_int;
using trdf_cli::fmt_real;
using trdf_cli::Row;

constexpr double kFourPi = 12.56637061435917295385;

const CLI::Validator OrderRange =
    CLI::Validator([](std::string& s) {
      const double v = std::stod(s);
      if (!(v > 0.0) || v > 1.0) return std::string("nu must lie in (0,1], got " + s);
      return std::string();
    }, "NU in (0,1]");

const CLI::Validator IndexRange =
    CLI::Validator([](std::string& s) {
      const double v = std::stod(s);
      if (!(v > 0.0) || v >= 1.0) return std::string("nu must lie in (0,1), got " + s);
      return std::string();
    }, "NU in (0,1)");

std::pair<int, int> parse_grid(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("grid", "grid must be n_theta,n_phi");
  return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
}

// Dropped-remainder bound for a truncated power-law covariance series, from
// the next term and its geometric decay.
double series_tail_bound(const PowerSpectrum& spec, double alpha, double amplitude, double nu,
                         double dt) {
  const int L = spec.l_max();
  auto term = [&](int l) {
    const double cl = amplitude * std::pow(l + 1.0, -alpha);
    const double e =
        (dt > 0.0) ? mittag_leffler(nu, -static_cast<double>(l) * (l + 1) * std::pow(dt, nu))
                   : 1.0;
    return (2.0 * l + 1.0) / kFourPi * cl * e;
  };
  const double t1 = term(L + 1), t2 = term(L + 2);
  if (t1 <= 0.0) return 0.0;
  const double r = t2 / t1;
  return (r < 1.0) ? t1 / (1.0 - r) : HUGE_VAL;
}

struct GlobalOpts {
  int workers = 1;
};

int cmd_ml(double nu, double z, const MittagLefflerParams& params) {
  std::printf("%.15g\n", mittag_leffler(nu, z, params));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-changed rotational diffusions and isotropic random fields on the sphere"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read parameters from a key=value file");
  app.set_version_flag("--version", "trdf 0.1.0");

  GlobalOpts global;
  app.add_option("--workers", global.workers, "Worker threads for Monte Carlo estimation")
      ->capture_default_str();

  // ml ---------------------------------------------------------------------
  auto* ml = app.add_subcommand("ml", "Evaluate E_nu(z) on the negative real axis");
  double ml_nu = 0.5, ml_z = 0.0;
  MittagLefflerParams ml_params;
  ml->add_option("--nu", ml_nu, "Order in (0,1]")->required()->check(OrderRange);
  ml->add_option("--z", ml_z, "Argument (<= 0)")->required()->check(CLI::Range(-1e300, 0.0));
  ml->add_option("--crossover-radius", ml_params.crossover_radius,
                 "Taylor-series radius cap")->capture_default_str();
  ml->add_option("--series-terms-max", ml_params.series_terms_max, "Taylor term cap")
      ->capture_default_str();
  ml->add_option("--asymptotic-terms", ml_params.asymptotic_terms, "Tail-expansion term cap")
      ->capture_default_str();

  // wigner3j ----------------------------------------------------------------
  auto* w3j = app.add_subcommand("wigner3j", "Wigner 3j symbol (l1 l2 l3 m1 m2 m3)");
  std::vector<int> w3j_args;
  w3j->add_option("indices", w3j_args, "l1 l2 l3 m1 m2 m3")->expected(6);

  // simulate ----------------------------------------------------------------
  auto* simulate = app.add_subcommand("simulate", "Path simulation");
  simulate->require_subcommand(1);

  auto* sub = simulate->add_subcommand("subordinator", "Inverse stable subordinator paths");
  double sub_nu = 0.5, sub_tmax = 1.0, sub_dt = 0.01, sub_grid_dt = 0.0;
  long long sub_paths = 10;
  std::uint64_t sub_seed = 0;
  std::string sub_out = "subordinator.csv";
  sub->add_option("--nu", sub_nu, "Stability index in (0,1)")->required()->check(IndexRange);
  sub->add_option("--t-max", sub_tmax, "Largest output time")->required()
      ->check(CLI::PositiveNumber);
  sub->add_option("--dt", sub_dt, "Output time spacing")->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--grid-dt", sub_grid_dt,
                  "Operational grid step of the forward subordinator (default dt/10)");
  sub->add_option("--paths", sub_paths, "Number of paths")->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--seed", sub_seed, "RNG seed")->capture_default_str();
  sub->add_option("--out", sub_out, "Output CSV path")->capture_default_str();

  auto* trd = simulate->add_subcommand("trd", "Time-changed rotational diffusion paths");
  double trd_nu = 0.5, trd_x0_theta = 1.5707963267948966, trd_x0_phi = 0.0, trd_t0 = 0.0,
         trd_dt = 1e-3, trd_grid_dt = 1e-3;
  std::vector<double> trd_grid;
  long long trd_paths = 10;
  std::uint64_t trd_seed = 0;
  std::string trd_out = "trd.csv";
  trd->add_option("--nu", trd_nu, "Order in (0,1]")->required()->check(OrderRange);
  trd->add_option("--x0-theta", trd_x0_theta, "Start colatitude")->capture_default_str()
      ->check(CLI::Range(0.0, 3.14159265358979323846));
  trd->add_option("--x0-phi", trd_x0_phi, "Start longitude")->capture_default_str();
  trd->add_option("--t0", trd_t0, "Start time")->capture_default_str();
  trd->add_option("--t-grid", trd_grid, "Output times a,b,c")->required()->delimiter(',');
  trd->add_option("--paths", trd_paths, "Number of paths")->capture_default_str()
      ->check(CLI::PositiveNumber);
  trd->add_option("--dt", trd_dt, "Diffusion step in operational time")->capture_default_str()
      ->check(CLI::PositiveNumber);
  trd->add_option("--grid-dt", trd_grid_dt, "Subordinator grid step")->capture_default_str()
      ->check(CLI::PositiveNumber);
  trd->add_option("--seed", trd_seed, "RNG seed")->capture_default_str();
  trd->add_option("--out", trd_out, "Output CSV path")->capture_default_str();

  // density -----------------------------------------------------------------
  auto* density = app.add_subcommand("density", "Transition-density series on a grid");
  double den_nu = 0.7, den_t = 1.0, den_t0 = 0.0, den_x0_theta = 0.0, den_x0_phi = 0.0;
  int den_lmax = -1;
  std::string den_grid = "64,129", den_out = "density.csv";
  density->add_option("--nu", den_nu, "Order in (0,1]")->required()->check(OrderRange);
  density->add_option("--t", den_t, "Evaluation time")->required();
  density->add_option("--t0", den_t0, "Start time")->capture_default_str();
  density->add_option("--l-max", den_lmax, "Series truncation (-1: automatic)")
      ->capture_default_str();
  density->add_option("--x0-theta", den_x0_theta, "Source colatitude")->capture_default_str();
  density->add_option("--x0-phi", den_x0_phi, "Source longitude")->capture_default_str();
  density->add_option("--grid", den_grid, "Evaluation grid n_theta,n_phi")->capture_default_str();
  density->add_option("--out", den_out, "Output CSV path")->capture_default_str();

  // sample field --------------------------------------------------------------
  auto* sample = app.add_subcommand("sample", "Random-field synthesis");
  sample->require_subcommand(1);
  auto* field = sample->add_subcommand("field", "Draw one Gaussian isotropic field");
  double f_alpha = 3.0, f_amp = 1.0;
  int f_lmax = 30;
  std::string f_grid = "64,129", f_out = "field.csv";
  std::uint64_t f_seed = 0;
  field->add_option("--alpha", f_alpha, "Spectrum exponent, C_l = A (l+1)^-alpha")
      ->capture_default_str();
  field->add_option("--amplitude", f_amp, "Spectrum amplitude A")->capture_default_str();
  field->add_option("--l-max", f_lmax, "Band limit")->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  field->add_option("--grid", f_grid, "Sampling grid n_theta,n_phi")->capture_default_str();
  field->add_option("--seed", f_seed, "RNG seed")->capture_default_str();
  field->add_option("--out", f_out, "Output CSV path")->capture_default_str();

  // covariance ----------------------------------------------------------------
  auto* cov = app.add_subcommand("covariance", "Covariance evaluation");
  cov->require_subcommand(1);

  struct CovCommon {
    std::string formula = "same-point";
    double nu = 0.5;
    double t0 = 0.0, t1 = 0.5, t2 = 1.0;
    std::vector<double> lags;
    double x_theta = 1.0471975511965976, x_phi = 0.8;
    double y_theta = 2.0943951023931953, y_phi = 2.5;
    double alpha = 3.0, amplitude = 1.0;
    int l_max = 20;
  };
  auto add_cov_common = [](CLI::App* c, CovCommon& o) {
    c->add_option("--formula", o.formula,
                  "same-point | two-point | markov-lag | frac-lag-integral | equilibrium-trd")
        ->required();
    c->add_option("--nu", o.nu, "Order in (0,1]")->required()->check(OrderRange);
    c->add_option("--t0", o.t0, "Start time")->capture_default_str();
    c->add_option("--t1", o.t1, "First evaluation time")->capture_default_str();
    c->add_option("--t2", o.t2, "Second evaluation time")->capture_default_str();
    c->add_option("--lags", o.lags, "Lag sweep a,b,c (same-point, markov-lag, equilibrium-trd)")
        ->delimiter(',');
    c->add_option("--x-theta", o.x_theta, "First point colatitude")->capture_default_str();
    c->add_option("--x-phi", o.x_phi, "First point longitude")->capture_default_str();
    c->add_option("--y-theta", o.y_theta, "Second point colatitude")->capture_default_str();
    c->add_option("--y-phi", o.y_phi, "Second point longitude")->capture_default_str();
    c->add_option("--alpha", o.alpha, "Spectrum exponent")->capture_default_str();
    c->add_option("--amplitude", o.amplitude, "Spectrum amplitude")->capture_default_str();
    c->add_option("--l-max", o.l_max, "Spectrum band limit")->capture_default_str()
        ->check(CLI::NonNegativeNumber);
  };

  auto* cov_an = cov->add_subcommand("analytic", "Closed-form covariance values");
  CovCommon cov_an_opts;
  int cov_quad_n = 48;
  std::string cov_an_out = "covariance.csv";
  add_cov_common(cov_an, cov_an_opts);
  cov_an->add_option("--quad-n", cov_quad_n, "Quadrature panels for frac-lag-integral")
      ->capture_default_str();
  cov_an->add_option("--out", cov_an_out, "Output CSV path")->capture_default_str();

  auto* cov_mc = cov->add_subcommand("empirical", "Monte Carlo covariance estimates");
  CovCommon cov_mc_opts;
  long long cov_paths = 10000;
  std::uint64_t cov_seed = 0;
  double cov_dt = 1e-3, cov_grid_dt = 1e-3;
  std::string cov_mc_out = "covariance_mc.csv";
  add_cov_common(cov_mc, cov_mc_opts);
  cov_mc->add_option("--paths", cov_paths, "Replications")->capture_default_str()
      ->check(CLI::PositiveNumber);
  cov_mc->add_option("--seed", cov_seed, "RNG seed")->capture_default_str();
  cov_mc->add_option("--dt", cov_dt, "Diffusion step")->capture_default_str();
  cov_mc->add_option("--grid-dt", cov_grid_dt, "Subordinator grid step")->capture_default_str();
  cov_mc->add_option("--out", cov_mc_out, "Output CSV path")->capture_default_str();

  // validate -------------------------------------------------------------------
  auto* validate = app.add_subcommand("validate", "Run a named validation suite");
  std::string val_suite = "all", val_out = "report.json";
  std::uint64_t val_seed = 0;
  double val_budget = 600.0;
  validate->add_option("--suite", val_suite,
                       "specfun | wigner | subordinator-laws | diffusion-marginals | "
                       "covariance-theorems | dependence-range | all")
      ->capture_default_str();
  validate->add_option("--seed", val_seed, "RNG seed")->capture_default_str();
  validate->add_option("--budget", val_budget, "Runtime budget in seconds (nominal cost model)")
      ->capture_default_str();
  validate->add_option("--out", val_out, "Report JSON path")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ml) return cmd_ml(ml_nu, ml_z, ml_params);

    if (*w3j) {
      const double v =
          wigner_3j(w3j_args[0], w3j_args[1], w3j_args[2], w3j_args[3], w3j_args[4], w3j_args[5]);
      std::printf("%.15g\n", v);
      return 0;
    }

    if (*sub) {
      if (sub_grid_dt <= 0.0) sub_grid_dt = sub_dt / 10.0;
      std::vector<double> grid;
      for (double t = sub_dt; t <= sub_tmax * (1.0 + 1e-12); t += sub_dt) grid.push_back(t);
      StableParams sp{sub_nu, sub_seed, sub_grid_dt};
      std::vector<Row> rows;
      for (long long p = 0; p < sub_paths; ++p) {
        RngStream rng(sub_seed, static_cast<std::uint64_t>(p));
        const InversePath path = sample_inverse_path(sp, grid, rng);
        for (std::size_t i = 0; i < grid.size(); ++i)
          rows.push_back({fmt_int(p), fmt_real(grid[i]), fmt_real(path.l_values[i])});
      }
      trdf_cli::write_csv(sub_out, {"path_id", "t", "L_value"}, rows);
      trdf_cli::write_meta_sidecar(sub_out, "simulate subordinator",
                                   {{"nu", sub_nu},
                                    {"t_max", sub_tmax},
                                    {"dt", sub_dt},
                                    {"grid_dt", sub_grid_dt},
                                    {"paths", sub_paths},
                                    {"seed", sub_seed}});
      return 0;
    }

    if (*trd) {
      StableParams sp{trd_nu < 1.0 ? trd_nu : 0.5, trd_seed, trd_grid_dt};
      std::vector<Row> rows;
      for (long long p = 0; p < trd_paths; ++p) {
        RngStream rng(trd_seed, static_cast<std::uint64_t>(p));
        const TrdPath path = simulate_trd(make_sphere_point(trd_x0_theta, trd_x0_phi), trd_nu,
                                          trd_t0, trd_grid, sp, trd_dt, rng);
        for (std::size_t i = 0; i < path.t_grid.size(); ++i)
          rows.push_back({fmt_int(p), fmt_real(path.t_grid[i]), fmt_real(path.points[i].theta),
                          fmt_real(path.points[i].phi)});
      }
      trdf_cli::write_csv(trd_out, {"path_id", "t", "theta", "phi"}, rows);
      trdf_cli::write_meta_sidecar(trd_out, "simulate trd",
                                   {{"nu", trd_nu},
                                    {"x0_theta", trd_x0_theta},
                                    {"x0_phi", trd_x0_phi},
                                    {"t0", trd_t0},
                                    {"t_grid", trd_grid},
                                    {"paths", trd_paths},
                                    {"dt", trd_dt},
                                    {"grid_dt", trd_grid_dt},
                                    {"seed", trd_seed}});
      return 0;
    }

    if (*density) {
      const auto [n_theta, n_phi] = parse_grid(den_grid);
      const QuadratureGrid grid = build_quadrature(n_theta, n_phi);
      DensityParams dp;
      dp.nu = den_nu;
      dp.l_max = den_lmax;
      dp.t0 = den_t0;
      const SpherePoint x0 = make_sphere_point(den_x0_theta, den_x0_phi);
      std::vector<Row> rows;
      rows.reserve(grid.size());
      for (const SpherePoint& node : grid.nodes) {
        const double u = transition_density(node, den_t, x0, dp);
        rows.push_back({fmt_real(node.theta), fmt_real(node.phi), fmt_real(u)});
      }
      trdf_cli::write_csv(den_out, {"theta", "phi", "u"}, rows);
      trdf_cli::write_meta_sidecar(den_out, "density",
                                   {{"nu", den_nu},
                                    {"t", den_t},
                                    {"t0", den_t0},
                                    {"l_max", den_lmax},
                                    {"x0_theta", den_x0_theta},
                                    {"x0_phi", den_x0_phi},
                                    {"grid", den_grid}});
      return 0;
    }

    if (*field) {
      const auto [n_theta, n_phi] = parse_grid(f_grid);
      const QuadratureGrid grid = build_quadrature(n_theta, n_phi);
      const PowerSpectrum spec = PowerSpectrum::power_law(f_amp, f_alpha, f_lmax);
      RngStream rng(f_seed, 0);
      const HarmonicCoefficients coeffs = sample_coefficients(spec, rng);
      std::vector<Row> rows;
      rows.reserve(grid.size());
      for (const SpherePoint& node : grid.nodes)
        rows.push_back(
            {fmt_real(node.theta), fmt_real(node.phi), fmt_real(evaluate_field(coeffs, node))});
      trdf_cli::write_csv(f_out, {"theta", "phi", "value"}, rows);
      trdf_cli::write_meta_sidecar(f_out, "sample field",
                                   {{"alpha", f_alpha},
                                    {"amplitude", f_amp},
                                    {"l_max", f_lmax},
                                    {"grid", f_grid},
                                    {"seed", f_seed}});
      return 0;
    }

    if (*cov_an) {
      const CovCommon& o = cov_an_opts;
      const CovFormula f = cov_formula_from_name(o.formula);
      const PowerSpectrum spec = PowerSpectrum::power_law(o.amplitude, o.alpha, o.l_max);
      const SpherePoint x = make_sphere_point(o.x_theta, o.x_phi);
      const SpherePoint y = make_sphere_point(o.y_theta, o.y_phi);
      std::vector<Row> rows;
      auto emit = [&](double t1, double t2, double lag, double value, double dt_for_tail) {
        rows.push_back({o.formula, fmt_real(o.nu), fmt_real(o.t0), fmt_real(t1), fmt_real(t2),
                        fmt_real(lag), fmt_real(value),
                        fmt_real(series_tail_bound(spec, o.alpha, o.amplitude, o.nu,
                                                   dt_for_tail))});
      };
      std::vector<double> lags = o.lags;
      switch (f) {
        case CovFormula::same_point: {
          if (lags.empty()) lags = {o.t1 - o.t0};
          for (double h : lags) {
            CovarianceQuery q{o.nu, o.t0, o.t0 + h, o.t0 + h, x, x, spec, -1};
            emit(o.t0 + h, o.t0 + h, h, cov_same_point(q), h);
          }
          break;
        }
        case CovFormula::two_point: {
          CovarianceQuery q{o.nu, o.t0, o.t1, o.t2, x, y, spec, -1};
          emit(o.t1, o.t2, o.t2 - o.t1, cov_two_points(q), o.t1 - o.t0);
          break;
        }
        case CovFormula::markov_lag: {
          if (lags.empty()) lags = {o.t2 - o.t1};
          for (double h : lags) emit(o.t1, o.t1 + h, h, cov_markov_lag(spec, o.t1, o.t1 + h), h);
          break;
        }
        case CovFormula::frac_lag_integral: {
          const double v =
              cov_fractional_lag_integral(spec, o.nu, o.t1 - o.t0, o.t2 - o.t0, -1, cov_quad_n);
          emit(o.t1, o.t2, o.t2 - o.t1, v, o.t2 - o.t0);
          break;
        }
        case CovFormula::equilibrium_trd: {
          if (lags.empty()) lags = {o.t1 - o.t0};
          for (double h : lags) emit(o.t0, o.t0 + h, h, trd_equilibrium_cov(o.nu, h), 0.0);
          break;
        }
      }
      trdf_cli::write_csv(cov_an_out,
                          {"formula", "nu", "t0", "t1", "t2", "lag", "value", "truncation_tail"},
                          rows);
      trdf_cli::write_meta_sidecar(cov_an_out, "covariance analytic",
                                   {{"formula", o.formula},
                                    {"nu", o.nu},
                                    {"t0", o.t0},
                                    {"t1", o.t1},
                                    {"t2", o.t2},
                                    {"lags", o.lags},
                                    {"alpha", o.alpha},
                                    {"amplitude", o.amplitude},
                                    {"l_max", o.l_max},
                                    {"quad_n", cov_quad_n}});
      return 0;
    }

    if (*cov_mc) {
      const CovCommon& o = cov_mc_opts;
      CovarianceExperiment e;
      e.formula = cov_formula_from_name(o.formula);
      e.nu = o.nu;
      e.t0 = o.t0;
      e.t1 = o.t1;
      e.t2 = o.t2;
      e.x = make_sphere_point(o.x_theta, o.x_phi);
      e.y = make_sphere_point(o.y_theta, o.y_phi);
      e.spectrum = PowerSpectrum::power_law(o.amplitude, o.alpha, o.l_max);
      e.dt_internal = cov_dt;
      e.grid_dt = cov_grid_dt;
      const McEstimate mc = empirical_covariance(e, cov_paths, cov_seed, global.workers);
      std::vector<Row> rows{{o.formula, fmt_real(o.nu), fmt_real(o.t0), fmt_real(o.t1),
                             fmt_real(o.t2), fmt_real(mc.value), fmt_real(mc.std_error),
                             fmt_int(mc.n)}};
      trdf_cli::write_csv(cov_mc_out,
                          {"formula", "nu", "t0", "t1", "t2", "estimate", "stderr", "n"}, rows);
      trdf_cli::write_meta_sidecar(cov_mc_out, "covariance empirical",
                                   {{"formula", o.formula},
                                    {"nu", o.nu},
                                    {"t0", o.t0},
                                    {"t1", o.t1},
                                    {"t2", o.t2},
                                    {"alpha", o.alpha},
                                    {"amplitude", o.amplitude},
                                    {"l_max", o.l_max},
                                    {"paths", cov_paths},
                                    {"dt", cov_dt},
                                    {"grid_dt", cov_grid_dt},
                                    {"seed", cov_seed}});
      return 0;
    }

    if (*validate) {
      const ValidationReport report =
          run_validation_suite(val_suite, val_seed, val_budget, global.workers);
      nlohmann::json j;
      j["suite"] = report.suite;
      j["seed"] = report.seed;
      j["runtime_s"] = report.runtime_s;
      j["checks"] = nlohmann::json::array();
      for (const ValidationCheck& c : report.checks) {
        j["checks"].push_back({{"name", c.name},
                               {"estimate", c.estimate},
                               {"analytic", c.analytic},
                               {"tolerance", c.tolerance},
                               {"pass", c.pass}});
      }
      trdf_cli::write_json(val_out, j);
      trdf_cli::write_meta_sidecar(val_out, "validate",
                                   {{"suite", val_suite},
                                    {"seed", val_seed},
                                    {"budget", val_budget},
                                    {"workers", global.workers}});
      int failures = 0;
      for (const ValidationCheck& c : report.checks) {
        std::printf("[%s] %s: estimate=%.6g analytic=%.6g tol=%.3g\n", c.pass ? "PASS" : "FAIL",
                    c.name.c_str(), c.estimate, c.analytic, c.tolerance);
        if (!c.pass) ++failures;
      }
      std::printf("%s: %zu checks, %d failures (nominal runtime %.1f s)\n", val_suite.c_str(),
                  report.checks.size(), failures, report.runtime_s);
      return failures == 0 ? 0 : 1;
    }
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 2;
  }
  return 2;
}
