#pragma once

#include <functional>

namespace trdf {

/// Numerical Dzhrbashyan-Caputo derivative of order nu in (0,1) at time t > 0:
///   (1/Gamma(1-nu)) Int_0^t f'(s) (t-s)^{-nu} ds.
///
/// The kernel singularity at s = t is absorbed by the substitution
/// u = (t-s)^{1-nu}; the panel nearest s = 0 is refined geometrically so that
/// functions with an integrable derivative singularity at the origin (the
/// Mittag-Leffler eigenfunctions) are still handled. f' is formed by centered
/// differences with step h = t*1e-4, clamped to s/2 near the origin so f is
/// never sampled at negative times.
///
/// n_quad is the number of base panels in the substituted variable.
/// Throws std::domain_error for t <= 0 or nu outside (0,1).
double caputo_derivative_numeric(const std::function<double(double)>& f, double nu, double t,
                                 int n_quad = 64);

/// Riemann-Liouville derivative from a Caputo value:
///   D_RL f(t) = D_C f(t) + f(0) t^{-nu} / Gamma(1-nu).
/// Throws std::domain_error for t <= 0.
double riemann_liouville_from_caputo(double caputo_value, double f0, double nu, double t);

}  // namespace trdf
