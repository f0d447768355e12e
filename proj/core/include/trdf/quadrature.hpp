#pragma once

#include <functional>
#include <vector>

namespace trdf {

struct GaussRule {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;  // sum to 2
};

/// Gauss-Legendre nodes and weights, computed by Newton iteration on P_n.
/// Accurate to ~1e-15 for n up to several thousand.
const GaussRule& gauss_legendre(int n);

/// Integrate f over [a,b] with a single n-point Gauss-Legendre rule.
double gauss_integrate(const std::function<double(double)>& f, double a, double b, int n = 16);

/// Composite rule: [a,b] split into n_panels equal panels, n_nodes points each.
double composite_gauss(const std::function<double(double)>& f, double a, double b,
                       int n_panels, int n_nodes = 12);

/// Composite rule on panels refined geometrically towards the endpoint `toward`
/// (which must be a or b). Panel widths shrink by `ratio` per level; `levels`
/// panels total plus one closing panel at the refined end. Handles integrable
/// endpoint singularities of f's derivatives.
double graded_gauss(const std::function<double(double)>& f, double a, double b,
                    double toward, int levels = 48, double ratio = 0.5, int n_nodes = 12);

/// Adaptive bisection built on an embedded G7/G15-style pair (here GL10/GL20).
/// Splits until the panel estimate is below tol (absolute) or depth exhausts.
double adaptive_gauss(const std::function<double(double)>& f, double a, double b,
                      double tol = 1e-12, int max_depth = 28);

}  // namespace trdf
