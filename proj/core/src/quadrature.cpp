#include "trdf/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace trdf {

namespace {

GaussRule compute_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int l = 2; l <= n; ++l) {
        const double p2 = ((2 * l - 1) * x * p1 - (l - 1) * p0) / l;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  static std::map<int, GaussRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

double gauss_integrate(const std::function<double(double)>& f, double a, double b, int n) {
  const GaussRule& r = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += r.weights[i] * f(mid + half * r.nodes[i]);
  return half * sum;
}

double composite_gauss(const std::function<double(double)>& f, double a, double b,
                       int n_panels, int n_nodes) {
  if (n_panels < 1) throw std::invalid_argument("composite_gauss: n_panels must be positive");
  const double h = (b - a) / n_panels;
  double sum = 0.0;
  for (int k = 0; k < n_panels; ++k)
    sum += gauss_integrate(f, a + k * h, a + (k + 1) * h, n_nodes);
  return sum;
}

double graded_gauss(const std::function<double(double)>& f, double a, double b,
                    double toward, int levels, double ratio, int n_nodes) {
  const bool at_b = (toward == b);
  if (!at_b && toward != a)
    throw std::invalid_argument("graded_gauss: toward must equal a or b");
  const double len = b - a;
  double sum = 0.0;
  double outer = len;
  for (int k = 0; k < levels; ++k) {
    const double inner = (k + 1 == levels) ? 0.0 : outer * ratio;
    const double lo = at_b ? b - outer : a + inner;
    const double hi = at_b ? b - inner : a + outer;
    sum += gauss_integrate(f, lo, hi, n_nodes);
    outer = inner;
  }
  return sum;
}

namespace {

struct PanelEstimate {
  double coarse;
  double fine;
};

PanelEstimate panel_pair(const std::function<double(double)>& f, double a, double b) {
  return {gauss_integrate(f, a, b, 10), gauss_integrate(f, a, b, 20)};
}

double adaptive_rec(const std::function<double(double)>& f, double a, double b,
                    const PanelEstimate& est, double tol, int depth) {
  if (depth <= 0 || std::abs(est.fine - est.coarse) <= tol) return est.fine;
  const double mid = 0.5 * (a + b);
  const PanelEstimate left = panel_pair(f, a, mid);
  const PanelEstimate right = panel_pair(f, mid, b);
  return adaptive_rec(f, a, mid, left, 0.5 * tol, depth - 1) +
         adaptive_rec(f, mid, b, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_gauss(const std::function<double(double)>& f, double a, double b,
                      double tol, int max_depth) {
  return adaptive_rec(f, a, b, panel_pair(f, a, b), tol, max_depth);
}

}  // namespace trdf
