#include "trdf/sphere.hpp"

#include <cmath>
#include <stdexcept>

#include "trdf/quadrature.hpp"

namespace trdf {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.28318530717958647693;

double clamp1(double x) { return x < -1.0 ? -1.0 : (x > 1.0 ? 1.0 : x); }
}  // namespace

SpherePoint make_sphere_point(double theta, double phi) {
  if (theta < 0.0 || theta > kPi)
    throw std::invalid_argument("make_sphere_point: colatitude outside [0,pi]");
  if (phi < 0.0 || phi >= kTwoPi)
    throw std::invalid_argument("make_sphere_point: longitude outside [0,2pi)");
  if (theta == 0.0 || theta == kPi) phi = 0.0;
  return {theta, phi};
}

Vec3 to_unit_vector(const SpherePoint& p) {
  const double st = std::sin(p.theta);
  return {st * std::cos(p.phi), st * std::sin(p.phi), std::cos(p.theta)};
}

SpherePoint from_unit_vector(const Vec3& v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (n == 0.0) throw std::invalid_argument("from_unit_vector: zero vector");
  const double z = clamp1(v[2] / n);
  const double theta = std::acos(z);
  const double rxy = std::hypot(v[0], v[1]);
  if (rxy / n < 1e-15) return {theta < kPi / 2 ? 0.0 : kPi, 0.0};
  double phi = std::atan2(v[1], v[0]);
  if (phi < 0.0) phi += kTwoPi;
  if (phi >= kTwoPi) phi = 0.0;
  return {theta, phi};
}

double inner_product(const SpherePoint& x, const SpherePoint& y) {
  const double v = std::cos(x.theta) * std::cos(y.theta) +
                   std::sin(x.theta) * std::sin(y.theta) * std::cos(x.phi - y.phi);
  return clamp1(v);
}

double geodesic_distance(const SpherePoint& x, const SpherePoint& y) {
  return std::acos(inner_product(x, y));
}

TangentFrame tangent_frame(const SpherePoint& p) {
  const double st = std::sin(p.theta), ct = std::cos(p.theta);
  const double sp = std::sin(p.phi), cp = std::cos(p.phi);
  TangentFrame f;
  f.e1 = {ct * cp, ct * sp, -st};  // d/dtheta
  f.e2 = {-sp, cp, 0.0};           // d/dphi normalized
  f.normal = {st * cp, st * sp, ct};
  return f;
}

SpherePoint geodesic_step(const SpherePoint& x, double v1, double v2) {
  const double len = std::hypot(v1, v2);
  if (len == 0.0) return x;
  const TangentFrame f = tangent_frame(x);
  const double c = std::cos(len), s = std::sin(len);
  const double d1 = v1 / len, d2 = v2 / len;
  Vec3 out;
  for (int i = 0; i < 3; ++i)
    out[i] = c * f.normal[i] + s * (d1 * f.e1[i] + d2 * f.e2[i]);
  return from_unit_vector(out);
}

Vec3 Rotation::apply(const Vec3& v) const {
  // v' = v + 2 u x (u x v + w v), u = (qx, qy, qz)
  const double w = q[0], ux = q[1], uy = q[2], uz = q[3];
  const double tx = 2.0 * (uy * v[2] - uz * v[1] + w * v[0]);
  const double ty = 2.0 * (uz * v[0] - ux * v[2] + w * v[1]);
  const double tz = 2.0 * (ux * v[1] - uy * v[0] + w * v[2]);
  return {v[0] + uy * tz - uz * ty, v[1] + uz * tx - ux * tz, v[2] + ux * ty - uy * tx};
}

SpherePoint Rotation::apply(const SpherePoint& p) const {
  return from_unit_vector(apply(to_unit_vector(p)));
}

Rotation random_rotation(RngStream& rng) {
  // Shoemake's uniform unit quaternion.
  const double u1 = rng.uniform(), u2 = rng.uniform(), u3 = rng.uniform();
  const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
  Rotation r;
  r.q = {a * std::sin(kTwoPi * u2), a * std::cos(kTwoPi * u2), b * std::sin(kTwoPi * u3),
         b * std::cos(kTwoPi * u3)};
  return r;
}

SpherePoint random_uniform_point(RngStream& rng) {
  const double z = 1.0 - 2.0 * rng.uniform();
  const double theta = std::acos(clamp1(z));
  const double phi = kTwoPi * rng.uniform();
  return {theta, phi >= kTwoPi ? 0.0 : phi};
}

QuadratureGrid build_quadrature(int n_theta, int n_phi) {
  if (n_theta < 1 || n_phi < 1)
    throw std::invalid_argument("build_quadrature: grid sizes must be positive");
  const GaussRule& gl = gauss_legendre(n_theta);
  QuadratureGrid grid;
  grid.n_theta = n_theta;
  grid.n_phi = n_phi;
  grid.degree = std::min(2 * n_theta - 1, n_phi - 1);
  grid.nodes.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  grid.weights.reserve(grid.nodes.capacity());
  const double wphi = kTwoPi / n_phi;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = std::acos(clamp1(gl.nodes[i]));
    for (int j = 0; j < n_phi; ++j) {
      grid.nodes.push_back({theta, wphi * j});
      grid.weights.push_back(gl.weights[i] * wphi);
    }
  }
  return grid;
}

}  // namespace trdf
