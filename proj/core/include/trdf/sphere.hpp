#pragma once

#include <array>
#include <vector>

#include "trdf/rng.hpp"

namespace trdf {

using Vec3 = std::array<double, 3>;

/// Point on the unit sphere in colatitude/longitude coordinates,
/// theta in [0,pi], phi in [0,2pi). At the poles phi is canonicalized to 0.
struct SpherePoint {
  double theta = 0.0;
  double phi = 0.0;

  static SpherePoint north_pole() { return {0.0, 0.0}; }
};

SpherePoint make_sphere_point(double theta, double phi);  // validates ranges

Vec3 to_unit_vector(const SpherePoint& p);
SpherePoint from_unit_vector(const Vec3& v);  // normalizes; poles get phi = 0

/// cos of the spherical distance: <x,y> = cos d(x,y), clamped to [-1,1].
double inner_product(const SpherePoint& x, const SpherePoint& y);

double geodesic_distance(const SpherePoint& x, const SpherePoint& y);

/// Orthonormal tangent frame at p: (e1, e2, normal). At the poles the phi=0
/// meridian fixes e1, so the frame is defined everywhere.
struct TangentFrame {
  Vec3 e1, e2, normal;
};
TangentFrame tangent_frame(const SpherePoint& p);

/// Move from x a distance |v| along the great circle whose initial direction
/// is v = v1*e1 + v2*e2 in the tangent frame at x. |v| = 0 returns x.
SpherePoint geodesic_step(const SpherePoint& x, double v1, double v2);

/// Rotation as a unit quaternion acting on embedded vectors.
struct Rotation {
  std::array<double, 4> q{1.0, 0.0, 0.0, 0.0};  // (w, x, y, z)

  Vec3 apply(const Vec3& v) const;
  SpherePoint apply(const SpherePoint& p) const;
};

/// Haar-uniform random rotation (subgroup algorithm).
Rotation random_rotation(RngStream& rng);

/// Uniform point on the sphere (area measure).
SpherePoint random_uniform_point(RngStream& rng);

/// Product quadrature grid on the sphere: Gauss-Legendre in cos(theta) times
/// the trapezoid rule in phi. Weights are positive and sum to 4 pi; the grid
/// integrates spherical harmonics exactly for l <= degree, with
/// degree = min(2*n_theta - 1, n_phi - 1).
struct QuadratureGrid {
  std::vector<SpherePoint> nodes;
  std::vector<double> weights;
  int n_theta = 0;
  int n_phi = 0;
  int degree = 0;

  std::size_t size() const { return nodes.size(); }
};

QuadratureGrid build_quadrature(int n_theta, int n_phi);

}  // namespace trdf
