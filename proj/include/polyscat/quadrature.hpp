// quadrature.hpp -- triangle Gauss rules, Gauss-Legendre lines, and the
// product grids on spheres and balls used for L2 norms.

#pragma once

#include <vector>

#include "polyscat/common.hpp"

namespace polyscat {

struct TriangleRule {
  // barycentric coordinates (a,b,c) and weights summing to 1
  std::vector<Eigen::Vector3d> bary;
  std::vector<double> weights;
};

// Supported orders: 3, 4, 6, 7 points (degrees 2..5).
const TriangleRule& triangle_rule(int points);

struct GaussLegendre {
  std::vector<double> nodes;    // on [-1,1]
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n);

// Product quadrature on the unit sphere: n_theta Gauss points in cos(theta)
// times 2*n_theta uniform points in phi. Integrates spherical harmonics up
// to degree ~2*n_theta - 1 exactly.
struct SphereGrid {
  std::vector<Vec3> directions;
  std::vector<double> weights;  // sum to 4*pi
  std::vector<double> theta, phi;

  size_t size() const { return directions.size(); }
};

SphereGrid sphere_grid(int n_theta);

// Product rule on a ball: radial Gauss (weight r^2 absorbed) times a sphere
// grid. Weights sum to the ball volume.
struct BallRule {
  std::vector<Vec3> points;
  std::vector<double> weights;
};

BallRule ball_rule(const Vec3& center, double radius, int n_r, int n_theta);

}  // namespace polyscat
