// distances.hpp -- scatterer representation and the three set distances used
// by the inverse-problem experiments.
//
// All sup-type distances are approximated by dense sampling at a caller
// spacing `res` with exact point-to-triangle distances; the reported value is
// accurate to within res and the resolution is carried in the report.

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polyscat/mesh.hpp"
#include "polyscat/mesh_queries.hpp"

namespace polyscat {

enum class ScattererKind { Obstacle, Screen, Mixed };

std::string to_string(ScattererKind k);

// A priori class constants of the admissible scatterer families
// (r, L, R0, h). Only R0 is enforced structurally; h feeds the cell checks.
struct ClassParams {
  double r = 0.1;
  double lipschitz = 1.0;
  double R0 = 1.0;
  double h = 0.1;
};

class Scatterer {
public:
  // Validates the mesh and the kind-specific invariants:
  //   Obstacle: watertight, consistently oriented, outward normals
  //             (positive signed volume)
  //   Screen:   at least one boundary edge, no interior expected
  //   Mixed:    any valid mesh
  // Every kind requires the mesh to fit inside the ball of radius R0.
  Scatterer(TriangleMesh mesh, ScattererKind kind, ClassParams params);

  const TriangleMesh& mesh() const { return mesh_; }
  ScattererKind kind() const { return kind_; }
  const ClassParams& class_params() const { return params_; }
  const AabbTree& tree() const { return *tree_; }
  double bounding_radius() const { return bounding_radius_; }

  double distance_to_surface(const Vec3& p) const { return tree_->distance(p); }

  // Set membership x in Sigma. Obstacles use the generalized winding number
  // with threshold 0.5; screens (empty interior) use distance <= tol to the
  // surface. `tol` is typically the sampling resolution of the caller.
  bool contains(const Vec3& p, double tol) const;

private:
  TriangleMesh mesh_;
  ScattererKind kind_;
  ClassParams params_;
  std::unique_ptr<AabbTree> tree_;
  double bounding_radius_;
};

struct DistanceReport {
  double d = 0.0;        // boundary distance restricted outside the other set
  double d_hat = 0.0;    // Hausdorff distance of the boundaries
  double d_tilde = 0.0;  // Hausdorff distance of the sets
  double sampling_resolution = 0.0;
};

// Hausdorff distance between the two sets (solids for obstacles, surfaces
// for screens), error <= res.
double hausdorff_tilde(const Scatterer& a, const Scatterer& b, double res);

// Hausdorff distance between the boundary surfaces, error <= res.
double hausdorff_hat(const Scatterer& a, const Scatterer& b, double res);

// max of the two directed sups over boundary points lying outside the other
// scatterer; see hausdorff_hat for the error model.
double distance_d(const Scatterer& a, const Scatterer& b, double res);

DistanceReport distance_report(const Scatterer& a, const Scatterer& b, double res);

// Monotone table for the uniform-exterior-connectedness modulus delta.
// Evaluation is piecewise linear; queries outside the knot range clamp.
struct MonotoneTable {
  std::vector<double> s;      // strictly increasing arguments
  std::vector<double> value;  // nondecreasing values

  static MonotoneTable identity(double s_max, int knots = 64);
  double operator()(double x) const;
  void validate() const;
};

// delta^{-1}(t) = min{ sup{ s : delta(s) <= t }, 2 R0 } with the
// right-continuity convention, computed by bisection on the table.
double delta_inverse(double t, const MonotoneTable& delta, double R0);

}  // namespace polyscat
