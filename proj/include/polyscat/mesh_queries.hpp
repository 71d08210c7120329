// mesh_queries.hpp -- proximity and point-in-solid queries on triangle meshes.

#pragma once

#include <memory>
#include <vector>

#include "polyscat/common.hpp"
#include "polyscat/mesh.hpp"

namespace polyscat {

// Exact closest point on a single triangle (Ericson's region walk).
Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

// Axis-aligned bounding-box tree over mesh triangles for nearest-surface
// queries. Build once, query from many threads.
class AabbTree {
public:
  explicit AabbTree(const TriangleMesh& mesh);

  double distance(const Vec3& p) const;
  // Distance capped at `bound`: returns min(distance, bound); allows early
  // pruning in sup-distance scans.
  double distance_upto(const Vec3& p, double bound) const;

private:
  struct Node {
    Vec3 lo, hi;
    int left = -1, right = -1;   // children, or
    int begin = 0, end = 0;      // leaf triangle range
  };
  double node_lower_bound(const Node& n, const Vec3& p) const;
  void query(int node, const Vec3& p, double& best) const;
  int build(int begin, int end, std::vector<Vec3>& centroids, std::vector<int>& order);

  const TriangleMesh* mesh_;
  std::vector<Node> nodes_;
  std::vector<int> tri_order_;
};

// Generalized winding number of the surface around p (sum of signed solid
// angles / 4pi). Approximately 1 inside a watertight outward-oriented mesh,
// 0 outside; robust to small cracks.
double winding_number(const TriangleMesh& mesh, const Vec3& p);

// Surface sample points with spacing <= res: each triangle is subdivided
// barycentrically and all sub-vertices are emitted (deduplicated per
// triangle only; shared edges repeat, which is harmless for sup scans).
std::vector<Vec3> sample_surface(const TriangleMesh& mesh, double res);

// Lattice points with spacing `res` strictly inside the solid
// (winding > 0.5). Intended for obstacles.
std::vector<Vec3> sample_interior(const TriangleMesh& mesh, double res);

}  // namespace polyscat
