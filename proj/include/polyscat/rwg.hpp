// rwg.hpp -- divergence-conforming triangle-pair (RWG) basis over the
// interior edges of a surface mesh.
//
// One unknown per edge shared by exactly two triangles. Edges are ordered by
// their sorted vertex pairs, which makes the unknown numbering deterministic
// for a given mesh. Boundary edges of an open mesh (screens) carry no
// unknown: the normal component of the current vanishes there.

#pragma once

#include <vector>

#include "polyscat/mesh.hpp"

namespace polyscat {

struct RwgFunction {
  int edge_v0 = 0, edge_v1 = 0;  // shared edge, v0 < v1
  double edge_length = 0.0;
  int tri_plus = 0, tri_minus = 0;    // plus = smaller triangle index
  int free_vertex_plus = 0, free_vertex_minus = 0;
};

struct RWGBasis {
  const TriangleMesh* mesh = nullptr;
  std::vector<RwgFunction> functions;
  // per triangle: indices into `functions` and the sign (+1 when the
  // triangle is the plus side), up to 3 entries
  std::vector<std::vector<std::pair<int, double>>> triangle_functions;

  int n_dof() const { return static_cast<int>(functions.size()); }

  // f_n(x) for x in one of its triangles; sign +1 / -1 for plus / minus side
  Vec3 value(int n, const Vec3& x, double sign) const;
  // surface divergence on the plus / minus triangle
  double divergence(int n, double sign) const;
};

// Throws ValidationError when the mesh has no interior edges.
RWGBasis build_rwg(const TriangleMesh& mesh);

}  // namespace polyscat
