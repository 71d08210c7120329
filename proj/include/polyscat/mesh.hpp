// mesh.hpp -- indexed triangle surface meshes for polyhedral scatterers.
//
// File format (ASCII, one record per line, UTF-8, LF):
//   # comment
//   g NAME          starts a new facet group
//   v x y z         vertex, decimal floats
//   f i j k         triangle, 1-based vertex indices
// If no groups are present in the file they are recovered by coplanarity
// clustering of adjacent triangles.

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "polyscat/common.hpp"

namespace polyscat {

struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;   // 0-based vertex indices
  std::vector<int> facet_group;                // one label per triangle

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_triangles() const { return static_cast<int>(triangles.size()); }

  Vec3 triangle_vertex(int t, int corner) const {
    return vertices[static_cast<size_t>(triangles[static_cast<size_t>(t)][static_cast<size_t>(corner)])];
  }
  Vec3 centroid(int t) const;
  Vec3 normal(int t) const;    // unit normal, right-hand rule over (v0,v1,v2)
  double area(int t) const;
  double diameter() const;     // bounding-box diagonal
  Vec3 bbox_min() const;
  Vec3 bbox_max() const;

  // Signed volume by the divergence theorem; positive means outward
  // orientation for a watertight mesh.
  double signed_volume() const;
};

// Edge incidence table. Edges are keyed by the sorted vertex pair and
// enumerated in lexicographic order, which fixes the RWG unknown ordering.
struct EdgeTable {
  struct Edge {
    int v0, v1;                 // v0 < v1
    std::vector<int> triangles; // incident triangle indices, ascending
  };
  std::vector<Edge> edges;

  int count_with_incidence(int n) const;
};

EdgeTable build_edge_table(const TriangleMesh& mesh);

// Validates mesh invariants; throws ValidationError on
//   * out-of-range vertex index
//   * degenerate triangle (area <= 1e-12 x bounding-box surface area)
//   * edge shared by more than two triangles
// Returns the edge table so callers can reuse it.
EdgeTable validate_mesh(const TriangleMesh& mesh);

bool is_watertight(const TriangleMesh& mesh, const EdgeTable& edges);

// True when every shared edge is traversed in opposite directions by its
// two incident triangles.
bool is_consistently_oriented(const TriangleMesh& mesh, const EdgeTable& edges);

// Indices of edges incident to exactly one triangle (the screen boundary).
std::vector<int> screen_boundary_edges(const EdgeTable& edges);

// Groups coplanar, edge-connected triangles; used when a mesh file carries
// no `g` records. Tolerance 1e-9 x mesh diameter on plane offsets.
std::vector<int> compute_facet_groups(const TriangleMesh& mesh);

TriangleMesh load_mesh(const std::string& path);
TriangleMesh load_mesh(std::istream& in, const std::string& label);
void save_mesh(const TriangleMesh& mesh, const std::string& path);

// -------------------------------------------------------------------------
// Planes and reflections

struct Plane {
  Vec3 normal;    // unit
  double offset;  // plane = { x : normal . x = offset }

  Plane(const Vec3& n, double c);
  Vec3 reflect(const Vec3& x) const {
    return x - 2.0 * (normal.dot(x) - offset) * normal;
  }
  Mat3 reflection_matrix() const {
    return Mat3::Identity() - 2.0 * normal * normal.transpose();
  }
};

// Reflects vertices through the plane and flips triangle winding so that a
// watertight mesh keeps outward normals. Double reflection restores the
// original vertex coordinates exactly.
TriangleMesh reflect_mesh(const TriangleMesh& mesh, const Plane& plane);

TriangleMesh translate_mesh(const TriangleMesh& mesh, const Vec3& shift);
TriangleMesh scale_mesh(const TriangleMesh& mesh, double factor, const Vec3& center);

// -------------------------------------------------------------------------
// Built-in generators (all centred at `center`)

enum class FaceSplit {
  Diagonal,  // 2 triangles per grid quad
  Cross      // 4 triangles per grid quad; mirror symmetric about mid-planes
};

// Axis-aligned box surface, faces subdivided n x n.
TriangleMesh make_box(const Vec3& half_extent, const Vec3& center, int n,
                      FaceSplit split = FaceSplit::Diagonal);
TriangleMesh make_cube(double side, const Vec3& center, int n,
                       FaceSplit split = FaceSplit::Diagonal);

// Open square screen in the plane z = center.z, side x side, n x n grid.
TriangleMesh make_square_screen(double side, const Vec3& center, int n);

// Geodesic sphere: icosahedron subdivided `level` times, vertices projected
// onto the sphere. 20 * 4^level triangles.
TriangleMesh make_icosphere(double radius, const Vec3& center, int level);

// Cube with the central patch_fraction x patch_fraction patch of the +z face
// pushed inward by `depth` (flat bottom, sloped rim).
TriangleMesh make_dented_cube(double side, const Vec3& center, int n,
                              double depth, double patch_fraction = 0.5);

// Cube with a square groove of width and depth `t` cut along the y axis in
// the +z face.
TriangleMesh make_notched_cube(double side, const Vec3& center, int n, double t);

}  // namespace polyscat
