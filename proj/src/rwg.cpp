#include "polyscat/rwg.hpp"

namespace polyscat {

Vec3 RWGBasis::value(int n, const Vec3& x, double sign) const {
  const RwgFunction& f = functions[static_cast<size_t>(n)];
  if (sign > 0) {
    const double area = mesh->area(f.tri_plus);
    return (f.edge_length / (2.0 * area)) * (x - mesh->vertices[static_cast<size_t>(f.free_vertex_plus)]);
  }
  const double area = mesh->area(f.tri_minus);
  return (f.edge_length / (2.0 * area)) * (mesh->vertices[static_cast<size_t>(f.free_vertex_minus)] - x);
}

double RWGBasis::divergence(int n, double sign) const {
  const RwgFunction& f = functions[static_cast<size_t>(n)];
  if (sign > 0) return f.edge_length / mesh->area(f.tri_plus);
  return -f.edge_length / mesh->area(f.tri_minus);
}

RWGBasis build_rwg(const TriangleMesh& mesh) {
  RWGBasis basis;
  basis.mesh = &mesh;
  basis.triangle_functions.resize(static_cast<size_t>(mesh.num_triangles()));

  const EdgeTable table = build_edge_table(mesh);
  for (const auto& e : table.edges) {
    if (e.triangles.size() != 2) continue;
    RwgFunction f;
    f.edge_v0 = e.v0;
    f.edge_v1 = e.v1;
    f.edge_length = (mesh.vertices[static_cast<size_t>(e.v1)] - mesh.vertices[static_cast<size_t>(e.v0)]).norm();
    f.tri_plus = e.triangles[0];
    f.tri_minus = e.triangles[1];
    auto free_vertex = [&](int t) {
      for (int c = 0; c < 3; ++c) {
        const int v = mesh.triangles[static_cast<size_t>(t)][static_cast<size_t>(c)];
        if (v != e.v0 && v != e.v1) return v;
      }
      throw ValidationError("edge does not belong to its triangle");
    };
    f.free_vertex_plus = free_vertex(f.tri_plus);
    f.free_vertex_minus = free_vertex(f.tri_minus);
    const int id = static_cast<int>(basis.functions.size());
    basis.functions.push_back(f);
    basis.triangle_functions[static_cast<size_t>(f.tri_plus)].emplace_back(id, +1.0);
    basis.triangle_functions[static_cast<size_t>(f.tri_minus)].emplace_back(id, -1.0);
  }
  if (basis.functions.empty())
    throw ValidationError("mesh has no interior edges; no RWG unknowns");
  return basis;
}

}  // namespace polyscat
