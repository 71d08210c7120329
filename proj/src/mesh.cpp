#include "polyscat/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

namespace polyscat {

Vec3 TriangleMesh::centroid(int t) const {
  return (triangle_vertex(t, 0) + triangle_vertex(t, 1) + triangle_vertex(t, 2)) / 3.0;
}

Vec3 TriangleMesh::normal(int t) const {
  const Vec3 a = triangle_vertex(t, 0);
  const Vec3 n = (triangle_vertex(t, 1) - a).cross(triangle_vertex(t, 2) - a);
  return n.normalized();
}

double TriangleMesh::area(int t) const {
  const Vec3 a = triangle_vertex(t, 0);
  return 0.5 * (triangle_vertex(t, 1) - a).cross(triangle_vertex(t, 2) - a).norm();
}

Vec3 TriangleMesh::bbox_min() const {
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  for (const auto& v : vertices) lo = lo.cwiseMin(v);
  return lo;
}

Vec3 TriangleMesh::bbox_max() const {
  Vec3 hi = Vec3::Constant(-std::numeric_limits<double>::infinity());
  for (const auto& v : vertices) hi = hi.cwiseMax(v);
  return hi;
}

double TriangleMesh::diameter() const {
  if (vertices.empty()) return 0.0;
  return (bbox_max() - bbox_min()).norm();
}

double TriangleMesh::signed_volume() const {
  double six_v = 0.0;
  for (int t = 0; t < num_triangles(); ++t) {
    six_v += triangle_vertex(t, 0).dot(triangle_vertex(t, 1).cross(triangle_vertex(t, 2)));
  }
  return six_v / 6.0;
}

int EdgeTable::count_with_incidence(int n) const {
  int c = 0;
  for (const auto& e : edges)
    if (static_cast<int>(e.triangles.size()) == n) ++c;
  return c;
}

EdgeTable build_edge_table(const TriangleMesh& mesh) {
  std::map<std::pair<int, int>, std::vector<int>> incidence;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[static_cast<size_t>(t)];
    for (int e = 0; e < 3; ++e) {
      int a = tri[static_cast<size_t>(e)];
      int b = tri[static_cast<size_t>((e + 1) % 3)];
      if (a > b) std::swap(a, b);
      incidence[{a, b}].push_back(t);
    }
  }
  EdgeTable table;
  table.edges.reserve(incidence.size());
  for (auto& [key, tris] : incidence) {
    std::sort(tris.begin(), tris.end());
    table.edges.push_back({key.first, key.second, tris});
  }
  return table;
}

EdgeTable validate_mesh(const TriangleMesh& mesh) {
  if (mesh.triangles.empty()) throw ValidationError("mesh has no triangles");
  const int nv = mesh.num_vertices();
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[static_cast<size_t>(t)];
    for (int idx : tri) {
      if (idx < 0 || idx >= nv)
        throw ValidationError("triangle " + std::to_string(t) + " references vertex " +
                              std::to_string(idx) + " out of range");
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      throw ValidationError("triangle " + std::to_string(t) + " repeats a vertex");
  }

  const Vec3 ext = mesh.bbox_max() - mesh.bbox_min();
  const double bbox_area =
      2.0 * (ext.x() * ext.y() + ext.y() * ext.z() + ext.z() * ext.x());
  const double area_floor = 1e-12 * std::max(bbox_area, 1e-300);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    if (mesh.area(t) <= area_floor)
      throw ValidationError("triangle " + std::to_string(t) + " is degenerate (area " +
                            std::to_string(mesh.area(t)) + ")");
  }

  EdgeTable table = build_edge_table(mesh);
  for (const auto& e : table.edges) {
    if (e.triangles.size() > 2)
      throw ValidationError("edge (" + std::to_string(e.v0) + "," + std::to_string(e.v1) +
                            ") shared by " + std::to_string(e.triangles.size()) +
                            " triangles");
  }
  if (mesh.facet_group.size() != mesh.triangles.size())
    throw ValidationError("facet_group size does not match triangle count");
  return table;
}

bool is_watertight(const TriangleMesh&, const EdgeTable& edges) {
  for (const auto& e : edges.edges)
    if (e.triangles.size() != 2) return false;
  return true;
}

bool is_consistently_oriented(const TriangleMesh& mesh, const EdgeTable& edges) {
  // Edge (a,b) must appear as a->b in one triangle and b->a in the other.
  auto direction = [&](int t, int a, int b) {
    const auto& tri = mesh.triangles[static_cast<size_t>(t)];
    for (int e = 0; e < 3; ++e) {
      if (tri[static_cast<size_t>(e)] == a && tri[static_cast<size_t>((e + 1) % 3)] == b) return +1;
      if (tri[static_cast<size_t>(e)] == b && tri[static_cast<size_t>((e + 1) % 3)] == a) return -1;
    }
    return 0;
  };
  for (const auto& e : edges.edges) {
    if (e.triangles.size() != 2) continue;
    const int d0 = direction(e.triangles[0], e.v0, e.v1);
    const int d1 = direction(e.triangles[1], e.v0, e.v1);
    if (d0 == 0 || d1 == 0 || d0 == d1) return false;
  }
  return true;
}

std::vector<int> screen_boundary_edges(const EdgeTable& edges) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(edges.edges.size()); ++i)
    if (edges.edges[static_cast<size_t>(i)].triangles.size() == 1) out.push_back(i);
  return out;
}

std::vector<int> compute_facet_groups(const TriangleMesh& mesh) {
  const int nt = mesh.num_triangles();
  const double tol = 1e-9 * std::max(mesh.diameter(), 1e-300);

  // triangle adjacency through shared edges
  EdgeTable table = build_edge_table(mesh);
  std::vector<std::vector<int>> neighbors(static_cast<size_t>(nt));
  for (const auto& e : table.edges) {
    if (e.triangles.size() == 2) {
      neighbors[static_cast<size_t>(e.triangles[0])].push_back(e.triangles[1]);
      neighbors[static_cast<size_t>(e.triangles[1])].push_back(e.triangles[0]);
    }
  }

  std::vector<int> group(static_cast<size_t>(nt), -1);
  int next = 0;
  for (int seed = 0; seed < nt; ++seed) {
    if (group[static_cast<size_t>(seed)] >= 0) continue;
    const Vec3 n0 = mesh.normal(seed);
    const double c0 = n0.dot(mesh.triangle_vertex(seed, 0));
    std::vector<int> stack{seed};
    group[static_cast<size_t>(seed)] = next;
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      for (int nb : neighbors[static_cast<size_t>(t)]) {
        if (group[static_cast<size_t>(nb)] >= 0) continue;
        const Vec3 n = mesh.normal(nb);
        if (std::abs(std::abs(n.dot(n0)) - 1.0) > 1e-9) continue;
        bool coplanar = true;
        for (int c = 0; c < 3 && coplanar; ++c)
          coplanar = std::abs(n0.dot(mesh.triangle_vertex(nb, c)) - c0) <= tol;
        if (!coplanar) continue;
        group[static_cast<size_t>(nb)] = next;
        stack.push_back(nb);
      }
    }
    ++next;
  }
  return group;
}

// -------------------------------------------------------------------------
// File I/O

TriangleMesh load_mesh(std::istream& in, const std::string& label) {
  TriangleMesh mesh;
  std::vector<int> file_groups;
  int current_group = -1;  // -1 until the first `g`; promoted later
  int line_no = 0;
  std::string line;
  bool any_group = false;
  while (std::getline(in, line)) {
    ++line_no;
    // strip trailing CR so CRLF files do not poison the float parser
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag[0] == '#') continue;
    auto fail = [&](const std::string& why) {
      throw ParseError(label + ":" + std::to_string(line_no) + ": " + why + ": '" + line + "'");
    };
    if (tag == "v") {
      double x, y, z;
      if (!(ls >> x >> y >> z)) fail("malformed vertex line");
      mesh.vertices.emplace_back(x, y, z);
    } else if (tag == "f") {
      int i, j, k;
      if (!(ls >> i >> j >> k)) fail("malformed face line");
      mesh.triangles.push_back({i - 1, j - 1, k - 1});
      file_groups.push_back(any_group ? current_group : -1);
    } else if (tag == "g") {
      any_group = true;
      ++current_group;
    } else {
      fail("unknown record '" + tag + "'");
    }
  }
  if (any_group) {
    for (auto& g : file_groups)
      if (g < 0) g = ++current_group;  // faces before the first `g`
    mesh.facet_group = file_groups;
  } else {
    mesh.facet_group.assign(mesh.triangles.size(), 0);
    mesh.facet_group = compute_facet_groups(mesh);
  }
  validate_mesh(mesh);
  return mesh;
}

TriangleMesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open mesh file '" + path + "'");
  return load_mesh(in, path);
}

void save_mesh(const TriangleMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  char buf[128];
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x(), v.y(), v.z());
    out << buf;
  }
  int last_group = -1;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    if (mesh.facet_group[static_cast<size_t>(t)] != last_group) {
      last_group = mesh.facet_group[static_cast<size_t>(t)];
      out << "g G" << last_group << "\n";
    }
    const auto& tri = mesh.triangles[static_cast<size_t>(t)];
    out << "f " << tri[0] + 1 << " " << tri[1] + 1 << " " << tri[2] + 1 << "\n";
  }
}

// -------------------------------------------------------------------------
// Planes and rigid transforms

Plane::Plane(const Vec3& n, double c) : normal(n), offset(c) {
  if (std::abs(normal.norm() - 1.0) > 1e-12)
    throw ValidationError("plane normal must be a unit vector");
}

TriangleMesh reflect_mesh(const TriangleMesh& mesh, const Plane& plane) {
  TriangleMesh out = mesh;
  for (auto& v : out.vertices) v = plane.reflect(v);
  for (auto& tri : out.triangles) std::swap(tri[1], tri[2]);
  return out;
}

TriangleMesh translate_mesh(const TriangleMesh& mesh, const Vec3& shift) {
  TriangleMesh out = mesh;
  for (auto& v : out.vertices) v += shift;
  return out;
}

TriangleMesh scale_mesh(const TriangleMesh& mesh, double factor, const Vec3& center) {
  TriangleMesh out = mesh;
  for (auto& v : out.vertices) v = center + factor * (v - center);
  return out;
}

// -------------------------------------------------------------------------
// Generators

namespace {

// Accumulates axis-aligned rectangles subdivided into conforming grids.
//
// Every rectangle is first split at the registered per-axis breakpoints and
// each resulting span is gridded at the common pitch, with node coordinates
// always computed from the ascending form a + (b-a)*(i/m). Two rectangles
// meeting along a line therefore generate bit-identical node coordinates,
// and welding by exact identity yields a crack-free (edge-manifold) mesh.
class RectMeshBuilder {
public:
  explicit RectMeshBuilder(double pitch) : pitch_(pitch) {}

  void add_breakpoint(int axis, double value) {
    breakpoints_[static_cast<size_t>(axis)].push_back(value);
  }

  // Rectangle in the plane {axis w = w_coord} spanning [u0,u1] x [v0,v1] on
  // axes (ua, va). The interval endpoints must be the same double values
  // wherever two rectangles meet; node coordinates then weld exactly.
  // normal_sign: emitted normal = normal_sign * unit(w axis).
  void add_rect(int ua, double u0, double u1, int va, double v0, double v1,
                double w_coord, int normal_sign, int group,
                FaceSplit split = FaceSplit::Diagonal) {
    if (ua == va || u0 >= u1 || v0 >= v1) throw ValidationError("bad rectangle spec");
    const int wa = 3 - ua - va;
    const std::vector<double> unodes = axis_nodes(ua, u0, u1);
    const std::vector<double> vnodes = axis_nodes(va, v0, v1);
    // cross(u_axis, v_axis) = +w for cyclic (ua,va,wa), else -w
    const bool cyclic = (va == (ua + 1) % 3);
    const bool reverse = (cyclic ? +1 : -1) != normal_sign;

    auto node = [&](int i, int j) {
      Vec3 p;
      p[ua] = unodes[static_cast<size_t>(i)];
      p[va] = vnodes[static_cast<size_t>(j)];
      p[wa] = w_coord;
      return vertex_id(p);
    };
    const int nu = static_cast<int>(unodes.size()) - 1;
    const int nv = static_cast<int>(vnodes.size()) - 1;
    for (int i = 0; i < nu; ++i) {
      for (int j = 0; j < nv; ++j) {
        int a = node(i, j), b = node(i + 1, j), c = node(i + 1, j + 1), d = node(i, j + 1);
        if (reverse) std::swap(b, d);
        if (split == FaceSplit::Diagonal) {
          push_tri(a, b, c, group);
          push_tri(a, c, d, group);
        } else {
          Vec3 pm;
          pm[ua] = 0.5 * (unodes[static_cast<size_t>(i)] + unodes[static_cast<size_t>(i + 1)]);
          pm[va] = 0.5 * (vnodes[static_cast<size_t>(j)] + vnodes[static_cast<size_t>(j + 1)]);
          pm[wa] = w_coord;
          const int m = vertex_id(pm);
          push_tri(a, b, m, group);
          push_tri(b, c, m, group);
          push_tri(c, d, m, group);
          push_tri(d, a, m, group);
        }
      }
    }
  }

  TriangleMesh take() {
    TriangleMesh m;
    m.vertices = std::move(vertices_);
    m.triangles = std::move(triangles_);
    m.facet_group = std::move(groups_);
    return m;
  }

private:
  // Ascending nodes over [lo,hi], split at breakpoints, each span gridded at
  // the pitch with the canonical form a + (b-a)*(i/m).
  std::vector<double> axis_nodes(int axis, double lo, double hi) const {
    std::vector<double> cuts{lo};
    for (double b : breakpoints_[static_cast<size_t>(axis)])
      if (b > lo && b < hi) cuts.push_back(b);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> nodes{lo};
    for (size_t s = 0; s + 1 < cuts.size(); ++s) {
      const double a = cuts[s], b = cuts[s + 1];
      const int m = std::max(1, static_cast<int>(std::lround((b - a) / pitch_)));
      for (int i = 1; i <= m; ++i)
        nodes.push_back(i == m ? b : a + (b - a) * (static_cast<double>(i) / m));
    }
    return nodes;
  }

  int vertex_id(const Vec3& p) {
    std::array<double, 3> key{p.x() + 0.0, p.y() + 0.0, p.z() + 0.0};  // normalise -0.0
    char bytes[24];
    std::memcpy(bytes, key.data(), 24);
    const std::string s(bytes, 24);
    auto it = index_.find(s);
    if (it != index_.end()) return it->second;
    const int id = static_cast<int>(vertices_.size());
    vertices_.emplace_back(key[0], key[1], key[2]);
    index_.emplace(s, id);
    return id;
  }

  void push_tri(int a, int b, int c, int group) {
    triangles_.push_back({a, b, c});
    groups_.push_back(group);
  }

  double pitch_;
  std::array<std::vector<double>, 3> breakpoints_;
  std::vector<Vec3> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<int> groups_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace

TriangleMesh make_box(const Vec3& half_extent, const Vec3& center, int n, FaceSplit split) {
  if (n < 1) throw ValidationError("box subdivision must be >= 1");
  const double pitch = 2.0 * half_extent.maxCoeff() / n;
  RectMeshBuilder b(pitch);
  const double x0 = center.x() - half_extent.x(), x1 = center.x() + half_extent.x();
  const double y0 = center.y() - half_extent.y(), y1 = center.y() + half_extent.y();
  const double z0 = center.z() - half_extent.z(), z1 = center.z() + half_extent.z();
  b.add_rect(0, x0, x1, 1, y0, y1, z1, +1, 0, split);  // +z
  b.add_rect(0, x0, x1, 1, y0, y1, z0, -1, 1, split);  // -z
  b.add_rect(1, y0, y1, 2, z0, z1, x1, +1, 2, split);  // +x
  b.add_rect(1, y0, y1, 2, z0, z1, x0, -1, 3, split);  // -x
  b.add_rect(0, x0, x1, 2, z0, z1, y1, +1, 4, split);  // +y
  b.add_rect(0, x0, x1, 2, z0, z1, y0, -1, 5, split);  // -y
  TriangleMesh m = b.take();
  validate_mesh(m);
  return m;
}

TriangleMesh make_cube(double side, const Vec3& center, int n, FaceSplit split) {
  return make_box(Vec3::Constant(side / 2.0), center, n, split);
}

TriangleMesh make_square_screen(double side, const Vec3& center, int n) {
  if (n < 1) throw ValidationError("screen subdivision must be >= 1");
  RectMeshBuilder b(side / n);
  const double h = side / 2.0;
  b.add_rect(0, center.x() - h, center.x() + h, 1, center.y() - h, center.y() + h,
             center.z(), +1, 0);
  TriangleMesh m = b.take();
  validate_mesh(m);
  return m;
}

TriangleMesh make_icosphere(double radius, const Vec3& center, int level) {
  if (level < 0 || level > 7) throw ValidationError("icosphere level out of range [0,7]");
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> verts = {
      {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
  for (auto& v : verts) v.normalize();
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
      {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
      {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};

  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const int id = static_cast<int>(verts.size());
      verts.push_back((verts[static_cast<size_t>(a)] + verts[static_cast<size_t>(b)]).normalized());
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }

  TriangleMesh m;
  m.vertices.reserve(verts.size());
  for (const auto& v : verts) m.vertices.push_back(center + radius * v);
  m.triangles = std::move(faces);
  m.facet_group.resize(m.triangles.size());
  for (int t = 0; t < m.num_triangles(); ++t) m.facet_group[static_cast<size_t>(t)] = t;
  validate_mesh(m);
  return m;
}

TriangleMesh make_dented_cube(double side, const Vec3& center, int n, double depth,
                              double patch_fraction) {
  const double h = side / 2.0;
  const double w = patch_fraction * side / 2.0;
  if (depth <= 0.0 || depth >= side || w <= 0.0 || w >= h)
    throw ValidationError("dent parameters out of range");
  RectMeshBuilder b(side / n);
  const double x0 = center.x() - h, x1 = center.x() + h;
  const double y0 = center.y() - h, y1 = center.y() + h;
  const double z0 = center.z() - h, z1 = center.z() + h;
  const double xa = center.x() - w, xb = center.x() + w;
  const double ya = center.y() - w, yb = center.y() + w;
  const double zf = z1 - depth;  // dent floor
  b.add_breakpoint(0, xa);
  b.add_breakpoint(0, xb);
  b.add_breakpoint(1, ya);
  b.add_breakpoint(1, yb);
  b.add_breakpoint(2, zf);
  // top frame around the dent opening, normals +z
  b.add_rect(0, x0, xa, 1, y0, y1, z1, +1, 0);
  b.add_rect(0, xb, x1, 1, y0, y1, z1, +1, 0);
  b.add_rect(0, xa, xb, 1, y0, ya, z1, +1, 0);
  b.add_rect(0, xa, xb, 1, yb, y1, z1, +1, 0);
  // dent floor, normal +z
  b.add_rect(0, xa, xb, 1, ya, yb, zf, +1, 1);
  // dent walls; outward from the solid means into the cavity
  b.add_rect(1, ya, yb, 2, zf, z1, xa, +1, 2);
  b.add_rect(1, ya, yb, 2, zf, z1, xb, -1, 3);
  b.add_rect(0, xa, xb, 2, zf, z1, ya, +1, 4);
  b.add_rect(0, xa, xb, 2, zf, z1, yb, -1, 5);
  // remaining five cube faces
  b.add_rect(0, x0, x1, 1, y0, y1, z0, -1, 6);
  b.add_rect(1, y0, y1, 2, z0, z1, x1, +1, 7);
  b.add_rect(1, y0, y1, 2, z0, z1, x0, -1, 8);
  b.add_rect(0, x0, x1, 2, z0, z1, y1, +1, 9);
  b.add_rect(0, x0, x1, 2, z0, z1, y0, -1, 10);
  TriangleMesh m = b.take();
  validate_mesh(m);
  return m;
}

TriangleMesh make_notched_cube(double side, const Vec3& center, int n, double t) {
  const double h = side / 2.0;
  const double w = t / 2.0;  // groove half width; depth equals t
  if (t <= 0.0 || t >= h) throw ValidationError("notch parameter out of range");
  RectMeshBuilder b(side / n);
  const double x0 = center.x() - h, x1 = center.x() + h;
  const double y0 = center.y() - h, y1 = center.y() + h;
  const double z0 = center.z() - h, z1 = center.z() + h;
  const double xa = center.x() - w, xb = center.x() + w;
  const double zf = z1 - t;  // groove floor
  b.add_breakpoint(0, xa);
  b.add_breakpoint(0, xb);
  b.add_breakpoint(2, zf);
  // top strips, +z
  b.add_rect(0, x0, xa, 1, y0, y1, z1, +1, 0);
  b.add_rect(0, xb, x1, 1, y0, y1, z1, +1, 0);
  // groove floor and walls
  b.add_rect(0, xa, xb, 1, y0, y1, zf, +1, 1);
  b.add_rect(1, y0, y1, 2, zf, z1, xa, +1, 2);
  b.add_rect(1, y0, y1, 2, zf, z1, xb, -1, 3);
  // bottom and x sides
  b.add_rect(0, x0, x1, 1, y0, y1, z0, -1, 4);
  b.add_rect(1, y0, y1, 2, z0, z1, x1, +1, 5);
  b.add_rect(1, y0, y1, 2, z0, z1, x0, -1, 6);
  // notched y sides: three rectangles each (builder splits at breakpoints)
  b.add_rect(0, x0, xa, 2, z0, z1, y1, +1, 7);
  b.add_rect(0, xb, x1, 2, z0, z1, y1, +1, 7);
  b.add_rect(0, xa, xb, 2, z0, zf, y1, +1, 7);
  b.add_rect(0, x0, xa, 2, z0, z1, y0, -1, 8);
  b.add_rect(0, xb, x1, 2, z0, z1, y0, -1, 8);
  b.add_rect(0, xa, xb, 2, z0, zf, y0, -1, 8);
  TriangleMesh m = b.take();
  validate_mesh(m);
  return m;
}

}  // namespace polyscat
