#include "polyscat/geometry_checks.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

namespace polyscat {

ConnectednessReport exterior_connectedness(const Scatterer& a, double t, double s, double res) {
  if (!(0.0 < s && s <= t)) throw ValidationError("need 0 < s <= t");
  if (res > s / 4.0)
    throw ValidationError("voxel resolution too coarse: need res <= s/4");

  ConnectednessReport rep;
  rep.resolution = res;

  const TriangleMesh& mesh = a.mesh();
  if (mesh.num_triangles() == 0) {  // empty scatterer: trivially connected
    rep.connected = true;
    rep.component_count = 1;
    return rep;
  }

  // Domain: bounding box inflated so the far exterior wraps around the set.
  const double margin = 2.0 * t + 4.0 * res;
  const Vec3 lo = mesh.bbox_min() - Vec3::Constant(margin);
  const Vec3 hi = mesh.bbox_max() + Vec3::Constant(margin);
  const int nx = static_cast<int>(std::ceil((hi.x() - lo.x()) / res)) + 1;
  const int ny = static_cast<int>(std::ceil((hi.y() - lo.y()) / res)) + 1;
  const int nz = static_cast<int>(std::ceil((hi.z() - lo.z()) / res)) + 1;
  auto id = [&](int i, int j, int k) { return (static_cast<size_t>(i) * ny + j) * nz + k; };
  auto center = [&](int i, int j, int k) -> Vec3 { return lo + res * Vec3(i, j, k); };

  // dist(x, Sigma) per voxel: distance to the surface, zero inside obstacles.
  std::vector<float> dist(static_cast<size_t>(nx) * ny * nz);
  const bool solid = a.kind() == ScattererKind::Obstacle;
  const Vec3 mesh_lo = mesh.bbox_min(), mesh_hi = mesh.bbox_max();
  auto in_bbox = [&](const Vec3& p) {
    return (p.array() >= mesh_lo.array()).all() && (p.array() <= mesh_hi.array()).all();
  };
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      for (int k = 0; k < nz; ++k) {
        const Vec3 p = center(i, j, k);
        double d = a.tree().distance_upto(p, t + 2.0 * res);
        if (solid && d > 0.0 && in_bbox(p) && winding_number(mesh, p) > 0.5) d = 0.0;
        dist[id(i, j, k)] = static_cast<float>(d);
      }
    }
  }

  // flood fill the eroded exterior { dist > s }, 6-connectivity
  std::vector<int> comp(dist.size(), -1);
  int ncomp = 0;
  std::vector<size_t> stack;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      for (int k = 0; k < nz; ++k) {
        const size_t v = id(i, j, k);
        if (comp[v] >= 0 || dist[v] <= s) continue;
        comp[v] = ncomp;
        stack.assign(1, v);
        while (!stack.empty()) {
          const size_t u = stack.back();
          stack.pop_back();
          const int ui = static_cast<int>(u / (static_cast<size_t>(ny) * nz));
          const int uj = static_cast<int>((u / nz) % ny);
          const int uk = static_cast<int>(u % nz);
          const int di[6] = {1, -1, 0, 0, 0, 0};
          const int dj[6] = {0, 0, 1, -1, 0, 0};
          const int dk[6] = {0, 0, 0, 0, 1, -1};
          for (int m = 0; m < 6; ++m) {
            const int wi = ui + di[m], wj = uj + dj[m], wk = uk + dk[m];
            if (wi < 0 || wi >= nx || wj < 0 || wj >= ny || wk < 0 || wk >= nz) continue;
            const size_t w = id(wi, wj, wk);
            if (comp[w] < 0 && dist[w] > s) {
              comp[w] = ncomp;
              stack.push_back(w);
            }
          }
        }
        ++ncomp;
      }
    }
  }
  rep.component_count = ncomp;

  // ball centers: voxels with dist > t; all must share one component
  int first_comp = -1;
  Vec3 first_center = Vec3::Zero();
  for (int i = 0; i < nx && rep.connected; ++i) {
    for (int j = 0; j < ny && rep.connected; ++j) {
      for (int k = 0; k < nz; ++k) {
        const size_t v = id(i, j, k);
        if (dist[v] <= t) continue;
        if (first_comp < 0) {
          first_comp = comp[v];
          first_center = center(i, j, k);
        } else if (comp[v] != first_comp) {
          rep.connected = false;
          rep.witness = std::make_pair(first_center, center(i, j, k));
          break;
        }
      }
    }
  }
  return rep;
}

// -------------------------------------------------------------------------

namespace {

// Minimal width of the convex hull of 2D points (rotating calipers).
double min_width_2d(std::vector<Eigen::Vector2d> pts) {
  if (pts.size() < 3) return 0.0;
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
  };
  std::vector<Eigen::Vector2d> hull(2 * pts.size());
  size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  const size_t lower = k + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0) --k;
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  if (hull.size() < 3) return 0.0;

  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < hull.size(); ++i) {
    const Eigen::Vector2d e = hull[(i + 1) % hull.size()] - hull[i];
    const double len = e.norm();
    if (len == 0.0) continue;
    const Eigen::Vector2d n(-e.y() / len, e.x() / len);
    double w = 0.0;
    for (const auto& p : hull) w = std::max(w, std::abs(n.dot(p - hull[i])));
    best = std::min(best, w);
  }
  return best;
}

}  // namespace

ClassMembershipReport validate_class_membership(const Scatterer& a) {
  ClassMembershipReport rep;
  const TriangleMesh& mesh = a.mesh();
  const double h = a.class_params().h;
  const double plane_tol = 1e-9 * std::max(mesh.diameter(), 1e-300);

  std::map<int, std::vector<int>> cells;
  for (int t = 0; t < mesh.num_triangles(); ++t)
    cells[mesh.facet_group[static_cast<size_t>(t)]].push_back(t);

  for (const auto& [group, tris] : cells) {
    CellReport cr;
    cr.group = group;
    cr.triangle_count = static_cast<int>(tris.size());

    // plane of the cell from its largest triangle
    int ref = tris.front();
    for (int t : tris)
      if (mesh.area(t) > mesh.area(ref)) ref = t;
    const Vec3 n = mesh.normal(ref);
    const double c0 = n.dot(mesh.triangle_vertex(ref, 0));

    std::set<int> vert_ids;
    for (int t : tris)
      for (int c = 0; c < 3; ++c) vert_ids.insert(mesh.triangles[static_cast<size_t>(t)][static_cast<size_t>(c)]);
    for (int vid : vert_ids)
      cr.plane_deviation = std::max(
          cr.plane_deviation, std::abs(n.dot(mesh.vertices[static_cast<size_t>(vid)]) - c0));
    cr.planar = cr.plane_deviation <= plane_tol;

    // project to the plane, measure the minimal width
    Vec3 u = n.unitOrthogonal();
    Vec3 v = n.cross(u);
    std::vector<Eigen::Vector2d> flat;
    flat.reserve(vert_ids.size());
    for (int vid : vert_ids) {
      const Vec3& p = mesh.vertices[static_cast<size_t>(vid)];
      flat.emplace_back(u.dot(p), v.dot(p));
    }
    cr.min_feature_size = min_width_2d(flat);
    cr.feature_pass = cr.min_feature_size >= h - 1e-12;

    // advisory: max turning angle along the cell boundary loop
    std::map<std::pair<int, int>, int> edge_count;
    for (int t : tris) {
      const auto& tri = mesh.triangles[static_cast<size_t>(t)];
      for (int e = 0; e < 3; ++e) {
        auto key = std::minmax(tri[static_cast<size_t>(e)], tri[static_cast<size_t>((e + 1) % 3)]);
        edge_count[key]++;
      }
    }
    std::map<int, std::vector<int>> boundary_next;
    for (const auto& [key, count] : edge_count) {
      if (count == 1) {
        boundary_next[key.first].push_back(key.second);
        boundary_next[key.second].push_back(key.first);
      }
    }
    for (const auto& [vid, nbrs] : boundary_next) {
      if (nbrs.size() != 2) continue;
      const Vec3 e0 = (mesh.vertices[static_cast<size_t>(vid)] - mesh.vertices[static_cast<size_t>(nbrs[0])]).normalized();
      const Vec3 e1 = (mesh.vertices[static_cast<size_t>(nbrs[1])] - mesh.vertices[static_cast<size_t>(vid)]).normalized();
      const double turn = std::acos(std::clamp(e0.dot(e1), -1.0, 1.0));
      cr.max_turning_angle = std::max(cr.max_turning_angle, turn);
    }

    if (!cr.planar || !cr.feature_pass) rep.all_pass = false;
    rep.cells.push_back(cr);
  }
  rep.warnings.push_back(
      "Lipschitz constant check is heuristic (boundary turning angles); advisory only");
  return rep;
}

}  // namespace polyscat
