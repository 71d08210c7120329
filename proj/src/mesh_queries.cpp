#include "polyscat/mesh_queries.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace polyscat {

Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return a;

  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return b;

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return a + (d1 / (d1 - d3)) * ab;

  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return c;

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return a + (d2 / (d2 - d6)) * ac;

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0)
    return b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b);

  const double denom = 1.0 / (va + vb + vc);
  return a + ab * (vb * denom) + ac * (vc * denom);
}

double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  return (p - closest_point_on_triangle(p, a, b, c)).norm();
}

// -------------------------------------------------------------------------

AabbTree::AabbTree(const TriangleMesh& mesh) : mesh_(&mesh) {
  const int nt = mesh.num_triangles();
  if (nt == 0) throw ValidationError("AabbTree over empty mesh");
  tri_order_.resize(static_cast<size_t>(nt));
  std::iota(tri_order_.begin(), tri_order_.end(), 0);
  std::vector<Vec3> centroids(static_cast<size_t>(nt));
  for (int t = 0; t < nt; ++t) centroids[static_cast<size_t>(t)] = mesh.centroid(t);
  nodes_.reserve(static_cast<size_t>(2 * nt));
  build(0, nt, centroids, tri_order_);
}

int AabbTree::build(int begin, int end, std::vector<Vec3>& centroids, std::vector<int>& order) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = -lo;
  for (int i = begin; i < end; ++i) {
    const int t = order[static_cast<size_t>(i)];
    for (int c = 0; c < 3; ++c) {
      lo = lo.cwiseMin(mesh_->triangle_vertex(t, c));
      hi = hi.cwiseMax(mesh_->triangle_vertex(t, c));
    }
  }
  nodes_[static_cast<size_t>(id)].lo = lo;
  nodes_[static_cast<size_t>(id)].hi = hi;

  if (end - begin <= 4) {
    nodes_[static_cast<size_t>(id)].begin = begin;
    nodes_[static_cast<size_t>(id)].end = end;
    return id;
  }
  int axis = 0;
  (hi - lo).maxCoeff(&axis);
  const int mid = (begin + end) / 2;
  std::nth_element(order.begin() + begin, order.begin() + mid, order.begin() + end,
                   [&](int ta, int tb) {
                     return centroids[static_cast<size_t>(ta)][axis] < centroids[static_cast<size_t>(tb)][axis];
                   });
  const int l = build(begin, mid, centroids, order);
  const int r = build(mid, end, centroids, order);
  nodes_[static_cast<size_t>(id)].left = l;
  nodes_[static_cast<size_t>(id)].right = r;
  nodes_[static_cast<size_t>(id)].begin = nodes_[static_cast<size_t>(id)].end = 0;
  return id;
}

double AabbTree::node_lower_bound(const Node& n, const Vec3& p) const {
  const Vec3 d = (n.lo - p).cwiseMax(p - n.hi).cwiseMax(0.0);
  return d.norm();
}

void AabbTree::query(int node, const Vec3& p, double& best) const {
  const Node& n = nodes_[static_cast<size_t>(node)];
  if (node_lower_bound(n, p) >= best) return;
  if (n.left < 0) {
    for (int i = n.begin; i < n.end; ++i) {
      const int t = tri_order_[static_cast<size_t>(i)];
      const double d = point_triangle_distance(p, mesh_->triangle_vertex(t, 0),
                                               mesh_->triangle_vertex(t, 1),
                                               mesh_->triangle_vertex(t, 2));
      best = std::min(best, d);
    }
    return;
  }
  const double dl = node_lower_bound(nodes_[static_cast<size_t>(n.left)], p);
  const double dr = node_lower_bound(nodes_[static_cast<size_t>(n.right)], p);
  if (dl < dr) {
    query(n.left, p, best);
    query(n.right, p, best);
  } else {
    query(n.right, p, best);
    query(n.left, p, best);
  }
}

double AabbTree::distance(const Vec3& p) const {
  return distance_upto(p, std::numeric_limits<double>::infinity());
}

double AabbTree::distance_upto(const Vec3& p, double bound) const {
  double best = bound;
  query(0, p, best);
  return best;
}

// -------------------------------------------------------------------------

double winding_number(const TriangleMesh& mesh, const Vec3& p) {
  // van Oosterom-Strackee signed solid angles
  double total = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Vec3 a = mesh.triangle_vertex(t, 0) - p;
    const Vec3 b = mesh.triangle_vertex(t, 1) - p;
    const Vec3 c = mesh.triangle_vertex(t, 2) - p;
    const double la = a.norm(), lb = b.norm(), lc = c.norm();
    const double num = a.dot(b.cross(c));
    const double den = la * lb * lc + a.dot(b) * lc + a.dot(c) * lb + b.dot(c) * la;
    total += 2.0 * std::atan2(num, den);
  }
  return total / (4.0 * kPi);
}

std::vector<Vec3> sample_surface(const TriangleMesh& mesh, double res) {
  if (res <= 0.0) throw ValidationError("sampling resolution must be positive");
  std::vector<Vec3> pts;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Vec3 a = mesh.triangle_vertex(t, 0);
    const Vec3 b = mesh.triangle_vertex(t, 1);
    const Vec3 c = mesh.triangle_vertex(t, 2);
    const double longest = std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()});
    const int n = std::max(1, static_cast<int>(std::ceil(longest / res)));
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n - i; ++j) {
        const double u = static_cast<double>(i) / n;
        const double v = static_cast<double>(j) / n;
        pts.push_back(a + u * (b - a) + v * (c - a));
      }
    }
  }
  return pts;
}

std::vector<Vec3> sample_interior(const TriangleMesh& mesh, double res) {
  // Column-parity scan: for each (x,y) lattice column, +z ray crossings with
  // the surface delimit the inside intervals. For a watertight outward mesh
  // this matches the winding-number test; columns are offset by an irrational
  // fraction of res so lattice lines never hit mesh edges exactly.
  if (res <= 0.0) throw ValidationError("sampling resolution must be positive");
  std::vector<Vec3> pts;
  const Vec3 lo = mesh.bbox_min(), hi = mesh.bbox_max();
  const Vec3 ext = hi - lo;
  const double off = 0.3819660112501051 * res;  // 2 - golden ratio
  const int nx = static_cast<int>(std::floor((ext.x() - off) / res));
  const int ny = static_cast<int>(std::floor((ext.y() - off) / res));
  const int nz = static_cast<int>(std::floor(ext.z() / res));
  if (nx < 0 || ny < 0 || nz < 0) return pts;

  // crossing z values per column
  std::vector<std::vector<double>> crossings(static_cast<size_t>((nx + 1) * (ny + 1)));
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Vec3 a = mesh.triangle_vertex(t, 0);
    const Vec3 b = mesh.triangle_vertex(t, 1);
    const Vec3 c = mesh.triangle_vertex(t, 2);
    const double xmin = std::min({a.x(), b.x(), c.x()}), xmax = std::max({a.x(), b.x(), c.x()});
    const double ymin = std::min({a.y(), b.y(), c.y()}), ymax = std::max({a.y(), b.y(), c.y()});
    const int i0 = std::max(0, static_cast<int>(std::ceil((xmin - lo.x() - off) / res)));
    const int i1 = std::min(nx, static_cast<int>(std::floor((xmax - lo.x() - off) / res)));
    const int j0 = std::max(0, static_cast<int>(std::ceil((ymin - lo.y() - off) / res)));
    const int j1 = std::min(ny, static_cast<int>(std::floor((ymax - lo.y() - off) / res)));
    const double det = (b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y());
    if (det == 0.0) continue;  // vertical triangle: never crossed transversally
    for (int i = i0; i <= i1; ++i) {
      for (int j = j0; j <= j1; ++j) {
        const double px = lo.x() + off + i * res, py = lo.y() + off + j * res;
        const double u = ((px - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (py - a.y())) / det;
        const double v = ((b.x() - a.x()) * (py - a.y()) - (px - a.x()) * (b.y() - a.y())) / det;
        if (u < 0.0 || v < 0.0 || u + v > 1.0) continue;
        crossings[static_cast<size_t>(i * (ny + 1) + j)].push_back(
            a.z() + u * (b.z() - a.z()) + v * (c.z() - a.z()));
      }
    }
  }

  for (int i = 0; i <= nx; ++i) {
    for (int j = 0; j <= ny; ++j) {
      auto& zs = crossings[static_cast<size_t>(i * (ny + 1) + j)];
      if (zs.size() < 2) continue;
      std::sort(zs.begin(), zs.end());
      const double px = lo.x() + off + i * res, py = lo.y() + off + j * res;
      for (size_t s = 0; s + 1 < zs.size(); s += 2) {
        const int k0 = static_cast<int>(std::ceil((zs[s] - lo.z()) / res));
        const int k1 = static_cast<int>(std::floor((zs[s + 1] - lo.z()) / res));
        for (int k = std::max(0, k0); k <= std::min(nz, k1); ++k)
          pts.emplace_back(px, py, lo.z() + k * res);
      }
    }
  }
  return pts;
}

}  // namespace polyscat
