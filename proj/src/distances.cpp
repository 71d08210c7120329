#include "polyscat/distances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace polyscat {

std::string to_string(ScattererKind k) {
  switch (k) {
    case ScattererKind::Obstacle: return "obstacle";
    case ScattererKind::Screen: return "screen";
    case ScattererKind::Mixed: return "mixed";
  }
  return "?";
}

Scatterer::Scatterer(TriangleMesh mesh, ScattererKind kind, ClassParams params)
    : mesh_(std::move(mesh)), kind_(kind), params_(params) {
  const EdgeTable edges = validate_mesh(mesh_);
  if (kind_ == ScattererKind::Obstacle) {
    if (!is_watertight(mesh_, edges))
      throw ValidationError("obstacle mesh is not watertight");
    if (!is_consistently_oriented(mesh_, edges))
      throw ValidationError("obstacle mesh is not consistently oriented");
    if (mesh_.signed_volume() <= 0.0)
      throw ValidationError("obstacle mesh normals are not outward");
  } else if (kind_ == ScattererKind::Screen) {
    if (screen_boundary_edges(edges).empty())
      throw ValidationError("screen mesh has no boundary edges (use obstacle kind)");
  }
  bounding_radius_ = 0.0;
  for (const auto& v : mesh_.vertices)
    bounding_radius_ = std::max(bounding_radius_, v.norm());
  if (bounding_radius_ > params_.R0 + 1e-12)
    throw ValidationError("mesh extends outside the a priori ball B_R0 (radius " +
                          std::to_string(bounding_radius_) + " > R0 = " +
                          std::to_string(params_.R0) + ")");
  tree_ = std::make_unique<AabbTree>(mesh_);
}

bool Scatterer::contains(const Vec3& p, double tol) const {
  if (tree_->distance_upto(p, tol * 1.0000001) <= tol) return true;
  if (kind_ == ScattererKind::Obstacle) return winding_number(mesh_, p) > 0.5;
  return false;
}

namespace {

// sup over `points` of the distance to `target`, skipping points for which
// `excluded` returns true. Points are visited in descending order of their
// surface distance so the membership predicate only runs until the sup is
// settled.
double directed_sup(const std::vector<Vec3>& points, const AabbTree& target,
                    const std::function<bool(const Vec3&, double)>& excluded) {
  std::vector<double> dist(points.size());
  for (size_t i = 0; i < points.size(); ++i) dist[i] = target.distance(points[i]);
  std::vector<size_t> order(points.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return dist[a] > dist[b]; });
  for (size_t idx : order) {
    if (dist[idx] <= 0.0) break;
    if (!excluded(points[idx], dist[idx])) return dist[idx];
  }
  return 0.0;
}

double directed_sup_plain(const std::vector<Vec3>& points, const AabbTree& target) {
  double sup = 0.0;
  for (const auto& p : points) sup = std::max(sup, target.distance_upto(p, 1e300));
  return sup;
}

std::vector<Vec3> set_samples(const Scatterer& s, double res) {
  std::vector<Vec3> pts = sample_surface(s.mesh(), res);
  if (s.kind() == ScattererKind::Obstacle) {
    std::vector<Vec3> inner = sample_interior(s.mesh(), res);
    pts.insert(pts.end(), inner.begin(), inner.end());
  }
  return pts;
}

// Identical geometries must report exactly zero; snap away the roundoff of
// point-on-own-triangle distances.
double snap_zero(double value, const Scatterer& a, const Scatterer& b) {
  const double scale = a.mesh().diameter() + b.mesh().diameter();
  return value <= 1e-12 * scale ? 0.0 : value;
}

}  // namespace

double hausdorff_hat(const Scatterer& a, const Scatterer& b, double res) {
  if (res <= 0.0) throw ValidationError("res must be positive");
  const auto pa = sample_surface(a.mesh(), res);
  const auto pb = sample_surface(b.mesh(), res);
  return snap_zero(
      std::max(directed_sup_plain(pa, b.tree()), directed_sup_plain(pb, a.tree())), a, b);
}

double hausdorff_tilde(const Scatterer& a, const Scatterer& b, double res) {
  if (res <= 0.0) throw ValidationError("res must be positive");
  const auto pa = set_samples(a, res);
  const auto pb = set_samples(b, res);
  // dist(x, Sigma') = 0 inside the other solid, else distance to its surface
  auto sup_to_set = [&](const std::vector<Vec3>& pts, const Scatterer& other) {
    return directed_sup(pts, other.tree(), [&](const Vec3& p, double) {
      return other.kind() == ScattererKind::Obstacle && winding_number(other.mesh(), p) > 0.5;
    });
  };
  return snap_zero(std::max(sup_to_set(pa, b), sup_to_set(pb, a)), a, b);
}

double distance_d(const Scatterer& a, const Scatterer& b, double res) {
  if (res <= 0.0) throw ValidationError("res must be positive");
  const auto pa = sample_surface(a.mesh(), res);
  const auto pb = sample_surface(b.mesh(), res);
  auto sup_part = [&](const std::vector<Vec3>& pts, const Scatterer& other) {
    // sup over boundary points of one scatterer that lie outside the other
    return directed_sup(pts, other.tree(),
                        [&](const Vec3& p, double) { return other.contains(p, res); });
  };
  return snap_zero(std::max(sup_part(pa, b), sup_part(pb, a)), a, b);
}

DistanceReport distance_report(const Scatterer& a, const Scatterer& b, double res) {
  DistanceReport r;
  r.d = distance_d(a, b, res);
  r.d_hat = hausdorff_hat(a, b, res);
  r.d_tilde = hausdorff_tilde(a, b, res);
  r.sampling_resolution = res;
  return r;
}

// -------------------------------------------------------------------------

MonotoneTable MonotoneTable::identity(double s_max, int knots) {
  MonotoneTable t;
  for (int i = 0; i <= knots; ++i) {
    const double x = s_max * static_cast<double>(i) / knots;
    t.s.push_back(x);
    t.value.push_back(x);
  }
  return t;
}

void MonotoneTable::validate() const {
  if (s.empty() || s.size() != value.size())
    throw ValidationError("monotone table empty or ragged");
  for (size_t i = 1; i < s.size(); ++i) {
    if (s[i] <= s[i - 1]) throw ValidationError("table arguments must increase");
    if (value[i] < value[i - 1]) throw ValidationError("table values must be nondecreasing");
  }
}

double MonotoneTable::operator()(double x) const {
  if (x <= s.front()) return value.front();
  if (x >= s.back()) return value.back();
  const auto it = std::upper_bound(s.begin(), s.end(), x);
  const size_t i = static_cast<size_t>(it - s.begin());
  const double w = (x - s[i - 1]) / (s[i] - s[i - 1]);
  return value[i - 1] + w * (value[i] - value[i - 1]);
}

double delta_inverse(double t, const MonotoneTable& delta, double R0) {
  delta.validate();
  if (t <= 0.0) throw ValidationError("delta_inverse needs t > 0");
  const double cap = 2.0 * R0;
  if (delta(delta.s.front()) > t) return 0.0;  // sup over the empty set
  if (delta(delta.s.back()) <= t) return std::min(delta.s.back(), cap);
  // bisection for the rightmost s with delta(s) <= t on the interpolant
  double lo = delta.s.front(), hi = delta.s.back();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (delta(mid) <= t)
      lo = mid;
    else
      hi = mid;
  }
  return std::min(lo, cap);
}

}  // namespace polyscat
