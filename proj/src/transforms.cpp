#include "polyscat/transforms.hpp"

#include <cmath>

namespace polyscat {

BiLipschitzMap::BiLipschitzMap(std::function<Vec3(const Vec3&)> forward,
                               std::function<Vec3(const Vec3&)> inverse,
                               std::function<Mat3(const Vec3&)> jacobian,
                               double lipschitz_bound, double fd_step)
    : fwd_(std::move(forward)),
      inv_(std::move(inverse)),
      jac_(std::move(jacobian)),
      lipschitz_(lipschitz_bound),
      fd_step_(fd_step) {}

Mat3 BiLipschitzMap::jacobian(const Vec3& x) const {
  if (jac_) return jac_(x);
  Mat3 J;
  for (int c = 0; c < 3; ++c) {
    Vec3 dp = Vec3::Zero(), dm = Vec3::Zero();
    dp[c] = fd_step_;
    dm[c] = -fd_step_;
    J.col(c) = (fwd_(x + dp) - fwd_(x + dm)) / (2.0 * fd_step_);
  }
  return J;
}

int BiLipschitzMap::orientation(const Vec3& x) const {
  const double det = jacobian(x).determinant();
  if (det == 0.0 || !std::isfinite(det))
    throw ValidationError("Jacobian determinant vanishes; map is not bi-Lipschitz here");
  return det > 0.0 ? +1 : -1;
}

void BiLipschitzMap::check_roundtrip(const std::vector<Vec3>& pts) const {
  for (const auto& y : pts) {
    if ((fwd_(inv_(y)) - y).norm() > 1e-10)
      throw ValidationError("T(T^{-1}(y)) != y; forward/inverse pair inconsistent");
  }
}

BiLipschitzMap BiLipschitzMap::affine(const Mat3& A, const Vec3& shift) {
  const Mat3 Ainv = A.inverse();
  return BiLipschitzMap([A, shift](const Vec3& x) { return Vec3(A * x + shift); },
                        [Ainv, shift](const Vec3& y) { return Vec3(Ainv * (y - shift)); },
                        [A](const Vec3&) { return A; }, A.norm());
}

BiLipschitzMap BiLipschitzMap::reflection(const Plane& plane) {
  const Mat3 J = plane.reflection_matrix();
  const Vec3 shift = 2.0 * plane.offset * plane.normal;
  return affine(J, shift);
}

VectorField pullback_hcurl(const VectorField& u, const BiLipschitzMap& T) {
  return [u, T](const Vec3& x) -> CVec3 {
    return T.jacobian(x).transpose().cast<cdouble>() * u(T.forward(x));
  };
}

namespace {

CVec3 fd_curl(const VectorField& f, const Vec3& x, double h) {
  CVec3 curl;
  auto partial = [&](int comp, int axis) {
    Vec3 dp = Vec3::Zero();
    dp[axis] = h;
    return (f(x + dp)[comp] - f(x - dp)[comp]) / (2.0 * h);
  };
  curl[0] = partial(2, 1) - partial(1, 2);
  curl[1] = partial(0, 2) - partial(2, 0);
  curl[2] = partial(1, 0) - partial(0, 1);
  return curl;
}

}  // namespace

double curl_transform_check(const VectorField& u, const std::optional<VectorField>& curl_u,
                            const BiLipschitzMap& T, const std::vector<Vec3>& points_y,
                            double h_fd) {
  if (points_y.empty()) throw ValidationError("no sample points");
  const VectorField v = pullback_hcurl(u, T);

  int sign = 0;
  double max_res = 0.0, max_lhs = 0.0;
  std::vector<CVec3> lhs_vals, rhs_vals;
  for (const auto& y : points_y) {
    const Vec3 x = T.inverse(y);
    const int s = T.orientation(x);
    if (sign == 0)
      sign = s;
    else if (s != sign)
      throw ValidationError("det J changes sign across the sample set");

    const CVec3 lhs = curl_u ? (*curl_u)(y) : fd_curl(u, y, h_fd);
    const Mat3 J = T.jacobian(x);
    const CVec3 rhs = (J / J.determinant()).cast<cdouble>() * fd_curl(v, x, h_fd);
    lhs_vals.push_back(lhs);
    rhs_vals.push_back(rhs);
    max_lhs = std::max(max_lhs, lhs.norm());
  }
  const double scale = max_lhs > 0.0 ? max_lhs : 1.0;
  for (size_t i = 0; i < lhs_vals.size(); ++i)
    max_res = std::max(max_res, (lhs_vals[i] - rhs_vals[i]).norm() / scale);
  return max_res;
}

TensorField pushforward_coefficient(const TensorField& a, const BiLipschitzMap& T) {
  return [a, T](const Vec3& x) -> Mat3 {
    const Mat3 J = T.jacobian(x);
    const Mat3 Jinv = J.inverse();
    const double abs_det_inv = std::abs(Jinv.determinant());
    return Jinv * a(T.forward(x)) * Jinv.transpose() / abs_det_inv;
  };
}

EMSample reflect_solution(const EMSample& sample, const Plane& plane) {
  const Mat3 J = plane.reflection_matrix();  // symmetric
  EMSample out;
  out.x = plane.reflect(sample.x);
  out.E = -(J.cast<cdouble>() * sample.E);
  out.H = J.cast<cdouble>() * sample.H;
  return out;
}

// -------------------------------------------------------------------------

FieldOnGrid FieldOnGrid::sample(const Vec3& origin, double spacing, int nx, int ny, int nz,
                                const VectorField& f) {
  if (nx < 1 || ny < 1 || nz < 1 || spacing <= 0.0)
    throw ValidationError("invalid grid dimensions");
  FieldOnGrid g;
  g.origin = origin;
  g.spacing = spacing;
  g.nx = nx;
  g.ny = ny;
  g.nz = nz;
  g.values.resize(static_cast<size_t>(nx) * ny * nz);
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) g.at(i, j, k) = f(g.position(i, j, k));
  return g;
}

CVec3 FieldOnGrid::discrete_curl(int i, int j, int k) const {
  if (i < 1 || i >= nx - 1 || j < 1 || j >= ny - 1 || k < 1 || k >= nz - 1)
    throw ValidationError("discrete_curl needs an interior node");
  const double h2 = 2.0 * spacing;
  auto d = [&](int comp, int axis) {
    const int di = axis == 0, dj = axis == 1, dk = axis == 2;
    return (at(i + di, j + dj, k + dk)[comp] - at(i - di, j - dj, k - dk)[comp]) / h2;
  };
  return CVec3(d(2, 1) - d(1, 2), d(0, 2) - d(2, 0), d(1, 0) - d(0, 1));
}

FieldOnGrid truncate_field(const FieldOnGrid& v, double M) {
  if (M <= 0.0) throw ValidationError("truncation level must be positive");
  FieldOnGrid out = v;
  for (auto& val : out.values) {
    const double n = val.norm();
    if (n > M) val *= M / n;
  }
  return out;
}

}  // namespace polyscat
