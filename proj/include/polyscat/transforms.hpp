// transforms.hpp -- executable versions of the analytic machinery: the
// H(curl) pullback v = J^T u(T(.)), the curl transformation identity, the
// coefficient pushforward, reflection of Maxwell solutions, and the norm
// truncation operator on sampled fields.

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "polyscat/mesh.hpp"
#include "polyscat/plane_wave.hpp"

namespace polyscat {

using VectorField = std::function<CVec3(const Vec3&)>;
using TensorField = std::function<Mat3(const Vec3&)>;

// Bi-Lipschitz change of variables T : D -> D'. The Jacobian is analytic
// when supplied, otherwise central differences at `fd_step`. Orientation
// or(T) is the (constant) sign of det J.
class BiLipschitzMap {
public:
  BiLipschitzMap(std::function<Vec3(const Vec3&)> forward,
                 std::function<Vec3(const Vec3&)> inverse,
                 std::function<Mat3(const Vec3&)> jacobian = nullptr,
                 double lipschitz_bound = 0.0, double fd_step = 1e-6);

  Vec3 forward(const Vec3& x) const { return fwd_(x); }
  Vec3 inverse(const Vec3& y) const { return inv_(y); }
  Mat3 jacobian(const Vec3& x) const;
  double lipschitz_bound() const { return lipschitz_; }

  // sign of det J at x; throws when |det| is numerically zero
  int orientation(const Vec3& x) const;

  // checks T(T^{-1}(y)) = y on the given points to 1e-10
  void check_roundtrip(const std::vector<Vec3>& pts) const;

  static BiLipschitzMap affine(const Mat3& A, const Vec3& shift);
  static BiLipschitzMap reflection(const Plane& plane);

private:
  std::function<Vec3(const Vec3&)> fwd_, inv_;
  std::function<Mat3(const Vec3&)> jac_;
  double lipschitz_;
  double fd_step_;
};

// v(x) = J(x)^T u(T(x))
VectorField pullback_hcurl(const VectorField& u, const BiLipschitzMap& T);

// Verifies (curl u)(y) = (J/det J  curl v)(T^{-1}(y)) at the sample points.
// Curls fall back to central differences at h_fd unless analytic curls are
// supplied. Returns the maximum residual relative to max |curl u|.
// Throws when det J changes sign across the points.
double curl_transform_check(const VectorField& u, const std::optional<VectorField>& curl_u,
                            const BiLipschitzMap& T, const std::vector<Vec3>& points_y,
                            double h_fd);

// T_*(a)(x) = J^{-1} a(T(x)) J^{-T} / |det J^{-1}|
TensorField pushforward_coefficient(const TensorField& a, const BiLipschitzMap& T);

// Mirror extension rule for Maxwell solutions across a PEC symmetry plane:
// a sample (E,H) at x maps to (-J^T E, J^T H) at the mirrored point.
EMSample reflect_solution(const EMSample& sample, const Plane& plane);

// -------------------------------------------------------------------------

struct FieldOnGrid {
  Vec3 origin = Vec3::Zero();
  double spacing = 1.0;
  int nx = 0, ny = 0, nz = 0;
  std::vector<CVec3> values;  // x fastest

  size_t index(int i, int j, int k) const {
    return static_cast<size_t>((static_cast<size_t>(k) * ny + j) * nx + i);
  }
  Vec3 position(int i, int j, int k) const {
    return origin + spacing * Vec3(i, j, k);
  }
  const CVec3& at(int i, int j, int k) const { return values[index(i, j, k)]; }
  CVec3& at(int i, int j, int k) { return values[index(i, j, k)]; }

  static FieldOnGrid sample(const Vec3& origin, double spacing, int nx, int ny, int nz,
                            const VectorField& f);

  // central-difference curl at an interior node
  CVec3 discrete_curl(int i, int j, int k) const;
};

// F_M(v) = v where |v| <= M, else M v/|v|, applied pointwise.
FieldOnGrid truncate_field(const FieldOnGrid& v, double M);

}  // namespace polyscat
