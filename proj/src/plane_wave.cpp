#include "polyscat/plane_wave.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "polyscat/mesh.hpp"

namespace polyscat {

void PlaneWaveSpec::validate() const {
  if (!(k > 0.0)) throw ValidationError("wavenumber k must be positive");
  if (std::abs(d.norm() - 1.0) > 1e-12)
    throw ValidationError("direction d must be a unit vector");
  const double pn = p.norm();
  if (!(pn > 0.0) || pn > 1.0 + 1e-12)
    throw ValidationError("polarisation must satisfy 0 < |p| <= 1");
  if (transverse_polarisation().norm() <= 0.0)
    throw ValidationError("polarisation parallel to direction gives a null wave");
}

EMSample eval_plane_wave(const PlaneWaveSpec& w, const Vec3& x) {
  EMSample s;
  s.x = x;
  const cdouble phase = std::exp(kImag * (w.k * w.d.dot(x)));
  const cdouble amp = kImag * w.k * phase;
  const Vec3 dp = w.d.cross(w.p);
  s.E = amp * dp.cross(w.d).cast<cdouble>();
  s.H = amp * dp.cast<cdouble>();
  return s;
}

EMSample duality_swap(const EMSample& s) {
  EMSample out;
  out.x = s.x;
  out.E = s.H;
  out.H = -s.E;
  return out;
}

double polarization_constant(const PlaneWaveSpec& w) {
  return w.transverse_polarisation().norm();
}

IndependenceResult independence_constant_b0(const PlaneWaveSpec& w1, const PlaneWaveSpec& w2,
                                            int grid) {
  const Vec3 u1 = w1.transverse_polarisation();
  const Vec3 u2 = w2.transverse_polarisation();
  if (u1.norm() == 0.0 && u2.norm() == 0.0)
    throw ValidationError("both incidence vectors vanish; b0 undefined");

  auto objective = [&](const Vec3& nu) {
    return std::max(nu.cross(u1).norm(), nu.cross(u2).norm());
  };

  // starting grid: icosphere subdivided until it has >= max(grid, 1000) vertices
  int level = 0;
  auto vertex_count = [](int l) { return 10 * (1 << (2 * l)) + 2; };  // 10*4^l + 2
  while (vertex_count(level) < std::max(grid, 1000)) ++level;
  TriangleMesh sphere = make_icosphere(1.0, Vec3::Zero(), level);

  Vec3 best = sphere.vertices.front();
  double best_val = objective(best);
  for (const auto& v : sphere.vertices) {
    const double val = objective(v);
    if (val < best_val) {
      best_val = val;
      best = v;
    }
  }

  // local refinement around the running minimum: tangent-plane grids whose
  // radius shrinks by 4x per pass (slow enough to follow the diagonal
  // valleys of the max-of-two objective)
  double radius = 2.0 / (1 << level);  // roughly the grid spacing
  const int m = 12;
  for (int pass = 0; pass < 14; ++pass) {
    const Vec3 e1 = best.unitOrthogonal();
    const Vec3 e2 = best.cross(e1);
    for (int i = -m; i <= m; ++i) {
      for (int j = -m; j <= m; ++j) {
        const Vec3 cand = (best + radius * (static_cast<double>(i) / m) * e1 +
                           radius * (static_cast<double>(j) / m) * e2)
                              .normalized();
        const double val = objective(cand);
        if (val < best_val) {
          best_val = val;
          best = cand;
        }
      }
    }
    radius /= 4.0;
  }

  IndependenceResult r;
  r.b0 = best_val;
  r.minimizer = best;
  // objective is Lipschitz with constant max(|u1|,|u2|) on S^2
  r.resolution_error = radius * std::max(u1.norm(), u2.norm());
  return r;
}

}  // namespace polyscat
