#include "polyscat/diagnostics.hpp"

#include <cmath>

namespace polyscat {

RadiationResidual silver_muller_residual(const EMField& field, double r,
                                         const SphereGrid& grid) {
  if (r <= 0.0) throw ValidationError("radius must be positive");
  RadiationResidual res;
  for (const auto& xh : grid.directions) {
    const EMSample s = field(r * xh);
    const CVec3 xhc = xh.cast<cdouble>();
    res.primary = std::max(res.primary, r * (xhc.cross(s.H) + s.E).norm());
    res.dual = std::max(res.dual, r * (xhc.cross(s.E) - s.H).norm());
  }
  return res;
}

HelmholtzResiduals helmholtz_link_residual(const std::function<CVec3(const Vec3&)>& E,
                                           double k, const std::vector<Vec3>& points,
                                           const std::vector<double>& radii,
                                           const std::vector<Vec3>& directions, double h_fd) {
  HelmholtzResiduals out;
  for (const auto& x : points) {
    // 7-point Laplacian and central divergence
    CVec3 lap = -6.0 * E(x);
    cdouble div = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
      Vec3 dp = Vec3::Zero();
      dp[axis] = h_fd;
      const CVec3 ep = E(x + dp), em = E(x - dp);
      lap += ep + em;
      div += (ep[axis] - em[axis]) / (2.0 * h_fd);
    }
    lap /= h_fd * h_fd;
    out.vec_helmholtz = std::max(out.vec_helmholtz, (lap + k * k * E(x)).norm());
    out.divergence = std::max(out.divergence, std::abs(div));
  }
  for (double r : radii) {
    for (const auto& d : directions) {
      const Vec3 xh = d.normalized();
      const CVec3 dudr = (E((r + h_fd) * xh) - E((r - h_fd) * xh)) / (2.0 * h_fd);
      const CVec3 somm = dudr - kImag * k * E(r * xh);
      out.sommerfeld = std::max(out.sommerfeld, r * somm.norm());
    }
  }
  return out;
}

namespace {

double ball_l2_norm(const ScalarField& u, double rho, int n_r, int n_theta) {
  const BallRule rule = ball_rule(Vec3::Zero(), rho, n_r, n_theta);
  double s = 0.0;
  for (size_t q = 0; q < rule.points.size(); ++q)
    s += rule.weights[q] * std::norm(u(rule.points[q]));
  return std::sqrt(s);
}

}  // namespace

ThreeSpheresResult three_spheres_exponent(const ScalarField& u, double rho1, double rho,
                                          double rho2, int n_r, int n_theta) {
  if (!(0.0 < rho1 && rho1 < rho && rho < rho2))
    throw ValidationError("need 0 < rho1 < rho < rho2");
  ThreeSpheresResult r;
  r.norm_rho1 = ball_l2_norm(u, rho1, n_r, n_theta);
  r.norm_rho = ball_l2_norm(u, rho, n_r, n_theta);
  r.norm_rho2 = ball_l2_norm(u, rho2, n_r, n_theta);
  if (r.norm_rho1 <= 0.0 || r.norm_rho <= 0.0 || r.norm_rho2 <= 0.0)
    throw ValidationError("vanishing ball norm; exponent undefined");
  r.beta_hat = (std::log(r.norm_rho2) - std::log(r.norm_rho)) /
               (std::log(r.norm_rho2) - std::log(r.norm_rho1));
  return r;
}

double sup_ratio(const ScalarField& u, double rho, double s, int n_r, int n_theta) {
  if (!(0.0 < s && s < 1.0)) throw ValidationError("need 0 < s < 1");
  // L-infinity over B_{s rho} by dense shell sampling (plus the centre)
  const SphereGrid grid = sphere_grid(n_theta);
  double sup = std::abs(u(Vec3::Zero()));
  for (int i = 1; i <= n_r; ++i) {
    const double r = s * rho * static_cast<double>(i) / n_r;
    for (const auto& d : grid.directions) sup = std::max(sup, std::abs(u(r * d)));
  }
  const double l2 = ball_l2_norm(u, rho, n_r, n_theta);
  if (l2 <= 0.0) throw ValidationError("vanishing L2 norm");
  return std::pow(rho, 1.5) * sup / l2;
}

double eta(double s) {
  if (!(s > 0.0 && s < std::exp(-1.0)))
    throw ValidationError("eta is defined on (0, 1/e)");
  return std::exp(-std::sqrt(std::log(-std::log(s))));
}

double eta1(double eps0, double C1) {
  if (!(eps0 > 0.0 && eps0 < 1.0)) throw ValidationError("eta1 needs eps0 in (0,1)");
  if (!(C1 > 0.0)) throw ValidationError("eta1 needs C1 > 0");
  return std::exp(-C1 * std::sqrt(-std::log(eps0)));
}

}  // namespace polyscat
