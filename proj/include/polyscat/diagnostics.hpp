// diagnostics.hpp -- analytic residual checks: radiation conditions,
// the Maxwell-to-Helmholtz link, the three-spheres exponent, the
// L-infinity/L2 dilation ratio, and the logarithmic stability moduli.

#pragma once

#include <functional>
#include <vector>

#include "polyscat/plane_wave.hpp"
#include "polyscat/quadrature.hpp"

namespace polyscat {

// joint (E,H) evaluator for a Maxwell field
using EMField = std::function<EMSample(const Vec3&)>;
// scalar field evaluator
using ScalarField = std::function<cdouble(const Vec3&)>;

struct RadiationResidual {
  double primary = 0.0;  // max over grid of r |xhat x H + E|
  double dual = 0.0;     // max over grid of r |xhat x E - H|
};

RadiationResidual silver_muller_residual(const EMField& field, double r,
                                         const SphereGrid& grid);

struct HelmholtzResiduals {
  double vec_helmholtz = 0.0;  // max |Lap E + k^2 E|  (central differences)
  double divergence = 0.0;     // max |div E|
  double sommerfeld = 0.0;     // max over radii of |r (d/dr - ik) E| per component
};

// Residuals at the given points (Helmholtz + divergence) and radii x
// directions (Sommerfeld), all with second-order central differences at h_fd.
HelmholtzResiduals helmholtz_link_residual(const std::function<CVec3(const Vec3&)>& E,
                                           double k, const std::vector<Vec3>& points,
                                           const std::vector<double>& radii,
                                           const std::vector<Vec3>& directions, double h_fd);

struct ThreeSpheresResult {
  double beta_hat = 0.0;
  double norm_rho1 = 0.0, norm_rho = 0.0, norm_rho2 = 0.0;  // L2 ball norms
};

// Empirical exponent beta_hat = (log N2 - log N)/(log N2 - log N1) realized
// by u on the ball triple (centred at the origin); the multiplicative
// constants of the inequality are not computed.
ThreeSpheresResult three_spheres_exponent(const ScalarField& u, double rho1, double rho,
                                          double rho2, int n_r = 64, int n_theta = 32);

// rho^{3/2} |u|_{L^inf(B_{s rho})} / |u|_{L^2(B_rho)}
double sup_ratio(const ScalarField& u, double rho, double s, int n_r = 64, int n_theta = 32);

// eta(s) = exp(-(log(-log s))^{1/2}) on (0, 1/e)
double eta(double s);

// eta_1(eps0) = exp(-C1 (-log eps0)^{1/2}) on (0, 1)
double eta1(double eps0, double C1);

}  // namespace polyscat
