#include "polyscat/mie.hpp"

#include <cmath>

#include "polyscat/bessel.hpp"

namespace polyscat {

MieSolution mie_solution(double a, double k, int n_max) {
  if (a <= 0.0 || k <= 0.0) throw ValidationError("sphere radius and k must be positive");
  const double x = k * a;
  if (x > 200.0) throw ValidationError("ka > 200 is out of the supported range");
  if (n_max <= 0) n_max = static_cast<int>(std::ceil(x + 4.0 * std::cbrt(x))) + 10;
  if (n_max < static_cast<int>(std::ceil(x)) + 10)
    throw ValidationError("n_max must be at least ka + 10");

  const std::vector<double> j = spherical_jn_array(n_max, x);
  const std::vector<double> y = spherical_yn_array(n_max, x);

  MieSolution sol;
  sol.a = a;
  sol.k = k;
  sol.n_max = n_max;
  sol.coeff_tm.resize(static_cast<size_t>(n_max));
  sol.coeff_te.resize(static_cast<size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    const double psi = x * j[static_cast<size_t>(n)];
    const double chi = x * y[static_cast<size_t>(n)];
    const double psi_d = x * j[static_cast<size_t>(n) - 1] - n * j[static_cast<size_t>(n)];
    const double chi_d = x * y[static_cast<size_t>(n) - 1] - n * y[static_cast<size_t>(n)];
    const cdouble xi{psi, chi};
    const cdouble xi_d{psi_d, chi_d};
    sol.coeff_tm[static_cast<size_t>(n) - 1] = psi_d / xi_d;
    sol.coeff_te[static_cast<size_t>(n) - 1] = psi / xi;
  }
  return sol;
}

FarFieldPattern mie_far_field(const MieSolution& sol, const PlaneWaveSpec& w,
                              const SphereGrid& grid) {
  w.validate();
  if (std::abs(w.k - sol.k) > 1e-12 * std::max(1.0, sol.k))
    throw ValidationError("wave and Mie solution disagree on k");

  // scattering frame: z' along d, x' along the transverse polarisation
  const Vec3 q = w.transverse_polarisation();
  const double b = q.norm();
  const Vec3 ez = w.d;
  const Vec3 ex = q / b;
  const Vec3 ey = ez.cross(ex);
  const cdouble E0 = kImag * w.k * b;  // incident amplitude along ex

  FarFieldPattern p;
  p.grid = grid;
  p.E_inf.resize(grid.size());
  p.H_inf.resize(grid.size());

  std::vector<double> pi_n, tau_n;
  const cdouble pref = kImag / sol.k * E0;
  for (size_t iq = 0; iq < grid.size(); ++iq) {
    const Vec3& xh = grid.directions[iq];
    const double mu = std::clamp(xh.dot(ez), -1.0, 1.0);
    const double cx = xh.dot(ex), cy = xh.dot(ey);
    const double st = std::hypot(cx, cy);
    double cphi = 1.0, sphi = 0.0;
    if (st > 1e-14) {
      cphi = cx / st;
      sphi = cy / st;
    }
    mie_angular_functions(sol.n_max, mu, pi_n, tau_n);
    cdouble s1 = 0.0, s2 = 0.0;
    for (int n = 1; n <= sol.n_max; ++n) {
      const double f = (2.0 * n + 1.0) / (n * (n + 1.0));
      const cdouble an = sol.coeff_tm[static_cast<size_t>(n) - 1];
      const cdouble bn = sol.coeff_te[static_cast<size_t>(n) - 1];
      s1 += f * (an * pi_n[static_cast<size_t>(n)] + bn * tau_n[static_cast<size_t>(n)]);
      s2 += f * (an * tau_n[static_cast<size_t>(n)] + bn * pi_n[static_cast<size_t>(n)]);
    }
    // spherical unit vectors of the scattering frame
    const Vec3 theta_hat = (mu * cphi) * ex + (mu * sphi) * ey - st * ez;
    const Vec3 phi_hat = -sphi * ex + cphi * ey;
    const CVec3 E = pref * (cphi * s2 * theta_hat.cast<cdouble>() -
                            sphi * s1 * phi_hat.cast<cdouble>());
    p.E_inf[iq] = E;
    p.H_inf[iq] = xh.cast<cdouble>().cross(E);
  }
  p.refresh_identity_tols();
  return p;
}

CrossSections mie_cross_sections(const MieSolution& sol) {
  CrossSections cs;
  const double pref = 2.0 * kPi / (sol.k * sol.k);
  for (int n = 1; n <= sol.n_max; ++n) {
    const cdouble an = sol.coeff_tm[static_cast<size_t>(n) - 1];
    const cdouble bn = sol.coeff_te[static_cast<size_t>(n) - 1];
    cs.scattering += pref * (2.0 * n + 1.0) * (std::norm(an) + std::norm(bn));
    cs.extinction += pref * (2.0 * n + 1.0) * (an.real() + bn.real());
  }
  return cs;
}

}  // namespace polyscat
