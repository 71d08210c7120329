// mie.hpp -- exact series solution for plane-wave scattering by a perfectly
// conducting sphere; the independent oracle for the integral-equation solver.
//
// Conventions follow the rest of the library (time factor e^{-i omega t},
// far field E_s = (e^{ikr}/r) E_inf). With Riccati-Bessel psi_n = x j_n and
// xi_n = x (j_n + i y_n), the PEC multipole coefficients at x = ka are
//   a_n = psi_n'(x) / xi_n'(x)   (electric / TM)
//   b_n = psi_n(x)  / xi_n(x)    (magnetic / TE)

#pragma once

#include "polyscat/farfield.hpp"
#include "polyscat/plane_wave.hpp"

namespace polyscat {

struct MieSolution {
  double a = 1.0;   // sphere radius
  double k = 1.0;   // wavenumber
  int n_max = 0;    // series truncation (>= ka + 10)
  std::vector<cdouble> coeff_tm;  // a_n, n = 1..n_max
  std::vector<cdouble> coeff_te;  // b_n, n = 1..n_max
};

// Computes the multipole coefficients. n_max <= 0 selects the default rule
// ceil(ka + 4 (ka)^{1/3}) + 10. Throws for ka > 200 (out of supported range).
MieSolution mie_solution(double a, double k, int n_max = 0);

// Far-field pattern of the scattered wave for incidence `w` (the library's
// normalised plane wave, amplitude i k |(d^p)^d|).
FarFieldPattern mie_far_field(const MieSolution& sol, const PlaneWaveSpec& w,
                              const SphereGrid& grid);

struct CrossSections {
  double scattering = 0.0;
  double extinction = 0.0;
};

// Series cross sections for a unit-amplitude incident plane wave. For the
// lossless PEC sphere the two agree to truncation error.
CrossSections mie_cross_sections(const MieSolution& sol);

}  // namespace polyscat
