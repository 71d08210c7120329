#include <doctest.h>

#include <cmath>

#include "polyscat/bessel.hpp"
#include "polyscat/mie.hpp"

using namespace polyscat;

TEST_CASE("spherical bessel functions match closed forms") {
  for (double x : {0.3, 1.0, 4.7, 20.0}) {
    const auto j = spherical_jn_array(8, x);
    const auto y = spherical_yn_array(8, x);
    CHECK(j[0] == doctest::Approx(std::sin(x) / x).epsilon(1e-13));
    CHECK(j[1] == doctest::Approx(std::sin(x) / (x * x) - std::cos(x) / x).epsilon(1e-12));
    CHECK(y[0] == doctest::Approx(-std::cos(x) / x).epsilon(1e-13));
    // Wronskian j_n y_{n-1} - j_{n-1} y_n = 1/x^2
    for (int n = 1; n <= 8; ++n)
      CHECK(j[n] * y[n - 1] - j[n - 1] * y[n] ==
            doctest::Approx(1.0 / (x * x)).epsilon(1e-10));
  }
  // small-argument series branch
  const auto j = spherical_jn_array(3, 1e-4);
  CHECK(j[1] == doctest::Approx(1e-4 / 3.0).epsilon(1e-8));
  CHECK(j[2] == doctest::Approx(1e-8 / 15.0).epsilon(1e-8));
}

TEST_CASE("angular functions at the forward direction") {
  std::vector<double> pi_n, tau_n;
  mie_angular_functions(5, 1.0, pi_n, tau_n);
  for (int n = 1; n <= 5; ++n) {
    CHECK(pi_n[n] == doctest::Approx(n * (n + 1.0) / 2.0).epsilon(1e-12));
    CHECK(tau_n[n] == doctest::Approx(n * (n + 1.0) / 2.0).epsilon(1e-12));
  }
}

TEST_CASE("Rayleigh limit: sigma/(pi a^2) -> (10/3) (ka)^4") {
  const double ka = 0.05;
  const MieSolution sol = mie_solution(1.0, ka);
  const CrossSections cs = mie_cross_sections(sol);
  const double normalized = cs.scattering / (kPi * 1.0);
  const double rayleigh = 10.0 / 3.0 * std::pow(ka, 4.0);
  CHECK(std::abs(normalized - rayleigh) / rayleigh < 0.01);
}

TEST_CASE("geometric optics: monostatic RCS near pi a^2 at ka = 20") {
  const double ka = 20.0;
  const MieSolution sol = mie_solution(1.0, ka);
  PlaneWaveSpec w;
  w.k = ka;
  w.d = Vec3(0, 0, 1);
  w.p = Vec3(1, 0, 0);
  // incident amplitude |E0| = k b; backscatter direction -d
  const SphereGrid grid = sphere_grid(4);
  FarFieldPattern ff = mie_far_field(sol, w, grid);
  // evaluate exactly at -d via a tiny dedicated grid trick: use the formula
  // through a pattern on a grid containing the pole is awkward, so assemble
  // the backscatter amplitude from the series directly
  std::vector<double> pi_n, tau_n;
  mie_angular_functions(sol.n_max, -1.0, pi_n, tau_n);
  cdouble s1 = 0.0;
  for (int n = 1; n <= sol.n_max; ++n) {
    const double f = (2.0 * n + 1.0) / (n * (n + 1.0));
    s1 += f * (sol.coeff_tm[n - 1] * pi_n[n] + sol.coeff_te[n - 1] * tau_n[n]);
  }
  // RCS = 4 pi |E_inf|^2 / |E0|^2 with |E_inf| = |s1|/k for unit |E0|
  const double rcs = 4.0 * kPi * std::norm(s1 / (ka));
  CHECK(rcs / (kPi) > 0.9);
  CHECK(rcs / (kPi) < 1.1);
  (void)ff;
}

TEST_CASE("PEC sphere is lossless: sigma_sca = sigma_ext") {
  for (double ka : {0.1, 0.5, 1.0, 3.0, 10.0}) {
    const MieSolution sol = mie_solution(1.0, ka);
    const CrossSections cs = mie_cross_sections(sol);
    CHECK(std::abs(cs.scattering - cs.extinction) / cs.scattering < 1e-10);
  }
}

TEST_CASE("cross-section table is deterministic") {
  for (int rep = 0; rep < 2; ++rep) {
    const MieSolution a = mie_solution(1.0, 0.7, 25);
    const MieSolution b = mie_solution(1.0, 0.7, 25);
    const CrossSections ca = mie_cross_sections(a), cb = mie_cross_sections(b);
    CHECK(ca.scattering == cb.scattering);
    CHECK(ca.extinction == cb.extinction);
  }
}

TEST_CASE("far-field integration reproduces the series cross section") {
  const double ka = 1.0;
  const MieSolution sol = mie_solution(1.0, ka);
  PlaneWaveSpec w;
  w.k = ka;
  w.d = Vec3(0, 0, 1);
  w.p = Vec3(1, 0, 0);
  const SphereGrid grid = sphere_grid(24);
  const FarFieldPattern ff = mie_far_field(sol, w, grid);
  // sigma = Int |E_inf|^2 / |E0|^2 with |E0| = k b = k
  const double amp2 = sqr(w.k * polarization_constant(w));
  double sigma = 0.0;
  for (size_t q = 0; q < ff.E_inf.size(); ++q)
    sigma += ff.grid.weights[q] * ff.E_inf[q].squaredNorm();
  sigma /= amp2;
  const CrossSections cs = mie_cross_sections(sol);
  CHECK(std::abs(sigma - cs.scattering) / cs.scattering < 1e-3);
}

TEST_CASE("transversality of the oracle pattern") {
  const MieSolution sol = mie_solution(1.0, 1.0);
  PlaneWaveSpec w;
  w.k = 1.0;
  w.d = Vec3(1, 1, 1).normalized();
  w.p = Vec3(1, -1, 0) / 2.0;
  const FarFieldPattern ff = mie_far_field(sol, w, sphere_grid(12));
  CHECK(ff.transversality_tol < 1e-12);
  CHECK(ff.relation_tol < 1e-12);
}

TEST_CASE("series truncation has converged") {
  const double ka = 10.0;
  const MieSolution a = mie_solution(1.0, ka);
  const MieSolution b = mie_solution(1.0, ka, a.n_max + 10);
  const CrossSections ca = mie_cross_sections(a), cb = mie_cross_sections(b);
  CHECK(std::abs(ca.scattering - cb.scattering) / ca.scattering < 1e-10);
}

TEST_CASE("rotating the incidence rotates the pattern") {
  const MieSolution sol = mie_solution(1.0, 1.0);
  PlaneWaveSpec w1;
  w1.k = 1.0;
  w1.d = Vec3(0, 0, 1);
  w1.p = Vec3(1, 0, 0);
  // rotation taking z to x and x to y
  Mat3 R;
  R << 0, 0, 1, 1, 0, 0, 0, 1, 0;
  PlaneWaveSpec w2;
  w2.k = 1.0;
  w2.d = R * w1.d;
  w2.p = R * w1.p;

  const SphereGrid grid = sphere_grid(8);
  const FarFieldPattern f1 = mie_far_field(sol, w1, grid);
  // rotated grid: evaluate pattern 2 at R * direction and compare R * E1
  SphereGrid rotated = grid;
  for (auto& d : rotated.directions) d = (R * d).eval();
  const FarFieldPattern f2 = mie_far_field(sol, w2, rotated);
  double max_diff = 0.0;
  for (size_t q = 0; q < grid.size(); ++q)
    max_diff = std::max(max_diff,
                        (f2.E_inf[q] - (R.cast<cdouble>() * f1.E_inf[q])).norm());
  CHECK(max_diff < 1e-10 * f1.max_E());
}

TEST_CASE("input guards") {
  CHECK_THROWS_AS(mie_solution(1.0, 300.0), ValidationError);       // ka out of range
  CHECK_THROWS_AS(mie_solution(-1.0, 1.0), ValidationError);
  CHECK_THROWS_AS(mie_solution(1.0, 50.0, 12), ValidationError);    // n_max < ka + 10
}
