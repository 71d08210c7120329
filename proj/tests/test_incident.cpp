#include <doctest.h>

#include <cmath>

#include "polyscat/plane_wave.hpp"
#include "polyscat/rng.hpp"

using namespace polyscat;

namespace {

// second-order central-difference curl of a complex field
CVec3 fd_curl(const std::function<CVec3(const Vec3&)>& f, const Vec3& x, double h) {
  auto partial = [&](int comp, int axis) {
    Vec3 d = Vec3::Zero();
    d[axis] = h;
    return (f(x + d)[comp] - f(x - d)[comp]) / (2.0 * h);
  };
  return CVec3(partial(2, 1) - partial(1, 2), partial(0, 2) - partial(2, 0),
               partial(1, 0) - partial(0, 1));
}

}  // namespace

TEST_CASE("plane wave point values") {
  PlaneWaveSpec w;
  w.k = 1.0;
  w.d = Vec3(0, 0, 1);
  w.p = Vec3(1, 0, 0);
  const EMSample s = eval_plane_wave(w, Vec3::Zero());
  CHECK((s.E - CVec3(kImag, 0, 0)).norm() < 1e-15);
  CHECK((s.H - CVec3(0, kImag, 0)).norm() < 1e-15);

  // phase factor at half a wavelength of k = 2
  PlaneWaveSpec w2 = w;
  w2.k = 2.0;
  const EMSample s2 = eval_plane_wave(w2, Vec3(0, 0, kPi / 2));
  CHECK((s2.E - CVec3(cdouble(0, -2), 0, 0)).norm() < 1e-12);
}

TEST_CASE("p parallel to d gives the null wave and fails validation") {
  PlaneWaveSpec w;
  w.d = Vec3(0, 0, 1);
  w.p = Vec3(0, 0, 1);
  CHECK(w.transverse_polarisation().norm() == 0.0);
  CHECK_THROWS_AS(w.validate(), ValidationError);
  const EMSample s = eval_plane_wave(w, Vec3(0.3, -0.2, 0.9));
  CHECK(s.E.norm() == 0.0);
  CHECK(s.H.norm() == 0.0);
}

TEST_CASE("plane wave solves the Maxwell system to second order") {
  PlaneWaveSpec w;
  w.k = 1.3;
  w.d = Vec3(1, 2, 2).normalized();
  w.p = Vec3(0.3, -0.5, 0.4);
  auto E = [&](const Vec3& x) { return eval_plane_wave(w, x).E; };
  auto H = [&](const Vec3& x) { return eval_plane_wave(w, x).H; };
  double res_prev_E = 0.0, res_prev_H = 0.0;
  for (double h : {0.1, 0.05}) {
    double resE = 0.0, resH = 0.0;
    Rng local(11);
    for (int trial = 0; trial < 5; ++trial) {
      const Vec3 x = local.point_in_box(Vec3(-1, -1, -1), Vec3(1, 1, 1));
      const EMSample s = eval_plane_wave(w, x);
      resE = std::max(resE, (fd_curl(E, x, h) - kImag * w.k * s.H).norm());
      resH = std::max(resH, (fd_curl(H, x, h) + kImag * w.k * s.E).norm());
    }
    if (res_prev_E > 0.0) {
      // halving h divides the residual by about 4
      CHECK(res_prev_E / resE > 3.0);
      CHECK(res_prev_H / resH > 3.0);
    }
    res_prev_E = resE;
    res_prev_H = resH;
  }
}

TEST_CASE("transversality and constant modulus") {
  PlaneWaveSpec w;
  w.k = 2.0;
  w.d = Vec3(0, 1, 0);
  w.p = Vec3(0.5, 0.0, 0.5);
  Rng rng(3);
  const double expected_mod = w.k * polarization_constant(w);
  for (int i = 0; i < 20; ++i) {
    const Vec3 x = rng.point_in_box(Vec3(-2, -2, -2), Vec3(2, 2, 2));
    const EMSample s = eval_plane_wave(w, x);
    CHECK(std::abs(s.E.dot(w.d.cast<cdouble>())) < 1e-14);
    CHECK(std::abs(s.H.dot(w.d.cast<cdouble>())) < 1e-14);
    CHECK(s.E.norm() == doctest::Approx(expected_mod).epsilon(1e-12));
  }
}

TEST_CASE("duality swap") {
  EMSample s;
  s.E = CVec3(1, 0, 0);
  s.H = CVec3(0, 1, 0);
  const EMSample d = duality_swap(s);
  CHECK((d.E - CVec3(0, 1, 0)).norm() == 0.0);
  CHECK((d.H - CVec3(-1, 0, 0)).norm() == 0.0);

  const EMSample dd = duality_swap(d);
  CHECK((dd.E + s.E).norm() == 0.0);
  CHECK((dd.H + s.H).norm() == 0.0);
}

TEST_CASE("duality swap maps Maxwell solutions to Maxwell solutions") {
  PlaneWaveSpec w;
  w.k = 1.0;
  auto E = [&](const Vec3& x) { return duality_swap(eval_plane_wave(w, x)).E; };
  auto H = [&](const Vec3& x) { return duality_swap(eval_plane_wave(w, x)).H; };
  const Vec3 x(0.2, 0.7, -0.4);
  const double h = 1e-3;
  const EMSample s = duality_swap(eval_plane_wave(w, x));
  CHECK((fd_curl(E, x, h) - kImag * w.k * s.H).norm() < 1e-5);
  CHECK((fd_curl(H, x, h) + kImag * w.k * s.E).norm() < 1e-5);
}

TEST_CASE("polarization constant") {
  PlaneWaveSpec w;
  w.d = Vec3(0, 0, 1);
  w.p = Vec3(1, 0, 0);
  CHECK(polarization_constant(w) == doctest::Approx(1.0));
  w.p = Vec3(0, 0, 1);
  CHECK(polarization_constant(w) == doctest::Approx(0.0));
  w.p = Vec3(1, 0, 1) / std::sqrt(2.0);
  CHECK(polarization_constant(w) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("independence constant b0") {
  PlaneWaveSpec w1, w2;
  w1.d = w2.d = Vec3(0, 0, 1);
  w1.p = Vec3(1, 0, 0);
  w2.p = Vec3(0, 1, 0);

  SUBCASE("orthogonal pair attains sqrt(2)/2") {
    const IndependenceResult r = independence_constant_b0(w1, w2, 2562);
    CHECK(r.resolution_error > 0.0);
    CHECK(std::abs(r.b0 - std::sqrt(2.0) / 2.0) < 1e-6);
    // minimizer lies along (+-1, +-1, 0)/sqrt(2)
    CHECK(std::abs(std::abs(r.minimizer.x()) - std::abs(r.minimizer.y())) < 0.05);
    CHECK(std::abs(r.minimizer.z()) < 0.05);
  }
  SUBCASE("parallel incidences give zero") {
    const IndependenceResult r = independence_constant_b0(w1, w1, 1000);
    CHECK(r.b0 < 1e-6);
  }
  SUBCASE("scaling both polarisations scales b0") {
    PlaneWaveSpec s1 = w1, s2 = w2;
    s1.p *= 0.5;
    s2.p *= 0.5;
    const IndependenceResult r = independence_constant_b0(s1, s2, 2562);
    CHECK(std::abs(r.b0 - std::sqrt(2.0) / 4.0) < 1e-6);
  }
  SUBCASE("symmetric in the two waves") {
    const IndependenceResult a = independence_constant_b0(w1, w2, 1000);
    const IndependenceResult b = independence_constant_b0(w2, w1, 1000);
    CHECK(a.b0 == doctest::Approx(b.b0).epsilon(1e-12));
  }
  SUBCASE("degenerate pair rejected") {
    PlaneWaveSpec z1 = w1, z2 = w2;
    z1.p = z1.d;
    z2.p = z2.d;  // both transverse parts vanish
    CHECK_THROWS_AS(independence_constant_b0(z1, z2, 1000), ValidationError);
  }
}

TEST_CASE("spec validation") {
  PlaneWaveSpec w;
  w.k = -1.0;
  CHECK_THROWS_AS(w.validate(), ValidationError);
  w.k = 1.0;
  w.d = Vec3(0, 0, 2);
  CHECK_THROWS_AS(w.validate(), ValidationError);
  w.d = Vec3(0, 0, 1);
  w.p = Vec3(2, 0, 0);
  CHECK_THROWS_AS(w.validate(), ValidationError);
  w.p = Vec3(1, 0, 0);
  CHECK_NOTHROW(w.validate());
}
