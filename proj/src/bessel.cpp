#include "polyscat/bessel.hpp"

#include <cmath>

namespace polyscat {

std::vector<double> spherical_jn_array(int nmax, double x) {
  if (nmax < 0) throw ValidationError("nmax must be >= 0");
  std::vector<double> j(static_cast<size_t>(nmax) + 1, 0.0);
  if (x == 0.0) {
    j[0] = 1.0;
    return j;
  }
  if (x < 1e-3) {
    // power series keeps relative accuracy where downward recurrence would
    // underflow the normaliser
    double dblfact = 1.0;  // (2n+1)!!
    double xn = 1.0;
    for (int n = 0; n <= nmax; ++n) {
      if (n > 0) {
        dblfact *= 2.0 * n + 1.0;
        xn *= x;
      } else {
        dblfact = 1.0;
      }
      const double x2 = x * x;
      j[static_cast<size_t>(n)] =
          xn / dblfact * (1.0 - x2 / (2.0 * (2.0 * n + 3.0)) +
                          x2 * x2 / (8.0 * (2.0 * n + 3.0) * (2.0 * n + 5.0)));
    }
    return j;
  }
  const int start = nmax + 16 + static_cast<int>(2.0 * std::sqrt(static_cast<double>(nmax) + x));
  double jp2 = 0.0, jp1 = 1e-300;
  std::vector<double> tmp(static_cast<size_t>(start) + 1, 0.0);
  tmp[static_cast<size_t>(start)] = jp1;
  for (int n = start - 1; n >= 0; --n) {
    double cur = (2.0 * n + 3.0) / x * jp1 - jp2;
    if (std::abs(cur) > 1e250) {  // rescale the whole tail
      const double s = 1e-250;
      cur *= s;
      jp1 *= s;
      for (int m = n + 1; m <= start; ++m) tmp[static_cast<size_t>(m)] *= s;
    }
    tmp[static_cast<size_t>(n)] = cur;
    jp2 = jp1;
    jp1 = cur;
  }
  const double scale = (std::sin(x) / x) / tmp[0];
  for (int n = 0; n <= nmax; ++n) j[static_cast<size_t>(n)] = tmp[static_cast<size_t>(n)] * scale;
  return j;
}

std::vector<double> spherical_yn_array(int nmax, double x) {
  if (nmax < 0) throw ValidationError("nmax must be >= 0");
  if (x <= 0.0) throw ValidationError("y_n needs x > 0");
  std::vector<double> y(static_cast<size_t>(nmax) + 1);
  y[0] = -std::cos(x) / x;
  if (nmax >= 1) y[1] = -std::cos(x) / (x * x) - std::sin(x) / x;
  for (int n = 1; n < nmax; ++n)
    y[static_cast<size_t>(n) + 1] = (2.0 * n + 1.0) / x * y[static_cast<size_t>(n)] - y[static_cast<size_t>(n) - 1];
  return y;
}

std::vector<double> legendre_pn_array(int nmax, double mu) {
  std::vector<double> p(static_cast<size_t>(nmax) + 1);
  p[0] = 1.0;
  if (nmax >= 1) p[1] = mu;
  for (int n = 1; n < nmax; ++n)
    p[static_cast<size_t>(n) + 1] =
        ((2.0 * n + 1.0) * mu * p[static_cast<size_t>(n)] - n * p[static_cast<size_t>(n) - 1]) / (n + 1.0);
  return p;
}

void mie_angular_functions(int nmax, double mu, std::vector<double>& pi_n,
                           std::vector<double>& tau_n) {
  pi_n.assign(static_cast<size_t>(nmax) + 1, 0.0);
  tau_n.assign(static_cast<size_t>(nmax) + 1, 0.0);
  if (nmax < 1) return;
  pi_n[1] = 1.0;
  tau_n[1] = mu;
  for (int n = 2; n <= nmax; ++n) {
    pi_n[static_cast<size_t>(n)] = ((2.0 * n - 1.0) * mu * pi_n[static_cast<size_t>(n) - 1] -
                                    n * pi_n[static_cast<size_t>(n) - 2]) / (n - 1.0);
    tau_n[static_cast<size_t>(n)] =
        n * mu * pi_n[static_cast<size_t>(n)] - (n + 1.0) * pi_n[static_cast<size_t>(n) - 1];
  }
}

}  // namespace polyscat
