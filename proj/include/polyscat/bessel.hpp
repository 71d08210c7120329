// bessel.hpp -- spherical Bessel functions and Legendre-type angular
// functions. j_n uses downward (Miller) recurrence normalised by j_0 for
// stability at n > x; y_n recurses upward, which is stable.

#pragma once

#include <vector>

#include "polyscat/common.hpp"

namespace polyscat {

// j_0..j_nmax at x >= 0
std::vector<double> spherical_jn_array(int nmax, double x);

// y_0..y_nmax at x > 0
std::vector<double> spherical_yn_array(int nmax, double x);

// Legendre P_0..P_nmax at mu in [-1,1]
std::vector<double> legendre_pn_array(int nmax, double mu);

// Mie angular functions pi_n = P_n^1/sin(theta), tau_n = dP_n^1/dtheta for
// n = 0..nmax at mu = cos(theta); pi[0] = tau[0] = 0.
void mie_angular_functions(int nmax, double mu, std::vector<double>& pi_n,
                           std::vector<double>& tau_n);

}  // namespace polyscat
