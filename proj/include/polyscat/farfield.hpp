// farfield.hpp -- sampled far-field patterns on a sphere quadrature grid.
//
// CSV schema (shared by the solver and the sphere oracle):
//   theta,phi,ReEx,ImEx,ReEy,ImEy,ReEz,ImEz,ReHx,ImHx,...,ImHz
// one header row, decimal floats with 17 significant digits.

#pragma once

#include <string>
#include <vector>

#include "polyscat/quadrature.hpp"

namespace polyscat {

struct FarFieldPattern {
  SphereGrid grid;
  std::vector<CVec3> E_inf;
  std::vector<CVec3> H_inf;
  // realized identity residuals, filled by the producer:
  double transversality_tol = 0.0;  // max |xhat.E_inf| / max |E_inf|
  double relation_tol = 0.0;        // max |H_inf - xhat x E_inf| / max |E_inf|

  // max_q |E_inf(q)|
  double max_E() const;
  // sqrt( sum_q w_q |E_inf(q)|^2 )
  double l2_norm_E() const;

  // recomputes the two identity residuals from the stored samples
  void refresh_identity_tols();
};

// L2(S^2) norm of the difference of electric patterns; grids must coincide.
double far_field_l2_difference(const FarFieldPattern& a, const FarFieldPattern& b);

void write_far_field_csv(const FarFieldPattern& p, const std::string& path);

}  // namespace polyscat
