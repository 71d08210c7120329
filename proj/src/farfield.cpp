#include "polyscat/farfield.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace polyscat {

double FarFieldPattern::max_E() const {
  double m = 0.0;
  for (const auto& e : E_inf) m = std::max(m, e.norm());
  return m;
}

double FarFieldPattern::l2_norm_E() const {
  double s = 0.0;
  for (size_t q = 0; q < E_inf.size(); ++q) s += grid.weights[q] * E_inf[q].squaredNorm();
  return std::sqrt(s);
}

void FarFieldPattern::refresh_identity_tols() {
  const double ref = max_E();
  transversality_tol = 0.0;
  relation_tol = 0.0;
  if (ref == 0.0) return;
  for (size_t q = 0; q < E_inf.size(); ++q) {
    const CVec3 xh = grid.directions[q].cast<cdouble>();
    transversality_tol = std::max(transversality_tol, std::abs(xh.dot(E_inf[q])) / ref);
    const CVec3 rel = H_inf[q] - grid.directions[q].cast<cdouble>().cross(E_inf[q]);
    relation_tol = std::max(relation_tol, rel.norm() / ref);
  }
}

double far_field_l2_difference(const FarFieldPattern& a, const FarFieldPattern& b) {
  if (a.grid.size() != b.grid.size())
    throw ValidationError("far-field grids differ in size");
  double s = 0.0;
  for (size_t q = 0; q < a.E_inf.size(); ++q) {
    if ((a.grid.directions[q] - b.grid.directions[q]).norm() > 1e-12)
      throw ValidationError("far-field grids differ");
    s += a.grid.weights[q] * (a.E_inf[q] - b.E_inf[q]).squaredNorm();
  }
  return std::sqrt(s);
}

void write_far_field_csv(const FarFieldPattern& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  out << "theta,phi,ReEx,ImEx,ReEy,ImEy,ReEz,ImEz,ReHx,ImHx,ReHy,ImHy,ReHz,ImHz\n";
  char buf[64];
  auto put = [&](double v, bool last = false) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf << (last ? "\n" : ",");
  };
  for (size_t q = 0; q < p.E_inf.size(); ++q) {
    put(p.grid.theta[q]);
    put(p.grid.phi[q]);
    for (int c = 0; c < 3; ++c) {
      put(p.E_inf[q][c].real());
      put(p.E_inf[q][c].imag());
    }
    for (int c = 0; c < 3; ++c) {
      put(p.H_inf[q][c].real());
      put(p.H_inf[q][c].imag(), c == 2);
    }
  }
}

}  // namespace polyscat
