// common.hpp -- shared scalar/vector types and error classes.
//
// Conventions used throughout the library:
//   * time dependence e^{-i omega t}; Maxwell system  curl E = ik H,  curl H = -ik E
//   * free-space kernel G(x,y) = e^{ik|x-y|} / (4 pi |x-y|)
//   * far field normalisation  E_s(x) = (e^{ik|x|}/|x|) E_inf(xhat) + O(|x|^-2)

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace polyscat {

using Vec3  = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Mat3  = Eigen::Matrix3d;
using cdouble = std::complex<double>;

inline constexpr cdouble kImag{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

// Thrown on malformed input files (mesh lines, config lines).
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an input violates a documented invariant (degenerate
// triangle, non-manifold edge, config constraint, ...).
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when the dense solve cannot be trusted (near-singular system).
class SolverError : public std::runtime_error {
public:
  SolverError(const std::string& what, double condition_estimate)
      : std::runtime_error(what), condition_estimate(condition_estimate) {}
  double condition_estimate;
};

inline double sqr(double x) { return x * x; }

}  // namespace polyscat
