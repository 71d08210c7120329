// efie.hpp -- dense Galerkin method-of-moments solver for the electric field
// integral equation on a PEC surface.
//
// Mixed-potential form with the free-space kernel G = e^{ikR}/(4 pi R):
//   Z_mn = ik <f_m, G f_n> - (i/k) <div f_m, G div f_n>
//   b_m  = -<f_m, E_inc>
// The scattered field of a coefficient vector c is
//   E_s(x) = ik Int G J + (i/k) grad Int G (div J),   J = sum c_n f_n
//   H_s(x) = Int grad_x G x J
// which radiates and satisfies the far-field normalisation
// E_s = (e^{ikr}/r) E_inf + O(r^-2).
//
// Self and near triangle interactions extract the 1/R singularity and use
// the classical analytic formulas for Int 1/R and Int (y-rho)/R over a
// triangle; the smooth remainder (e^{ikR}-1)/R goes through Gauss rules.
//
// The matrix is assembled once per unordered triangle pair and scattered
// symmetrically, so Z is complex symmetric to the last bit, and assembly is
// deterministic for any thread count (parallel block computation, serial
// in-order scatter).

#pragma once

#include <memory>

#include "polyscat/farfield.hpp"
#include "polyscat/plane_wave.hpp"
#include "polyscat/rng.hpp"
#include "polyscat/rwg.hpp"

namespace polyscat {

class EfieSystem {
public:
  EfieSystem(const RWGBasis& basis, double k, int quad_points);

  const RWGBasis& basis() const { return *basis_; }
  double k() const { return k_; }
  int quad_points() const { return quad_; }
  const Eigen::MatrixXcd& matrix() const { return Z_; }

  // Pivoted LU; throws SolverError when the condition estimate exceeds 1e12
  // (interior resonance or degenerate mesh).
  void factorize();
  bool factorized() const { return lu_ != nullptr; }
  double condition_estimate() const { return condition_estimate_; }

  Eigen::VectorXcd rhs(const PlaneWaveSpec& w) const;
  Eigen::VectorXcd solve(const Eigen::VectorXcd& rhs_vec) const;

private:
  void assemble();

  const RWGBasis* basis_;
  double k_;
  int quad_;
  Eigen::MatrixXcd Z_;
  std::unique_ptr<Eigen::PartialPivLU<Eigen::MatrixXcd>> lu_;
  double condition_estimate_ = 0.0;
};

struct SurfaceCurrent {
  const RWGBasis* basis = nullptr;
  PlaneWaveSpec wave;
  double k = 0.0;
  Eigen::VectorXcd coefficients;
  double solve_residual = 0.0;  // |Z c - b| / |b|
};

EfieSystem assemble_efie(const RWGBasis& basis, double k, int quad_points);

SurfaceCurrent solve_current(EfieSystem& system, const PlaneWaveSpec& w);

// Precomputed current/charge samples for repeated field evaluations of one
// solved current. Cheap to copy the handle; safe for concurrent evaluation.
class CurrentFieldEvaluator {
public:
  CurrentFieldEvaluator(const SurfaceCurrent& c, int quad_points = 7);
  // Scattered fields at x. Precondition: x is farther from the surface than
  // 0.05 x the local edge length (plain quadrature accuracy).
  EMSample scattered(const Vec3& x) const;
  // Scattered + incident.
  EMSample total(const Vec3& x) const;

private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

EMSample eval_scattered_near(const SurfaceCurrent& c, const Vec3& x, int quad_points = 7);
EMSample eval_total_near(const SurfaceCurrent& c, const Vec3& x, int quad_points = 7);

FarFieldPattern eval_far_field(const SurfaceCurrent& c, const SphereGrid& grid,
                               int quad_points = 7);

// RMS of |nu x (E_inc + E_s)| over off-node surface samples (offset +-delta
// along the normal, delta = 0.1 x local edge) relative to RMS |nu x E_inc|.
// Returns 0 for vanishing incident tangential trace.
double pec_residual(const SurfaceCurrent& c, int samples_per_triangle, Rng& rng);

}  // namespace polyscat
