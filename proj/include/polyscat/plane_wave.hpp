// plane_wave.hpp -- normalised electromagnetic plane waves and the constants
// attached to a pair of incidences.
//
// The incident pair is the entire Maxwell solution
//   E(x) = i k e^{ik x.d} (d^p)^d,   H(x) = i k e^{ik x.d} (d^p)
// (^ denotes the vector product), i.e. the closed form of the double curl of
// p e^{ik x.d}. It satisfies curl E = ik H and curl H = -ik E identically.

#pragma once

#include "polyscat/common.hpp"

namespace polyscat {

struct PlaneWaveSpec {
  double k = 1.0;  // wavenumber, > 0
  Vec3 d{0, 0, 1};   // unit propagation direction
  Vec3 p{1, 0, 0};   // polarisation, 0 < |p| <= 1

  // Throws ValidationError unless k > 0, |d| = 1 (1e-12), 0 < |p| <= 1 and
  // the transverse part (d^p)^d does not vanish.
  void validate() const;

  Vec3 transverse_polarisation() const { return d.cross(p).cross(d); }
};

struct EMSample {
  Vec3 x = Vec3::Zero();
  CVec3 E = CVec3::Zero();
  CVec3 H = CVec3::Zero();
};

EMSample eval_plane_wave(const PlaneWaveSpec& w, const Vec3& x);

// (E,H) -> (H,-E): maps Maxwell solutions to Maxwell solutions with epsilon
// and mu swapped (identical here since both are the identity), preserving
// the outgoing property. Turns a PMC problem into a PEC one.
EMSample duality_swap(const EMSample& s);

// b = |(d^p)^d|
double polarization_constant(const PlaneWaveSpec& w);

struct IndependenceResult {
  double b0 = 0.0;
  Vec3 minimizer = Vec3::Zero();
  double resolution_error = 0.0;  // estimated from the final refinement step
};

// b0 = min over nu in S^2 of max_j |nu ^ [(d_j^p_j)^d_j]|, by icosphere grid
// search with two local refinement passes; `grid` is the minimum number of
// starting sample directions (>= 1000 enforced).
IndependenceResult independence_constant_b0(const PlaneWaveSpec& w1, const PlaneWaveSpec& w2,
                                            int grid = 2562);

}  // namespace polyscat
