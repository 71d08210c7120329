// geometry_checks.hpp -- finite-resolution checks of the admissibility-class
// conditions: uniform exterior connectedness and per-cell polyhedral
// constants. Both are approximate and say so in their reports.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyscat/distances.hpp"

namespace polyscat {

struct ConnectednessReport {
  bool connected = true;
  double resolution = 0.0;  // voxel spacing actually used
  // When disconnected: two ball centers (radius t) in different eroded
  // components, witnessing the failure.
  std::optional<std::pair<Vec3, Vec3>> witness;
  int component_count = 0;
};

// Voxelises a box around the scatterer at spacing `res`, erodes the exterior
// by s (keeps voxels with dist > s from the set), flood-fills, and checks
// that every ball B_t contained in the exterior lies in one eroded
// component. Approximate: a check at finitely many scales of the
// paper-level condition.  Requires 0 < s <= t and res <= s/4.
ConnectednessReport exterior_connectedness(const Scatterer& a, double t, double s, double res);

struct CellReport {
  int group = 0;
  int triangle_count = 0;
  bool planar = true;
  double plane_deviation = 0.0;   // max offset from the fitted plane
  double min_feature_size = 0.0;  // minimal directional width of the cell
  bool feature_pass = true;       // min_feature_size >= h (inclusive)
  double max_turning_angle = 0.0; // advisory Lipschitz heuristic, radians
};

struct ClassMembershipReport {
  std::vector<CellReport> cells;
  bool all_pass = true;
  std::vector<std::string> warnings;  // advisory only (Lipschitz heuristics)
};

// Per facet-group cell: planarity against 1e-9 x diameter, minimal in-plane
// feature size against h (rotating calipers on the projected hull), and an
// advisory turning-angle bound standing in for the Lipschitz constant L.
ClassMembershipReport validate_class_membership(const Scatterer& a);

}  // namespace polyscat
