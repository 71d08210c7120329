// stability.hpp -- inverse-scattering experiment harness: scenario configs,
// scatterer-pair runs, near/far-field errors, parameter sweeps with
// monotonicity bookkeeping, descriptive log-log fits, and convergence
// studies under scatterer perturbation.

#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "polyscat/config.hpp"
#include "polyscat/distances.hpp"
#include "polyscat/efie.hpp"
#include "polyscat/geometry_checks.hpp"
#include "polyscat/mie.hpp"

namespace polyscat {

struct ScattererSpec {
  std::string kind = "cube";  // cube | box | screen | icosphere | file
  double size = 1.0;          // side (cube/screen) or radius (icosphere)
  Vec3 half_extent = Vec3::Constant(0.5);  // box only
  Vec3 center = Vec3::Zero();
  int subdivision = 4;        // face grid n, or icosphere level
  std::string path;           // file kind
  std::string as;             // optional kind override: obstacle|screen|mixed
};

TriangleMesh build_spec_mesh(const ScattererSpec& spec);
Scatterer build_scatterer(const ScattererSpec& spec, const ClassParams& params);

struct ScenarioConfig {
  ScattererSpec a, b;
  std::vector<PlaneWaveSpec> waves;  // 1 or 2
  Vec3 x0{3.2, 0.0, 0.0};
  double rho_tilde = 0.5;
  double R0 = 1.5;
  double R1 = 4.0;
  int farfield_n_theta = 16;
  int quad_order = 4;
  double distance_res = 0.02;
  int ball_n_r = 6, ball_n_theta = 6;
  std::uint64_t seed = 1;
  bool magnetic_error = false;  // measure H instead of E
  std::string case_id = "case";
  ClassParams class_params;

  // Enforces the measurement geometry R0 + 1 + rho_tilde <= |x0| <= R1,
  // wave validity, and b0 > 0 for two-wave runs.
  void validate() const;

  static ScenarioConfig from_kv(const KeyValueConfig& kv);
};

struct StabilityRecord {
  std::string case_id;
  double t = 0.0;
  double d = 0.0, d_hat = 0.0, d_tilde = 0.0;
  double eps_near = 0.0, eps_far = 0.0;
  double eta_of_eps = std::numeric_limits<double>::quiet_NaN();  // only for eps < 1/e
  double k = 0.0;
  int n_waves = 0;
  int ndof_a = 0, ndof_b = 0;
  std::string kind;  // scatterer kind flag
  double b0 = std::numeric_limits<double>::quiet_NaN();  // two-wave metadata
};

// One scatterer with its factorised system and per-wave solutions.
struct SolvedScatterer {
  std::unique_ptr<Scatterer> scatterer;
  std::unique_ptr<RWGBasis> basis;
  std::unique_ptr<EfieSystem> system;
  std::vector<SurfaceCurrent> currents;             // one per wave
  std::vector<CurrentFieldEvaluator> evaluators;    // matching currents
  std::vector<FarFieldPattern> far_fields;

  int n_dof() const { return basis ? basis->n_dof() : 0; }
};

SolvedScatterer solve_scatterer(const ScattererSpec& spec, const ScenarioConfig& cfg);

// L2 error over the measurement ball B_rho(x0) between two solved fields of
// the same incident wave (total fields; the incident part cancels, so the
// scattered difference is integrated).
double near_field_error(const CurrentFieldEvaluator& a, const CurrentFieldEvaluator& b,
                        const Vec3& x0, double rho, int n_r, int n_theta,
                        bool magnetic = false);

// L2(S^2) error between far-field patterns (electric by default).
double far_field_error(const FarFieldPattern& a, const FarFieldPattern& b,
                       bool magnetic = false);

StabilityRecord run_pair(const ScenarioConfig& cfg);

// Families keyed by one scalar t: translate (shift along +x), dent (depth),
// notch (width = depth), scale (factor 1 + t). B derives from A.
ScattererSpec apply_family(const ScattererSpec& a, const std::string& family, double t);

std::vector<StabilityRecord> run_sweep(const ScenarioConfig& base, const std::string& family,
                                       const std::vector<double>& ts);

struct StabilityFit {
  double amplitude = 0.0;  // A in d ~ A eta(eps)^C
  double exponent = 0.0;   // C
  double residual = 0.0;   // rms residual of the log-log fit
};

// Least squares of log d = log A + C log eta(eps) over records with
// eps < 1/e and d > 0; needs at least 3 usable records. Descriptive only:
// the theorems prove existence of C, not its value.
StabilityFit fit_stability_curve(const std::vector<StabilityRecord>& records);

struct ConvergenceStudy {
  std::vector<double> ts;
  std::vector<double> eps;
  double floor_estimate = 0.0;  // same-scatterer refinement error
  bool strictly_decreasing = false;
};

// Translate-family convergence run: eps(t_n) for decreasing t_n, plus a
// discretization floor from re-meshing the unperturbed scatterer one
// subdivision finer. t = 0 entries short-circuit to eps = 0.
ConvergenceStudy run_convergence_study(const ScenarioConfig& base,
                                       const std::vector<double>& ts);

// Spearman rank correlation (ties broken by index; the sweeps produce
// distinct values).
double spearman_rank_correlation(const std::vector<double>& x, const std::vector<double>& y);

// Append-only CSV persistence with a schema-version header.
void write_records_csv(const std::vector<StabilityRecord>& records, const std::string& path,
                       bool append = false);

}  // namespace polyscat
