// polyscat -- command line front end for the scattering workbench.
//
// Exit codes: 0 success, 1 validation/usage error, 2 solver failure.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "polyscat/bessel.hpp"
#include "polyscat/diagnostics.hpp"
#include "polyscat/stability.hpp"
#include "polyscat/transforms.hpp"

namespace ps = polyscat;

namespace {

struct DiagnosticsWriter {
  std::ofstream out;
  explicit DiagnosticsWriter(const std::string& path) {
    if (path.empty()) return;
    out.open(path);
    if (!out) throw ps::ParseError("cannot open '" + path + "' for writing");
    out << "check_name,parameters,residual,threshold,status\n";
  }
  void row(const std::string& name, const std::string& params, double residual,
           double threshold, const std::string& status) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s,%s,%.17g,%.17g,%s\n", name.c_str(), params.c_str(),
                  residual, threshold, status.c_str());
    if (out.is_open()) out << buf;
    std::fputs(buf, stdout);
  }
};

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos < csv.size()) {
    size_t next = csv.find(',', pos);
    if (next == std::string::npos) next = csv.size();
    out.push_back(std::stod(csv.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

ps::ScenarioConfig load_scenario(const std::string& path) {
  return ps::ScenarioConfig::from_kv(ps::KeyValueConfig::from_file(path));
}

int cmd_solve(const std::string& config_path, const std::string& out_path) {
  ps::ScenarioConfig cfg = load_scenario(config_path);
  cfg.validate();
  const ps::SolvedScatterer A = ps::solve_scatterer(cfg.a, cfg);
  std::printf("n_dof %d\n", A.n_dof());
  std::printf("condition_estimate %.6g\n", A.system->condition_estimate());
  for (size_t j = 0; j < A.currents.size(); ++j) {
    std::printf("wave%zu solve_residual %.6g\n", j + 1, A.currents[j].solve_residual);
    ps::Rng rng(cfg.seed);
    std::printf("wave%zu pec_residual %.6g\n", j + 1,
                ps::pec_residual(A.currents[j], 2, rng));
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw ps::ParseError("cannot open '" + out_path + "'");
    out << "dof,re,im\n";
    char buf[96];
    for (int i = 0; i < A.n_dof(); ++i) {
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", i,
                    A.currents[0].coefficients(i).real(),
                    A.currents[0].coefficients(i).imag());
      out << buf;
    }
  }
  return 0;
}

int cmd_farfield(const std::string& config_path, const std::string& out_path) {
  ps::ScenarioConfig cfg = load_scenario(config_path);
  cfg.validate();
  const ps::SolvedScatterer A = ps::solve_scatterer(cfg.a, cfg);
  ps::write_far_field_csv(A.far_fields.front(), out_path);
  std::printf("transversality_tol %.6g\n", A.far_fields.front().transversality_tol);
  std::printf("relation_tol %.6g\n", A.far_fields.front().relation_tol);
  std::printf("wrote %s\n", out_path.c_str());
  return 0;
}

int cmd_mie_validate(double ka, int mesh_level, int n_theta, int quad, double threshold) {
  const double k = ka;  // unit sphere radius
  ps::PlaneWaveSpec w;
  w.k = k;
  w.d = ps::Vec3(0, 0, 1);
  w.p = ps::Vec3(1, 0, 0);

  const ps::TriangleMesh sphere = ps::make_icosphere(1.0, ps::Vec3::Zero(), mesh_level);
  const ps::RWGBasis basis = ps::build_rwg(sphere);
  ps::EfieSystem system(basis, k, quad);
  ps::SurfaceCurrent cur = ps::solve_current(system, w);
  const ps::SphereGrid grid = ps::sphere_grid(n_theta);
  const ps::FarFieldPattern ff = ps::eval_far_field(cur, grid, quad);

  const ps::MieSolution sol = ps::mie_solution(1.0, k);
  const ps::FarFieldPattern ref = ps::mie_far_field(sol, w, grid);

  const double err = ps::far_field_l2_difference(ff, ref) / ref.l2_norm_E();
  const bool pass = err < threshold;
  std::printf("triangles %d  n_dof %d\n", sphere.num_triangles(), basis.n_dof());
  std::printf("relative_l2_farfield_error %.6g\n", err);
  std::printf("threshold %.6g  %s\n", threshold, pass ? "PASS" : "FAIL");
  return pass ? 0 : 1;
}

int cmd_distance(const std::string& a_path, const std::string& b_path, double res) {
  ps::TriangleMesh ma = ps::load_mesh(a_path);
  ps::TriangleMesh mb = ps::load_mesh(b_path);
  double radius = 0.0;
  for (const auto& v : ma.vertices) radius = std::max(radius, v.norm());
  for (const auto& v : mb.vertices) radius = std::max(radius, v.norm());
  ps::ClassParams params;
  params.R0 = radius * 1.000001;
  auto kind_of = [](const ps::TriangleMesh& m) {
    const ps::EdgeTable t = ps::build_edge_table(m);
    return ps::is_watertight(m, t) ? ps::ScattererKind::Obstacle : ps::ScattererKind::Screen;
  };
  const ps::ScattererKind ka = kind_of(ma), kb = kind_of(mb);
  const ps::Scatterer A(std::move(ma), ka, params);
  const ps::Scatterer B(std::move(mb), kb, params);
  const ps::DistanceReport r = ps::distance_report(A, B, res);
  std::printf("d %.17g\nd_hat %.17g\nd_tilde %.17g\nresolution %.17g\n", r.d, r.d_hat,
              r.d_tilde, r.sampling_resolution);
  return 0;
}

int cmd_radiation_check(const std::string& config_path, const std::string& out_path) {
  ps::ScenarioConfig cfg = load_scenario(config_path);
  cfg.validate();
  const double k = cfg.waves.front().k;
  const ps::SolvedScatterer A = ps::solve_scatterer(cfg.a, cfg);
  const ps::SphereGrid grid = ps::sphere_grid(8);

  const ps::CurrentFieldEvaluator& ev = A.evaluators.front();
  auto scattered = [&](const ps::Vec3& x) { return ev.scattered(x); };
  const double r1 = 20.0 / k, r2 = 40.0 / k;
  const ps::RadiationResidual res1 = ps::silver_muller_residual(scattered, r1, grid);
  const ps::RadiationResidual res2 = ps::silver_muller_residual(scattered, r2, grid);
  const double ratio = res1.primary / res2.primary;

  DiagnosticsWriter diag(out_path);
  char params[128];
  std::snprintf(params, sizeof params, "r=%.6g", r1);
  diag.row("silver_muller_scattered", params, res1.primary, 0.0, "advisory");
  std::snprintf(params, sizeof params, "r=%.6g", r2);
  diag.row("silver_muller_scattered", params, res2.primary, 0.0, "advisory");
  std::snprintf(params, sizeof params, "r1=%.6g;r2=%.6g", r1, r2);
  diag.row("silver_muller_decay_ratio", params, ratio, 0.0, "advisory");

  // incident wave alone is not outgoing: closed-form residual at xhat = -d
  const ps::PlaneWaveSpec w = cfg.waves.front();
  auto incident = [&](const ps::Vec3& x) { return ps::eval_plane_wave(w, x); };
  const ps::RadiationResidual inc1 = ps::silver_muller_residual(incident, r1, grid);
  const double closed_form = 2.0 * k * w.d.cross(w.p).norm() * r1;
  std::snprintf(params, sizeof params, "r=%.6g;closed_form=%.6g", r1, closed_form);
  diag.row("silver_muller_incident", params, inc1.primary, closed_form,
           inc1.primary > 0.5 * closed_form ? "flagged_non_radiating" : "unexpected");
  return 0;
}

int cmd_three_spheres(double rho1, double rho, double rho2, double k, int n) {
  ps::PlaneWaveSpec w;
  w.k = k;
  auto plane = [&](const ps::Vec3& x) -> ps::cdouble {
    return std::exp(ps::kImag * (k * w.d.dot(x)));
  };
  const ps::ThreeSpheresResult pw = ps::three_spheres_exponent(plane, rho1, rho, rho2);
  const double closed = std::log(rho2 / rho) / std::log(rho2 / rho1);
  std::printf("plane_wave beta_hat %.12g closed_form %.12g\n", pw.beta_hat, closed);

  const std::vector<double> jn = ps::spherical_jn_array(n, 1.0);  // warm-up validity check
  (void)jn;
  auto multipole = [&](const ps::Vec3& x) -> ps::cdouble {
    const double r = x.norm();
    const double mu = r > 0.0 ? x.z() / r : 1.0;
    const auto j = ps::spherical_jn_array(n, k * r);
    const auto p = ps::legendre_pn_array(n, mu);
    return j[static_cast<size_t>(n)] * p[static_cast<size_t>(n)];
  };
  const ps::ThreeSpheresResult mp = ps::three_spheres_exponent(multipole, rho1, rho, rho2);
  std::printf("multipole_n%d beta_hat %.12g norms %.6g %.6g %.6g\n", n, mp.beta_hat,
              mp.norm_rho1, mp.norm_rho, mp.norm_rho2);
  const bool ok = mp.beta_hat > 0.0 && mp.beta_hat < 1.0;
  std::printf("%s\n", ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}

int cmd_transform_check(double h_fd, const std::string& out_path) {
  DiagnosticsWriter diag(out_path);

  // affine: u(y) = (0, y1, 0), T(x) = 2x; exact for central differences
  {
    const ps::BiLipschitzMap T = ps::BiLipschitzMap::affine(2.0 * ps::Mat3::Identity(),
                                                            ps::Vec3::Zero());
    ps::VectorField u = [](const ps::Vec3& y) { return ps::CVec3(0.0, y.x(), 0.0); };
    ps::VectorField cu = [](const ps::Vec3&) { return ps::CVec3(0.0, 0.0, 1.0); };
    std::vector<ps::Vec3> pts = {{0.3, 0.1, -0.2}, {1.0, 2.0, 0.5}, {-0.4, 0.7, 1.1}};
    const double res = ps::curl_transform_check(u, cu, T, pts, h_fd);
    diag.row("curl_transform_affine", "T=2x", res, 1e-10, res < 1e-10 ? "pass" : "fail");
  }
  // rotation
  {
    const double c = std::cos(0.7), s = std::sin(0.7);
    ps::Mat3 R;
    R << c, -s, 0, s, c, 0, 0, 0, 1;
    const ps::BiLipschitzMap T = ps::BiLipschitzMap::affine(R, ps::Vec3(0.1, -0.2, 0.3));
    ps::PlaneWaveSpec w;
    ps::VectorField u = [w](const ps::Vec3& y) { return ps::eval_plane_wave(w, y).E; };
    ps::VectorField cu = [w](const ps::Vec3& y) -> ps::CVec3 {
      return ps::kImag * w.k * ps::eval_plane_wave(w, y).H;  // curl E = ik H
    };
    std::vector<ps::Vec3> pts = {{0.2, 0.4, -0.1}, {-0.3, 0.9, 0.6}, {1.2, -0.5, 0.3}};
    const double res = ps::curl_transform_check(u, cu, T, pts, h_fd);
    diag.row("curl_transform_rotation", "R(0.7)", res, 1e-4,
             res < 1e-4 ? "pass" : "fail");
  }
  // smooth nonlinear map, second-order convergence expected
  {
    auto fwd = [](const ps::Vec3& x) { return ps::Vec3(x.x() + 0.1 * std::sin(x.y()), x.y(), x.z()); };
    auto inv = [](const ps::Vec3& y) { return ps::Vec3(y.x() - 0.1 * std::sin(y.y()), y.y(), y.z()); };
    auto jac = [](const ps::Vec3& x) {
      ps::Mat3 J = ps::Mat3::Identity();
      J(0, 1) = 0.1 * std::cos(x.y());
      return J;
    };
    const ps::BiLipschitzMap T(fwd, inv, jac, 1.1);
    ps::PlaneWaveSpec w;
    ps::VectorField u = [w](const ps::Vec3& y) { return ps::eval_plane_wave(w, y).E; };
    ps::VectorField cu = [w](const ps::Vec3& y) -> ps::CVec3 {
      return ps::kImag * w.k * ps::eval_plane_wave(w, y).H;
    };
    std::vector<ps::Vec3> pts = {{0.2, 0.4, -0.1}, {-0.3, 0.9, 0.6}, {1.2, -0.5, 0.3}};
    double prev = 0.0;
    for (int lvl = 0; lvl < 4; ++lvl) {
      const double h = h_fd / (1 << lvl);
      const double res = ps::curl_transform_check(u, cu, T, pts, h);
      char params[64];
      std::snprintf(params, sizeof params, "h=%.6g", h);
      const double order = lvl > 0 ? std::log2(prev / res) : 0.0;
      diag.row("curl_transform_nonlinear", params, res, 0.0,
               lvl > 0 ? (std::abs(order - 2.0) < 0.2 ? "pass" : "fail") : "advisory");
      prev = res;
    }
  }
  return 0;
}

int cmd_stability_sweep(const std::string& config_path, const std::string& family,
                        const std::string& values, const std::string& out_path, bool append) {
  ps::ScenarioConfig cfg = load_scenario(config_path);
  const std::vector<double> ts = parse_values(values);
  const std::vector<ps::StabilityRecord> records = ps::run_sweep(cfg, family, ts);
  if (!out_path.empty()) ps::write_records_csv(records, out_path, append);
  for (const auto& r : records)
    std::printf("%s t=%.6g d=%.6g eps=%.6g eps0=%.6g\n", r.case_id.c_str(), r.t, r.d,
                r.eps_near, r.eps_far);
  if (records.size() >= 3) {
    try {
      const ps::StabilityFit fit = ps::fit_stability_curve(records);
      std::printf("fit amplitude=%.6g exponent=%.6g residual=%.6g\n", fit.amplitude,
                  fit.exponent, fit.residual);
      // the min{d,h} form of the two-measurement bound, for the report
      for (const auto& r : records)
        std::printf("min_d_h t=%.6g %.6g\n", r.t, std::min(r.d, cfg.class_params.h));
    } catch (const ps::ValidationError& e) {
      std::printf("fit skipped: %s\n", e.what());
    }
  }
  return 0;
}

int cmd_convergence_study(const std::string& config_path, const std::string& values,
                          const std::string& out_path) {
  ps::ScenarioConfig cfg = load_scenario(config_path);
  const std::vector<double> ts = parse_values(values);
  const ps::ConvergenceStudy study = ps::run_convergence_study(cfg, ts);
  std::ofstream out;
  if (!out_path.empty()) {
    out.open(out_path);
    if (!out) throw ps::ParseError("cannot open '" + out_path + "'");
    out << "# polyscat convergence study v1\nt,eps_near\n";
  }
  char buf[96];
  for (size_t i = 0; i < study.ts.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", study.ts[i], study.eps[i]);
    if (out.is_open()) out << buf;
    std::fputs(buf, stdout);
  }
  std::printf("floor_estimate %.17g\n", study.floor_estimate);
  std::printf("strictly_decreasing %s\n", study.strictly_decreasing ? "yes" : "no");
  if (out.is_open()) {
    std::snprintf(buf, sizeof buf, "# floor_estimate,%.17g\n", study.floor_estimate);
    out << buf;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polyscat: boundary-integral workbench for Maxwell scattering from polyhedra"};
  app.require_subcommand(1);

  std::string config_path, out_path, a_path, b_path, family, values;
  bool append = false;
  double res = 0.02, ka = 1.0, rho1 = 0.1, rho = 0.2, rho2 = 0.4, kval = 1.0, h_fd = 0.1;
  int mesh_level = 3, n_theta = 16, quad = 4, n_multipole = 5;
  double threshold = 0.03;

  auto* solve = app.add_subcommand("solve", "solve the EFIE for scatterer A");
  solve->add_option("--config", config_path)->required();
  solve->add_option("--out", out_path);

  auto* farfield = app.add_subcommand("farfield", "far-field pattern CSV for scatterer A");
  farfield->add_option("--config", config_path)->required();
  farfield->add_option("--out", out_path)->required();

  auto* mie = app.add_subcommand("mie-validate", "cross-validate the solver against the sphere series");
  mie->add_option("--ka", ka);
  mie->add_option("--mesh-level", mesh_level);
  mie->add_option("--ntheta", n_theta);
  mie->add_option("--quad", quad);
  mie->add_option("--threshold", threshold);

  auto* dist = app.add_subcommand("distance", "scatterer distances d, d_hat, d_tilde");
  dist->add_option("--a", a_path)->required();
  dist->add_option("--b", b_path)->required();
  dist->add_option("--res", res);

  auto* rad = app.add_subcommand("radiation-check", "Silver-Muller residual decay");
  rad->add_option("--config", config_path)->required();
  rad->add_option("--out", out_path);

  auto* three = app.add_subcommand("three-spheres", "empirical three-spheres exponent");
  three->add_option("--rho1", rho1);
  three->add_option("--rho", rho);
  three->add_option("--rho2", rho2);
  three->add_option("--k", kval);
  three->add_option("--n", n_multipole);

  auto* xform = app.add_subcommand("transform-check", "change-of-variables identities");
  xform->add_option("--hfd", h_fd);
  xform->add_option("--out", out_path);

  auto* sweep = app.add_subcommand("stability-sweep", "perturbation family sweep");
  sweep->add_option("--config", config_path)->required();
  sweep->add_option("--family", family)->required();
  sweep->add_option("--values", values)->required();
  sweep->add_option("--out", out_path);
  sweep->add_flag("--append", append);

  auto* conv = app.add_subcommand("convergence-study", "eps(t) for t decreasing to 0");
  conv->add_option("--config", config_path)->required();
  conv->add_option("--values", values)->required();
  conv->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed()) return cmd_solve(config_path, out_path);
    if (farfield->parsed()) return cmd_farfield(config_path, out_path);
    if (mie->parsed()) return cmd_mie_validate(ka, mesh_level, n_theta, quad, threshold);
    if (dist->parsed()) return cmd_distance(a_path, b_path, res);
    if (rad->parsed()) return cmd_radiation_check(config_path, out_path);
    if (three->parsed()) return cmd_three_spheres(rho1, rho, rho2, kval, n_multipole);
    if (xform->parsed()) return cmd_transform_check(h_fd, out_path);
    if (sweep->parsed()) return cmd_stability_sweep(config_path, family, values, out_path, append);
    if (conv->parsed()) return cmd_convergence_study(config_path, values, out_path);
  } catch (const ps::SolverError& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 2;
  } catch (const ps::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const ps::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
