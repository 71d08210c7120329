#include "polyscat/stability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "polyscat/diagnostics.hpp"

namespace polyscat {

TriangleMesh build_spec_mesh(const ScattererSpec& spec) {
  if (spec.kind == "cube")
    return make_cube(spec.size, spec.center, spec.subdivision);
  if (spec.kind == "cube-cross")
    return make_cube(spec.size, spec.center, spec.subdivision, FaceSplit::Cross);
  if (spec.kind == "box")
    return make_box(spec.half_extent, spec.center, spec.subdivision);
  if (spec.kind == "screen")
    return make_square_screen(spec.size, spec.center, spec.subdivision);
  if (spec.kind == "icosphere")
    return make_icosphere(spec.size, spec.center, spec.subdivision);
  if (spec.kind == "dented-cube")
    return make_dented_cube(spec.size, spec.center, spec.subdivision, spec.half_extent.x());
  if (spec.kind == "notched-cube")
    return make_notched_cube(spec.size, spec.center, spec.subdivision, spec.half_extent.x());
  if (spec.kind == "file") return load_mesh(spec.path);
  throw ValidationError("unknown scatterer kind '" + spec.kind + "'");
}

Scatterer build_scatterer(const ScattererSpec& spec, const ClassParams& params) {
  TriangleMesh mesh = build_spec_mesh(spec);
  ScattererKind kind;
  if (!spec.as.empty()) {
    if (spec.as == "obstacle")
      kind = ScattererKind::Obstacle;
    else if (spec.as == "screen")
      kind = ScattererKind::Screen;
    else if (spec.as == "mixed")
      kind = ScattererKind::Mixed;
    else
      throw ValidationError("unknown kind override '" + spec.as + "'");
  } else if (spec.kind == "screen") {
    kind = ScattererKind::Screen;
  } else if (spec.kind == "file") {
    const EdgeTable t = build_edge_table(mesh);
    kind = is_watertight(mesh, t) ? ScattererKind::Obstacle : ScattererKind::Screen;
  } else {
    kind = ScattererKind::Obstacle;
  }
  return Scatterer(std::move(mesh), kind, params);
}

void ScenarioConfig::validate() const {
  if (waves.empty() || waves.size() > 2)
    throw ValidationError("scenario needs 1 or 2 incident waves");
  for (const auto& w : waves) w.validate();
  if (waves.size() == 2) {
    const IndependenceResult b0 = independence_constant_b0(waves[0], waves[1], 1000);
    if (!(b0.b0 > 1e-9))
      throw ValidationError("two-wave run requires independent incidences (b0 > 0)");
  }
  if (!(rho_tilde > 0.0)) throw ValidationError("rho_tilde must be positive");
  const double r = x0.norm();
  if (!(R0 + 1.0 + rho_tilde <= r && r <= R1))
    throw ValidationError("measurement point must satisfy R0 + 1 + rho_tilde <= |x0| <= R1");
  if (distance_res <= 0.0) throw ValidationError("distance.res must be positive");
}

ScenarioConfig ScenarioConfig::from_kv(const KeyValueConfig& kv) {
  ScenarioConfig cfg;
  const double k = kv.get_double("k", 1.0);

  auto read_wave = [&](const std::string& prefix) -> std::optional<PlaneWaveSpec> {
    if (!kv.has(prefix + ".dx")) return std::nullopt;
    PlaneWaveSpec w;
    w.k = k;
    w.d = Vec3(kv.get_double(prefix + ".dx"), kv.get_double(prefix + ".dy"),
               kv.get_double(prefix + ".dz"));
    w.p = Vec3(kv.get_double(prefix + ".px"), kv.get_double(prefix + ".py"),
               kv.get_double(prefix + ".pz"));
    return w;
  };
  if (auto w1 = read_wave("wave1")) cfg.waves.push_back(*w1);
  if (auto w2 = read_wave("wave2")) cfg.waves.push_back(*w2);
  if (cfg.waves.empty()) {
    PlaneWaveSpec w;
    w.k = k;
    cfg.waves.push_back(w);
  }

  auto read_spec = [&](const std::string& prefix, const ScattererSpec& fallback) {
    ScattererSpec s = fallback;
    if (kv.has(prefix + ".kind")) s.kind = kv.get_string(prefix + ".kind");
    s.size = kv.get_double(prefix + ".size", s.size);
    s.center = kv.get_vec3(prefix + ".center", s.center);
    s.subdivision = kv.get_int(prefix + ".n", s.subdivision);
    s.path = kv.get_string(prefix + ".path", s.path);
    s.as = kv.get_string(prefix + ".as", s.as);
    if (kv.has(prefix + ".hx"))
      s.half_extent = Vec3(kv.get_double(prefix + ".hx"), kv.get_double(prefix + ".hy"),
                           kv.get_double(prefix + ".hz"));
    return s;
  };
  cfg.a = read_spec("scatterer.a", ScattererSpec{});
  cfg.b = read_spec("scatterer.b", cfg.a);

  cfg.x0 = kv.get_vec3("x0", cfg.x0);
  cfg.rho_tilde = kv.get_double("rho_tilde", cfg.rho_tilde);
  cfg.R0 = kv.get_double("R0", cfg.R0);
  cfg.R1 = kv.get_double("R1", cfg.R1);
  cfg.farfield_n_theta = kv.get_int("farfield.ntheta", cfg.farfield_n_theta);
  cfg.quad_order = kv.get_int("quad_order", cfg.quad_order);
  cfg.distance_res = kv.get_double("distance.res", cfg.distance_res);
  cfg.ball_n_r = kv.get_int("ball.nr", cfg.ball_n_r);
  cfg.ball_n_theta = kv.get_int("ball.ntheta", cfg.ball_n_theta);
  cfg.seed = static_cast<std::uint64_t>(kv.get_int("seed", 1));
  cfg.magnetic_error = kv.get_int("error.magnetic", 0) != 0;
  cfg.case_id = kv.get_string("case_id", cfg.case_id);
  cfg.class_params.R0 = cfg.R0;
  cfg.class_params.h = kv.get_double("class.h", cfg.class_params.h);
  return cfg;
}

SolvedScatterer solve_scatterer(const ScattererSpec& spec, const ScenarioConfig& cfg) {
  SolvedScatterer out;
  out.scatterer = std::make_unique<Scatterer>(build_scatterer(spec, cfg.class_params));
  out.basis = std::make_unique<RWGBasis>(build_rwg(out.scatterer->mesh()));
  out.system = std::make_unique<EfieSystem>(*out.basis, cfg.waves.front().k, cfg.quad_order);
  const SphereGrid grid = sphere_grid(cfg.farfield_n_theta);
  for (const auto& w : cfg.waves) {
    out.currents.push_back(solve_current(*out.system, w));
    out.evaluators.emplace_back(out.currents.back(), cfg.quad_order);
    out.far_fields.push_back(eval_far_field(out.currents.back(), grid, cfg.quad_order));
  }
  return out;
}

double near_field_error(const CurrentFieldEvaluator& a, const CurrentFieldEvaluator& b,
                        const Vec3& x0, double rho, int n_r, int n_theta, bool magnetic) {
  const BallRule rule = ball_rule(x0, rho, n_r, n_theta);
  const int n = static_cast<int>(rule.points.size());
  std::vector<double> terms(static_cast<size_t>(n));
#pragma omp parallel for schedule(static)
  for (int q = 0; q < n; ++q) {
    // total-field difference = scattered difference (same incident wave)
    const EMSample sa = a.scattered(rule.points[static_cast<size_t>(q)]);
    const EMSample sb = b.scattered(rule.points[static_cast<size_t>(q)]);
    const double d2 = magnetic ? (sa.H - sb.H).squaredNorm() : (sa.E - sb.E).squaredNorm();
    terms[static_cast<size_t>(q)] = rule.weights[static_cast<size_t>(q)] * d2;
  }
  // summed serially in grid order so results do not depend on threading
  double acc = 0.0;
  for (double t : terms) acc += t;
  return std::sqrt(acc);
}

double far_field_error(const FarFieldPattern& a, const FarFieldPattern& b, bool magnetic) {
  if (!magnetic) return far_field_l2_difference(a, b);
  double s = 0.0;
  for (size_t q = 0; q < a.H_inf.size(); ++q)
    s += a.grid.weights[q] * (a.H_inf[q] - b.H_inf[q]).squaredNorm();
  return std::sqrt(s);
}

namespace {

StabilityRecord make_record(const ScenarioConfig& cfg, const SolvedScatterer& A,
                            const SolvedScatterer& B, double t) {
  StabilityRecord rec;
  rec.case_id = cfg.case_id;
  rec.t = t;
  rec.k = cfg.waves.front().k;
  rec.n_waves = static_cast<int>(cfg.waves.size());
  rec.ndof_a = A.n_dof();
  rec.ndof_b = B.n_dof();
  rec.kind = to_string(A.scatterer->kind());

  double eps = 0.0, eps0 = 0.0;
  for (size_t j = 0; j < cfg.waves.size(); ++j) {
    eps = std::max(eps, near_field_error(A.evaluators[j], B.evaluators[j], cfg.x0,
                                         cfg.rho_tilde, cfg.ball_n_r, cfg.ball_n_theta,
                                         cfg.magnetic_error));
    eps0 = std::max(eps0, far_field_error(A.far_fields[j], B.far_fields[j],
                                          cfg.magnetic_error));
  }
  rec.eps_near = eps;
  rec.eps_far = eps0;
  if (eps > 0.0 && eps < std::exp(-1.0)) rec.eta_of_eps = eta(eps);

  const DistanceReport dr =
      distance_report(*A.scatterer, *B.scatterer, cfg.distance_res);
  rec.d = dr.d;
  rec.d_hat = dr.d_hat;
  rec.d_tilde = dr.d_tilde;

  if (cfg.waves.size() == 2)
    rec.b0 = independence_constant_b0(cfg.waves[0], cfg.waves[1], 1000).b0;
  return rec;
}

}  // namespace

StabilityRecord run_pair(const ScenarioConfig& cfg) {
  cfg.validate();
  const SolvedScatterer A = solve_scatterer(cfg.a, cfg);
  const SolvedScatterer B = solve_scatterer(cfg.b, cfg);
  return make_record(cfg, A, B, 0.0);
}

ScattererSpec apply_family(const ScattererSpec& a, const std::string& family, double t) {
  ScattererSpec b = a;
  if (family == "translate") {
    b.center = a.center + Vec3(t, 0.0, 0.0);
  } else if (family == "dent") {
    if (a.kind != "cube") throw ValidationError("dent family needs a cube base");
    b.kind = "dented-cube";
    b.half_extent = Vec3::Constant(t);  // depth
  } else if (family == "notch") {
    if (a.kind != "cube") throw ValidationError("notch family needs a cube base");
    b.kind = "notched-cube";
    b.half_extent = Vec3::Constant(t);  // width = depth
  } else if (family == "scale") {
    b.size = a.size * (1.0 + t);
    b.half_extent = a.half_extent * (1.0 + t);
  } else {
    throw ValidationError("unknown family '" + family + "'");
  }
  return b;
}

std::vector<StabilityRecord> run_sweep(const ScenarioConfig& base, const std::string& family,
                                       const std::vector<double>& ts) {
  base.validate();
  std::vector<StabilityRecord> records;
  if (ts.empty()) return records;
  for (size_t i = 1; i < ts.size(); ++i)
    if (ts[i] <= ts[i - 1]) throw ValidationError("family parameters must strictly increase");

  const SolvedScatterer A = solve_scatterer(base.a, base);
  for (double t : ts) {
    ScenarioConfig cfg = base;
    cfg.b = apply_family(base.a, family, t);
    char tag[64];
    std::snprintf(tag, sizeof tag, "%s_t%.6g", family.c_str(), t);
    cfg.case_id = base.case_id + "_" + tag;
    const SolvedScatterer B = solve_scatterer(cfg.b, cfg);
    StabilityRecord rec = make_record(cfg, A, B, t);
    records.push_back(std::move(rec));
  }
  return records;
}

StabilityFit fit_stability_curve(const std::vector<StabilityRecord>& records) {
  std::vector<double> xs, ys;
  for (const auto& r : records) {
    if (r.eps_near > 0.0 && r.eps_near < std::exp(-1.0) && r.d > 0.0) {
      xs.push_back(std::log(eta(r.eps_near)));
      ys.push_back(std::log(r.d));
    }
  }
  if (xs.size() < 3)
    throw ValidationError("need at least 3 records with eps < 1/e and d > 0 to fit");
  const double n = static_cast<double>(xs.size());
  const double sx = std::accumulate(xs.begin(), xs.end(), 0.0);
  const double sy = std::accumulate(ys.begin(), ys.end(), 0.0);
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-300) throw ValidationError("degenerate fit (constant eta)");
  StabilityFit fit;
  fit.exponent = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - fit.exponent * sx) / n;
  fit.amplitude = std::exp(intercept);
  double rss = 0.0;
  for (size_t i = 0; i < xs.size(); ++i)
    rss += sqr(ys[i] - (intercept + fit.exponent * xs[i]));
  fit.residual = std::sqrt(rss / n);
  return fit;
}

ConvergenceStudy run_convergence_study(const ScenarioConfig& base,
                                       const std::vector<double>& ts) {
  base.validate();
  for (size_t i = 1; i < ts.size(); ++i)
    if (ts[i] >= ts[i - 1])
      throw ValidationError("convergence study needs strictly decreasing parameters");

  ConvergenceStudy study;
  study.ts = ts;
  const SolvedScatterer A = solve_scatterer(base.a, base);
  for (double t : ts) {
    if (t == 0.0) {
      study.eps.push_back(0.0);
      continue;
    }
    ScenarioConfig cfg = base;
    cfg.b = apply_family(base.a, "translate", t);
    const SolvedScatterer B = solve_scatterer(cfg.b, cfg);
    double eps = 0.0;
    for (size_t j = 0; j < cfg.waves.size(); ++j)
      eps = std::max(eps, near_field_error(A.evaluators[j], B.evaluators[j], cfg.x0,
                                           cfg.rho_tilde, cfg.ball_n_r, cfg.ball_n_theta,
                                           cfg.magnetic_error));
    study.eps.push_back(eps);
  }
  study.strictly_decreasing = true;
  for (size_t i = 1; i < study.eps.size(); ++i)
    if (study.eps[i] >= study.eps[i - 1]) study.strictly_decreasing = false;

  // discretization floor: the same scatterer meshed one level finer
  ScattererSpec finer = base.a;
  finer.subdivision += 1;
  const SolvedScatterer A2 = solve_scatterer(finer, base);
  double floor_eps = 0.0;
  for (size_t j = 0; j < base.waves.size(); ++j)
    floor_eps = std::max(floor_eps, near_field_error(A.evaluators[j], A2.evaluators[j],
                                                     base.x0, base.rho_tilde, base.ball_n_r,
                                                     base.ball_n_theta, base.magnetic_error));
  study.floor_estimate = floor_eps;
  return study;
}

double spearman_rank_correlation(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw ValidationError("rank correlation needs two equally sized samples");
  auto ranks = [](const std::vector<double>& v) {
    std::vector<size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (size_t i = 0; i < idx.size(); ++i) r[idx[i]] = static_cast<double>(i);
    return r;
  };
  const std::vector<double> rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  double d2 = 0.0;
  for (size_t i = 0; i < x.size(); ++i) d2 += sqr(rx[i] - ry[i]);
  return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

void write_records_csv(const std::vector<StabilityRecord>& records, const std::string& path,
                       bool append) {
  const bool exists = append && std::filesystem::exists(path) &&
                      std::filesystem::file_size(path) > 0;
  std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  if (!exists) {
    out << "# polyscat stability records v1\n";
    out << "case_id,t,d,d_hat,d_tilde,eps_near,eps_far,eta_of_eps,k,n_waves,ndof_a,ndof_b\n";
  }
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << "," << buf;
  };
  for (const auto& r : records) {
    out << r.case_id;
    put(r.t);
    put(r.d);
    put(r.d_hat);
    put(r.d_tilde);
    put(r.eps_near);
    put(r.eps_far);
    put(r.eta_of_eps);
    put(r.k);
    out << "," << r.n_waves << "," << r.ndof_a << "," << r.ndof_b << "\n";
  }
}

}  // namespace polyscat
