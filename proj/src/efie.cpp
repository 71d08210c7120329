#include "polyscat/efie.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace polyscat {

namespace {

// e^{ikR}/(4 pi R)
inline cdouble kernel(double k, double R) {
  return std::exp(kImag * (k * R)) / (4.0 * kPi * R);
}

// (e^{ikR}-1)/(4 pi R), the smooth remainder after extracting 1/(4 pi R);
// series near R = 0.
inline cdouble kernel_smooth(double k, double R) {
  const double kR = k * R;
  if (kR < 1e-4) {
    const cdouble t = kImag * kR;
    return kImag * k * (1.0 + t / 2.0 + t * t / 6.0) / (4.0 * kPi);
  }
  return (std::exp(kImag * kR) - 1.0) / (4.0 * kPi * R);
}

// grad_x of e^{ikR}/(4 pi R)
inline CVec3 kernel_gradient(double k, const Vec3& rvec, double R) {
  const cdouble g = kernel(k, R);
  return rvec.cast<cdouble>() * (g * (kImag * k - 1.0 / R) / R);
}

struct TriGeom {
  Vec3 v[3];
  Vec3 normal;
  double area;
  Vec3 centroid;
  double radius;  // max vertex distance from centroid
};

TriGeom tri_geom(const TriangleMesh& mesh, int t) {
  TriGeom g;
  for (int c = 0; c < 3; ++c) g.v[c] = mesh.triangle_vertex(t, c);
  const Vec3 cr = (g.v[1] - g.v[0]).cross(g.v[2] - g.v[0]);
  g.area = 0.5 * cr.norm();
  g.normal = cr.normalized();
  g.centroid = (g.v[0] + g.v[1] + g.v[2]) / 3.0;
  g.radius = 0.0;
  for (int c = 0; c < 3; ++c)
    g.radius = std::max(g.radius, (g.v[c] - g.centroid).norm());
  return g;
}

// Analytic integrals of the static kernel over a triangle:
//   i0    = Int_T 1/R dS
//   i_rho = Int_T (y - rho)/R dS   (in-plane; rho = projection of x)
// Classical per-edge log/arctan formulas; edge terms with the projection on
// the edge line and in the plane are skipped (their contribution vanishes).
void static_potentials(const TriGeom& g, const Vec3& x, double& i0, Vec3& i_rho) {
  const double d = g.normal.dot(x - g.v[0]);
  const Vec3 rho = x - d * g.normal;
  const double scale = std::sqrt(g.area);

  i0 = 0.0;
  i_rho = Vec3::Zero();
  double beta_sum = 0.0;
  for (int e = 0; e < 3; ++e) {
    const Vec3& pa = g.v[e];
    const Vec3& pb = g.v[(e + 1) % 3];
    const Vec3 s_hat = (pb - pa).normalized();
    const Vec3 m_hat = s_hat.cross(g.normal);  // outward in-plane edge normal
    const double t = m_hat.dot(pa - rho);
    const double lp = s_hat.dot(pb - rho);
    const double lm = s_hat.dot(pa - rho);
    const double Rp = (x - pb).norm();
    const double Rm = (x - pa).norm();
    const double R02 = t * t + d * d;

    if (std::abs(t) < 1e-13 * scale && std::abs(d) < 1e-13 * scale) continue;

    double f2;
    if (lp + lm > 0.0)
      f2 = std::log((Rp + lp) / (Rm + lm));
    else
      f2 = std::log((Rm - lm) / (Rp - lp));

    beta_sum += std::atan2(t * lp, R02 + std::abs(d) * Rp) -
                std::atan2(t * lm, R02 + std::abs(d) * Rm);
    i0 += t * f2;
    i_rho += m_hat * (0.5 * (R02 * f2 + lp * Rp - lm * Rm));
  }
  i0 -= std::abs(d) * beta_sum;
}

struct QuadCache {
  // per triangle: physical quadrature points and weights (area absorbed)
  std::vector<std::vector<Vec3>> points;
  std::vector<std::vector<double>> weights;
};

QuadCache build_quad_cache(const TriangleMesh& mesh, const TriangleRule& rule) {
  QuadCache qc;
  const int nt = mesh.num_triangles();
  qc.points.resize(static_cast<size_t>(nt));
  qc.weights.resize(static_cast<size_t>(nt));
  for (int t = 0; t < nt; ++t) {
    const Vec3 a = mesh.triangle_vertex(t, 0);
    const Vec3 b = mesh.triangle_vertex(t, 1);
    const Vec3 c = mesh.triangle_vertex(t, 2);
    const double area = mesh.area(t);
    for (size_t q = 0; q < rule.bary.size(); ++q) {
      const auto& w = rule.bary[q];
      qc.points[static_cast<size_t>(t)].push_back(w[0] * a + w[1] * b + w[2] * c);
      qc.weights[static_cast<size_t>(t)].push_back(rule.weights[q] * area);
    }
  }
  return qc;
}

}  // namespace

EfieSystem::EfieSystem(const RWGBasis& basis, double k, int quad_points)
    : basis_(&basis), k_(k), quad_(quad_points) {
  if (k <= 0.0) throw ValidationError("wavenumber must be positive");
  triangle_rule(quad_points);  // validates the order
  assemble();
}

void EfieSystem::assemble() {
  const TriangleMesh& mesh = *basis_->mesh;
  const int nt = mesh.num_triangles();
  const int n = basis_->n_dof();
  const TriangleRule& rule = triangle_rule(quad_);
  const QuadCache qc = build_quad_cache(mesh, rule);

  std::vector<TriGeom> geom(static_cast<size_t>(nt));
  for (int t = 0; t < nt; ++t) geom[static_cast<size_t>(t)] = tri_geom(mesh, t);

  Z_.setZero(n, n);

  // Unordered triangle pairs, chunked: blocks are computed in parallel, then
  // scattered serially in pair order (deterministic for any thread count).
  struct PairBlock {
    int P, Q;
    cdouble vec[3][3];   // vector-potential term, halves of P x halves of Q
    cdouble scal;        // Int Int G (divergences applied at scatter)
  };

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<size_t>(nt) * (nt + 1) / 2);
  for (int P = 0; P < nt; ++P)
    for (int Q = P; Q < nt; ++Q) pairs.emplace_back(P, Q);

  const size_t chunk_size = 8192;
  std::vector<PairBlock> blocks(std::min(chunk_size, pairs.size()));

  const double ik = k_;
  for (size_t chunk_begin = 0; chunk_begin < pairs.size(); chunk_begin += chunk_size) {
    const size_t chunk_end = std::min(chunk_begin + chunk_size, pairs.size());
    const int m = static_cast<int>(chunk_end - chunk_begin);

#pragma omp parallel for schedule(dynamic, 64)
    for (int idx = 0; idx < m; ++idx) {
      const int P = pairs[chunk_begin + static_cast<size_t>(idx)].first;
      const int Q = pairs[chunk_begin + static_cast<size_t>(idx)].second;
      PairBlock& blk = blocks[static_cast<size_t>(idx)];
      blk.P = P;
      blk.Q = Q;
      for (auto& row : blk.vec)
        for (auto& v : row) v = 0.0;
      blk.scal = 0.0;

      const TriGeom& gp = geom[static_cast<size_t>(P)];
      const TriGeom& gq = geom[static_cast<size_t>(Q)];
      const auto& xp = qc.points[static_cast<size_t>(P)];
      const auto& wp = qc.weights[static_cast<size_t>(P)];
      const auto& yq = qc.points[static_cast<size_t>(Q)];
      const auto& wq = qc.weights[static_cast<size_t>(Q)];

      const double dist = (gp.centroid - gq.centroid).norm();
      const bool near = dist <= 3.0 * (gp.radius + gq.radius);

      for (size_t a = 0; a < xp.size(); ++a) {
        const Vec3& x = xp[a];
        // inner integrals over Q: s0 = Int G, s1 = Int y G
        cdouble s0 = 0.0;
        CVec3 s1 = CVec3::Zero();
        if (near) {
          for (size_t bq = 0; bq < yq.size(); ++bq) {
            const double R = (x - yq[bq]).norm();
            const cdouble g = kernel_smooth(ik, R) * wq[bq];
            s0 += g;
            s1 += g * yq[bq].cast<cdouble>();
          }
          double i0;
          Vec3 i_rho;
          static_potentials(gq, x, i0, i_rho);
          const double dn = gq.normal.dot(x - gq.v[0]);
          const Vec3 rho = x - dn * gq.normal;
          const double c4 = 1.0 / (4.0 * kPi);
          s0 += c4 * i0;
          s1 += (c4 * (i_rho + rho * i0)).cast<cdouble>();
        } else {
          for (size_t bq = 0; bq < yq.size(); ++bq) {
            const double R = (x - yq[bq]).norm();
            const cdouble g = kernel(ik, R) * wq[bq];
            s0 += g;
            s1 += g * yq[bq].cast<cdouble>();
          }
        }
        blk.scal += wp[a] * s0;
        // contract with every P-half evaluated at x and every Q-half moment
        for (int i = 0; i < 3; ++i) {
          // P-half i uses vertex i as its free vertex (resolved at scatter)
          const Vec3 fpi = (x - gp.v[i]) * wp[a];
          for (int j = 0; j < 3; ++j) {
            const CVec3 fqj = s1 - gq.v[j].cast<cdouble>() * s0;
            blk.vec[i][j] += fpi.cast<cdouble>().dot(fqj);  // real dot, no conjugation
          }
        }
      }
    }

    // serial scatter in pair order
    for (int idx = 0; idx < m; ++idx) {
      const PairBlock& blk = blocks[static_cast<size_t>(idx)];
      const auto& funcs_p = basis_->triangle_functions[static_cast<size_t>(blk.P)];
      const auto& funcs_q = basis_->triangle_functions[static_cast<size_t>(blk.Q)];
      for (const auto& [fm, sm] : funcs_p) {
        const RwgFunction& fam = basis_->functions[static_cast<size_t>(fm)];
        const int free_m = sm > 0 ? fam.free_vertex_plus : fam.free_vertex_minus;
        int im = -1;
        for (int c = 0; c < 3; ++c)
          if (mesh.triangles[static_cast<size_t>(blk.P)][static_cast<size_t>(c)] == free_m) im = c;
        const double coef_m = sm * fam.edge_length / (2.0 * geom[static_cast<size_t>(blk.P)].area);
        const double div_m = basis_->divergence(fm, sm);
        for (const auto& [fn, sn] : funcs_q) {
          const RwgFunction& fan = basis_->functions[static_cast<size_t>(fn)];
          const int free_n = sn > 0 ? fan.free_vertex_plus : fan.free_vertex_minus;
          int in = -1;
          for (int c = 0; c < 3; ++c)
            if (mesh.triangles[static_cast<size_t>(blk.Q)][static_cast<size_t>(c)] == free_n) in = c;
          const double coef_n = sn * fan.edge_length / (2.0 * geom[static_cast<size_t>(blk.Q)].area);
          const double div_n = basis_->divergence(fn, sn);

          const cdouble vec_term = coef_m * coef_n * blk.vec[im][in];
          const cdouble scal_term = div_m * div_n * blk.scal;
          const cdouble val = kImag * k_ * vec_term - kImag / k_ * scal_term;

          if (blk.P == blk.Q) {
            // both (m,n) and (n,m) arise from this same block; average the
            // two half contributions so the sum stays exactly symmetric
            Z_(fm, fn) += 0.5 * val;
            Z_(fn, fm) += 0.5 * val;
          } else {
            Z_(fm, fn) += val;
            Z_(fn, fm) += val;
          }
        }
      }
    }
  }
}

void EfieSystem::factorize() {
  if (lu_) return;
  lu_ = std::make_unique<Eigen::PartialPivLU<Eigen::MatrixXcd>>(Z_);
  const double rc = lu_->rcond();
  condition_estimate_ = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
  if (!(condition_estimate_ < 1e12)) {
    lu_.reset();
    throw SolverError("EFIE system is numerically singular (condition estimate " +
                          std::to_string(condition_estimate_) +
                          "); interior resonance or degenerate mesh",
                      condition_estimate_);
  }
}

Eigen::VectorXcd EfieSystem::rhs(const PlaneWaveSpec& w) const {
  w.validate();
  if (std::abs(w.k - k_) > 1e-12 * std::max(1.0, k_))
    throw ValidationError("wave and system disagree on k");
  const TriangleMesh& mesh = *basis_->mesh;
  const TriangleRule& rule = triangle_rule(quad_);
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(basis_->n_dof());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Vec3 v0 = mesh.triangle_vertex(t, 0);
    const Vec3 v1 = mesh.triangle_vertex(t, 1);
    const Vec3 v2 = mesh.triangle_vertex(t, 2);
    const double area = mesh.area(t);
    for (size_t q = 0; q < rule.bary.size(); ++q) {
      const auto& bw = rule.bary[q];
      const Vec3 x = bw[0] * v0 + bw[1] * v1 + bw[2] * v2;
      const double wgt = rule.weights[q] * area;
      const CVec3 Ei = eval_plane_wave(w, x).E;
      for (const auto& [fn, sn] : basis_->triangle_functions[static_cast<size_t>(t)]) {
        const Vec3 f = basis_->value(fn, x, sn);
        b(fn) -= wgt * f.cast<cdouble>().dot(Ei);
      }
    }
  }
  return b;
}

Eigen::VectorXcd EfieSystem::solve(const Eigen::VectorXcd& rhs_vec) const {
  if (!lu_) throw SolverError("system not factorized", 0.0);
  return lu_->solve(rhs_vec);
}

EfieSystem assemble_efie(const RWGBasis& basis, double k, int quad_points) {
  return EfieSystem(basis, k, quad_points);
}

SurfaceCurrent solve_current(EfieSystem& system, const PlaneWaveSpec& w) {
  system.factorize();
  const Eigen::VectorXcd b = system.rhs(w);
  SurfaceCurrent cur;
  cur.basis = &system.basis();
  cur.wave = w;
  cur.k = system.k();
  cur.coefficients = system.solve(b);
  const double bn = b.norm();
  cur.solve_residual =
      bn > 0.0 ? (system.matrix() * cur.coefficients - b).norm() / bn : 0.0;
  return cur;
}

// current and charge samples on every triangle for field evaluation
struct CurrentSamples {
  std::vector<Vec3> points;
  std::vector<double> weights;
  std::vector<CVec3> J;        // current density at each point
  std::vector<cdouble> sigma;  // surface divergence (constant per triangle)
};

namespace {

CurrentSamples sample_current(const SurfaceCurrent& c, int quad_points) {
  const TriangleMesh& mesh = *c.basis->mesh;
  const TriangleRule& rule = triangle_rule(quad_points);
  CurrentSamples s;
  const size_t nq = rule.bary.size();
  s.points.reserve(static_cast<size_t>(mesh.num_triangles()) * nq);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Vec3 v0 = mesh.triangle_vertex(t, 0);
    const Vec3 v1 = mesh.triangle_vertex(t, 1);
    const Vec3 v2 = mesh.triangle_vertex(t, 2);
    const double area = mesh.area(t);
    cdouble sig = 0.0;
    for (const auto& [fn, sn] : c.basis->triangle_functions[static_cast<size_t>(t)])
      sig += c.coefficients(fn) * c.basis->divergence(fn, sn);
    for (size_t q = 0; q < nq; ++q) {
      const auto& bw = rule.bary[q];
      const Vec3 x = bw[0] * v0 + bw[1] * v1 + bw[2] * v2;
      CVec3 J = CVec3::Zero();
      for (const auto& [fn, sn] : c.basis->triangle_functions[static_cast<size_t>(t)])
        J += c.coefficients(fn) * c.basis->value(fn, x, sn).cast<cdouble>();
      s.points.push_back(x);
      s.weights.push_back(rule.weights[q] * area);
      s.J.push_back(J);
      s.sigma.push_back(sig);
    }
  }
  return s;
}

}  // namespace

struct CurrentFieldEvaluator::Impl {
  CurrentSamples samples;
  double k = 0.0;
  PlaneWaveSpec wave;
};

CurrentFieldEvaluator::CurrentFieldEvaluator(const SurfaceCurrent& c, int quad_points) {
  auto impl = std::make_shared<Impl>();
  impl->samples = sample_current(c, quad_points);
  impl->k = c.k;
  impl->wave = c.wave;
  impl_ = std::move(impl);
}

EMSample CurrentFieldEvaluator::scattered(const Vec3& x) const {
  const CurrentSamples& s = impl_->samples;
  const double k = impl_->k;
  EMSample out;
  out.x = x;
  CVec3 E = CVec3::Zero(), H = CVec3::Zero();
  for (size_t q = 0; q < s.points.size(); ++q) {
    const Vec3 rvec = x - s.points[q];
    const double R = rvec.norm();
    const cdouble g = kernel(k, R) * s.weights[q];
    const CVec3 gg = kernel_gradient(k, rvec, R) * s.weights[q];
    E += kImag * k * g * s.J[q] + kImag / k * s.sigma[q] * gg;
    H += gg.cross(s.J[q]);
  }
  out.E = E;
  out.H = H;
  return out;
}

EMSample CurrentFieldEvaluator::total(const Vec3& x) const {
  EMSample s = scattered(x);
  const EMSample inc = eval_plane_wave(impl_->wave, x);
  s.E += inc.E;
  s.H += inc.H;
  return s;
}

EMSample eval_scattered_near(const SurfaceCurrent& c, const Vec3& x, int quad_points) {
  return CurrentFieldEvaluator(c, quad_points).scattered(x);
}

EMSample eval_total_near(const SurfaceCurrent& c, const Vec3& x, int quad_points) {
  EMSample s = eval_scattered_near(c, x, quad_points);
  const EMSample inc = eval_plane_wave(c.wave, x);
  s.E += inc.E;
  s.H += inc.H;
  return s;
}

FarFieldPattern eval_far_field(const SurfaceCurrent& c, const SphereGrid& grid,
                               int quad_points) {
  const CurrentSamples s = sample_current(c, quad_points);
  const double k = c.k;
  FarFieldPattern p;
  p.grid = grid;
  p.E_inf.assign(grid.size(), CVec3::Zero());
  p.H_inf.assign(grid.size(), CVec3::Zero());

  const int nq = static_cast<int>(grid.size());
#pragma omp parallel for schedule(static)
  for (int iq = 0; iq < nq; ++iq) {
    const Vec3& xh = grid.directions[static_cast<size_t>(iq)];
    CVec3 acc = CVec3::Zero();
    for (size_t q = 0; q < s.points.size(); ++q) {
      const cdouble phase =
          std::exp(-kImag * (k * xh.dot(s.points[q]))) * s.weights[q];
      acc += phase * s.J[q];
    }
    const CVec3 radial = xh.cast<cdouble>() * (xh.cast<cdouble>().dot(acc));
    const cdouble pref = kImag * k / (4.0 * kPi);
    p.E_inf[static_cast<size_t>(iq)] = pref * (acc - radial);
    p.H_inf[static_cast<size_t>(iq)] = pref * xh.cast<cdouble>().cross(acc);
  }
  p.refresh_identity_tols();
  return p;
}

double pec_residual(const SurfaceCurrent& c, int samples_per_triangle, Rng& rng) {
  const TriangleMesh& mesh = *c.basis->mesh;
  const CurrentFieldEvaluator field(c);
  double num = 0.0, den = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Vec3 v0 = mesh.triangle_vertex(t, 0);
    const Vec3 v1 = mesh.triangle_vertex(t, 1);
    const Vec3 v2 = mesh.triangle_vertex(t, 2);
    const Vec3 nrm = mesh.normal(t);
    const double edge = std::max({(v1 - v0).norm(), (v2 - v1).norm(), (v0 - v2).norm()});
    const double delta = 0.1 * edge;
    for (int s = 0; s < samples_per_triangle; ++s) {
      double u = rng.uniform(), v = rng.uniform();
      if (u + v > 1.0) {
        u = 1.0 - u;
        v = 1.0 - v;
      }
      // shrink towards the centroid to keep away from nodes and edges
      const double bu = 1.0 / 3.0 + 0.7 * (u - 1.0 / 3.0);
      const double bv = 1.0 / 3.0 + 0.7 * (v - 1.0 / 3.0);
      const Vec3 x0 = v0 + bu * (v1 - v0) + bv * (v2 - v0);
      // tangential total field averaged across the two sides
      const EMSample above = field.total(x0 + delta * nrm);
      const EMSample below = field.total(x0 - delta * nrm);
      const CVec3 tang =
          nrm.cast<cdouble>().cross(0.5 * (above.E + below.E));
      const CVec3 tang_inc = nrm.cast<cdouble>().cross(eval_plane_wave(c.wave, x0).E);
      num += tang.squaredNorm();
      den += tang_inc.squaredNorm();
    }
  }
  if (den == 0.0) return 0.0;
  return std::sqrt(num / den);
}

}  // namespace polyscat
