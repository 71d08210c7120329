#include "polyscat/quadrature.hpp"

#include <cmath>
#include <map>

namespace polyscat {

namespace {

TriangleRule make_rule(int points) {
  TriangleRule r;
  auto orbit1 = [&](double w) {
    r.bary.emplace_back(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
    r.weights.push_back(w);
  };
  auto orbit3 = [&](double a, double w) {
    const double b = 1.0 - 2.0 * a;
    r.bary.emplace_back(b, a, a);
    r.bary.emplace_back(a, b, a);
    r.bary.emplace_back(a, a, b);
    for (int i = 0; i < 3; ++i) r.weights.push_back(w);
  };
  switch (points) {
    case 3:
      orbit3(1.0 / 6.0, 1.0 / 3.0);
      break;
    case 4:
      orbit1(-27.0 / 48.0);
      orbit3(0.2, 25.0 / 48.0);
      break;
    case 6:
      orbit3(0.445948490915965, 0.223381589678011);
      orbit3(0.091576213509771, 0.109951743655322);
      break;
    case 7:
      orbit1(9.0 / 40.0);
      orbit3(0.470142064105115, 0.132394152788506);
      orbit3(0.101286507323456, 0.125939180544827);
      break;
    default:
      throw ValidationError("unsupported triangle quadrature order (use 3, 4, 6 or 7)");
  }
  return r;
}

}  // namespace

const TriangleRule& triangle_rule(int points) {
  static const std::map<int, TriangleRule> rules = {
      {3, make_rule(3)}, {4, make_rule(4)}, {6, make_rule(6)}, {7, make_rule(7)}};
  auto it = rules.find(points);
  if (it == rules.end())
    throw ValidationError("unsupported triangle quadrature order (use 3, 4, 6 or 7)");
  return it->second;
}

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw ValidationError("Gauss-Legendre order must be >= 1");
  GaussLegendre g;
  g.nodes.resize(static_cast<size_t>(n));
  g.weights.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Newton from the Chebyshev estimate
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    g.nodes[static_cast<size_t>(n - 1 - i)] = x;
    g.weights[static_cast<size_t>(n - 1 - i)] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return g;
}

SphereGrid sphere_grid(int n_theta) {
  if (n_theta < 1) throw ValidationError("sphere grid needs n_theta >= 1");
  const int n_phi = 2 * n_theta;
  const GaussLegendre g = gauss_legendre(n_theta);
  SphereGrid grid;
  grid.directions.reserve(static_cast<size_t>(n_theta * n_phi));
  const double wphi = 2.0 * kPi / n_phi;
  for (int i = 0; i < n_theta; ++i) {
    const double mu = g.nodes[static_cast<size_t>(i)];  // cos(theta)
    const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
    const double theta = std::acos(mu);
    for (int j = 0; j < n_phi; ++j) {
      const double phi = wphi * j;
      grid.directions.emplace_back(st * std::cos(phi), st * std::sin(phi), mu);
      grid.weights.push_back(g.weights[static_cast<size_t>(i)] * wphi);
      grid.theta.push_back(theta);
      grid.phi.push_back(phi);
    }
  }
  return grid;
}

BallRule ball_rule(const Vec3& center, double radius, int n_r, int n_theta) {
  if (radius <= 0.0) throw ValidationError("ball radius must be positive");
  const GaussLegendre gr = gauss_legendre(n_r);
  const SphereGrid sg = sphere_grid(n_theta);
  BallRule rule;
  rule.points.reserve(static_cast<size_t>(n_r) * sg.size());
  for (int i = 0; i < n_r; ++i) {
    const double r = 0.5 * radius * (gr.nodes[static_cast<size_t>(i)] + 1.0);
    const double wr = 0.5 * radius * gr.weights[static_cast<size_t>(i)] * r * r;
    for (size_t q = 0; q < sg.size(); ++q) {
      rule.points.push_back(center + r * sg.directions[q]);
      rule.weights.push_back(wr * sg.weights[q]);
    }
  }
  return rule;
}

}  // namespace polyscat
