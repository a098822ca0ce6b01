#include "romlab/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace romlab {

QuadratureRule triangle_rule_degree4() {
  // Strang-Fix / Dunavant symmetric rule; weights scaled to area 1/2.
  constexpr double a1 = 0.44594849091596488632;
  constexpr double w1 = 0.22338158967801146570;
  constexpr double a2 = 0.09157621350977074346;
  constexpr double w2 = 0.10995174365532186764;

  QuadratureRule rule;
  rule.degree = 4;
  rule.points = {{a1, a1}, {1.0 - 2.0 * a1, a1}, {a1, 1.0 - 2.0 * a1},
                 {a2, a2}, {1.0 - 2.0 * a2, a2}, {a2, 1.0 - 2.0 * a2}};
  rule.weights = {0.5 * w1, 0.5 * w1, 0.5 * w1, 0.5 * w2, 0.5 * w2, 0.5 * w2};
  return rule;
}

void gauss_legendre_unit(std::size_t count, std::vector<double>& nodes,
                         std::vector<double>& weights) {
  if (count == 0) {
    throw std::invalid_argument("gauss_legendre_unit: count must be positive");
  }
  nodes.assign(count, 0.0);
  weights.assign(count, 0.0);
  const double n = static_cast<double>(count);
  for (std::size_t k = 0; k < count; ++k) {
    // Newton on P_n starting from the Chebyshev-like guess.
    double x = std::cos(std::numbers::pi * (static_cast<double>(k) + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t m = 2; m <= count; ++m) {
        const double md = static_cast<double>(m);
        const double p2 = ((2.0 * md - 1.0) * x * p1 - (md - 1.0) * p0) / md;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        break;
      }
    }
    // Recompute derivative at the converged root.
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t m = 2; m <= count; ++m) {
      const double md = static_cast<double>(m);
      const double p2 = ((2.0 * md - 1.0) * x * p1 - (md - 1.0) * p0) / md;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[k] = 0.5 * (1.0 - x);
    weights[k] = 0.5 * w;
  }
}

QuadratureRule collapsed_gauss_rule(std::size_t points_per_direction) {
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre_unit(points_per_direction, x, w);

  QuadratureRule rule;
  rule.degree = static_cast<int>(2 * points_per_direction) - 2;
  rule.points.reserve(points_per_direction * points_per_direction);
  rule.weights.reserve(points_per_direction * points_per_direction);
  for (std::size_t i = 0; i < points_per_direction; ++i) {
    for (std::size_t j = 0; j < points_per_direction; ++j) {
      const double s = x[i];
      const double t = x[j] * (1.0 - s);
      rule.points.push_back({s, t});
      rule.weights.push_back(w[i] * w[j] * (1.0 - s));
    }
  }
  return rule;
}

}  // namespace romlab
