#pragma once

#include <cstddef>
#include <vector>

#include "romlab/mesh.hpp"

namespace romlab {

/// Quadrature on the reference triangle {(s, t) : s, t >= 0, s + t <= 1}.
/// Weights sum to the reference area 1/2.
struct QuadratureRule {
  std::vector<Point2> points;
  std::vector<double> weights;
  int degree = 0;

  std::size_t size() const { return points.size(); }
};

/// Symmetric six-point rule, exact for polynomials of total degree 4.
QuadratureRule triangle_rule_degree4();

/// Collapsed (Duffy) tensor Gauss-Legendre rule with `points_per_direction`
/// points per axis. Exact for total degree 2 * points_per_direction - 2.
QuadratureRule collapsed_gauss_rule(std::size_t points_per_direction);

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_unit(std::size_t count, std::vector<double>& nodes,
                         std::vector<double>& weights);

}  // namespace romlab
