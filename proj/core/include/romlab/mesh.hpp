#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace romlab {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Structured triangulation of the unit square.
///
/// Every one of the n x n squares is split along its lower-left to upper-right
/// diagonal. Vertex (i, j) has index j * (n + 1) + i and sits at (i h, j h).
/// Triangles are listed square by square (row-major in j, then i), lower
/// triangle first; all are counter-clockwise.
struct TriMesh {
  std::size_t n = 0;
  double h = 0.0;
  std::vector<Point2> nodes;
  std::vector<std::array<std::size_t, 3>> triangles;

  std::size_t num_vertices() const { return nodes.size(); }
  std::size_t num_triangles() const { return triangles.size(); }

  /// Twice the signed area of triangle t.
  double signed_area(std::size_t t) const;
};

/// Throws std::invalid_argument when n == 0.
TriMesh build_mesh(std::size_t n);

}  // namespace romlab
