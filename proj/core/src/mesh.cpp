#include "romlab/mesh.hpp"

#include <stdexcept>

namespace romlab {

double TriMesh::signed_area(std::size_t t) const {
  const auto& tri = triangles[t];
  const Point2 a = nodes[tri[0]];
  const Point2 b = nodes[tri[1]];
  const Point2 c = nodes[tri[2]];
  return (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
}

TriMesh build_mesh(std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("build_mesh: n must be positive");
  }
  TriMesh mesh;
  mesh.n = n;
  mesh.h = 1.0 / static_cast<double>(n);

  const std::size_t side = n + 1;
  mesh.nodes.reserve(side * side);
  for (std::size_t j = 0; j < side; ++j) {
    for (std::size_t i = 0; i < side; ++i) {
      // i / n rather than i * h keeps the far boundary exactly at 1.
      mesh.nodes.push_back({static_cast<double>(i) / static_cast<double>(n),
                            static_cast<double>(j) / static_cast<double>(n)});
    }
  }

  mesh.triangles.reserve(2 * n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t v00 = j * side + i;
      const std::size_t v10 = v00 + 1;
      const std::size_t v01 = v00 + side;
      const std::size_t v11 = v01 + 1;
      mesh.triangles.push_back({v00, v10, v11});
      mesh.triangles.push_back({v00, v11, v01});
    }
  }
  return mesh;
}

}  // namespace romlab
