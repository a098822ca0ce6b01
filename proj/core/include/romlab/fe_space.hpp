#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "romlab/mesh.hpp"
#include "romlab/quadrature.hpp"
#include "romlab/types.hpp"

namespace romlab {

/// Values and reference gradients of the six quadratic Lagrange shape
/// functions at a reference point. Local order: three vertices, then the
/// midpoints of edges (0,1), (1,2), (2,0).
struct P2Shape {
  std::array<double, 6> value{};
  std::array<double, 6> d_ds{};
  std::array<double, 6> d_dt{};
};

P2Shape p2_shape(double s, double t);

/// Affine map of one triangle: x = origin + J (s, t).
struct ElementGeometry {
  Point2 origin;
  double jac[2][2]{};      // columns are the two edge vectors
  double inv_jac_t[2][2]{};  // J^{-T}, maps reference gradients to physical
  double det = 0.0;

  Point2 map(double s, double t) const;
};

/// Quadratic Lagrange velocity space on a TriMesh.
///
/// Scalar nodes live on the (2n + 1) x (2n + 1) lattice of spacing h / 2:
/// mesh vertices at even lattice positions, edge midpoints elsewhere. A
/// vector field has 2 * N_s coefficients, x-component first.
class VelocitySpace {
 public:
  explicit VelocitySpace(TriMesh mesh, QuadratureRule rule = triangle_rule_degree4());

  const TriMesh& mesh() const { return mesh_; }
  const QuadratureRule& quadrature() const { return rule_; }

  std::size_t num_scalar_dofs() const { return num_scalar_; }
  std::size_t num_dofs() const { return 2 * num_scalar_; }
  std::size_t num_elements() const { return mesh_.num_triangles(); }

  /// Scalar DOF indices of the six local nodes of element e.
  const std::array<std::size_t, 6>& element_dofs(std::size_t e) const { return dofs_[e]; }
  const ElementGeometry& geometry(std::size_t e) const { return geom_[e]; }

  /// Coordinates of scalar node s.
  Point2 node(std::size_t s) const;

  /// Shape data of the space's quadrature rule, one entry per point.
  const std::vector<P2Shape>& shape_at_quadrature() const { return shape_q_; }

  /// Element containing p (ties resolved towards the lower-left element).
  std::size_t locate(Point2 p) const;

 private:
  TriMesh mesh_;
  QuadratureRule rule_;
  std::size_t num_scalar_ = 0;
  std::vector<std::array<std::size_t, 6>> dofs_;
  std::vector<ElementGeometry> geom_;
  std::vector<P2Shape> shape_q_;
};

/// Coefficient vector of a vector-valued field in a VelocitySpace.
struct FEField {
  const VelocitySpace* space = nullptr;
  Vector coeffs;

  FEField() = default;
  FEField(const VelocitySpace& s, Vector c);

  /// Zero field on s.
  static FEField zero(const VelocitySpace& s);
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct Mat2 {
  // grad[c][d] = d(component c)/d(x_d)
  double grad[2][2]{};
};

using VectorFunction = std::function<Vec2(Point2, double)>;

/// Nodal interpolation of g(., t). Throws EvaluationError on a non-finite
/// value.
FEField interpolate(const VelocitySpace& space, const VectorFunction& g, double t);

/// Point evaluation of a field (value and gradient).
Vec2 evaluate(const FEField& u, Point2 p);
Mat2 evaluate_gradient(const FEField& u, Point2 p);

}  // namespace romlab
