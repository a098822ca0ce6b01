#include "romlab/fe_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "romlab/errors.hpp"

namespace romlab {

P2Shape p2_shape(double s, double t) {
  const double l1 = 1.0 - s - t;
  const double l2 = s;
  const double l3 = t;
  P2Shape sh;
  sh.value = {l1 * (2.0 * l1 - 1.0), l2 * (2.0 * l2 - 1.0), l3 * (2.0 * l3 - 1.0),
              4.0 * l1 * l2,         4.0 * l2 * l3,         4.0 * l3 * l1};
  sh.d_ds = {-(4.0 * l1 - 1.0), 4.0 * l2 - 1.0, 0.0, 4.0 * (l1 - l2), 4.0 * l3, -4.0 * l3};
  sh.d_dt = {-(4.0 * l1 - 1.0), 0.0, 4.0 * l3 - 1.0, -4.0 * l2, 4.0 * l2, 4.0 * (l1 - l3)};
  return sh;
}

Point2 ElementGeometry::map(double s, double t) const {
  return {origin.x + jac[0][0] * s + jac[0][1] * t, origin.y + jac[1][0] * s + jac[1][1] * t};
}

namespace {

ElementGeometry make_geometry(Point2 a, Point2 b, Point2 c) {
  ElementGeometry g;
  g.origin = a;
  g.jac[0][0] = b.x - a.x;
  g.jac[1][0] = b.y - a.y;
  g.jac[0][1] = c.x - a.x;
  g.jac[1][1] = c.y - a.y;
  g.det = g.jac[0][0] * g.jac[1][1] - g.jac[0][1] * g.jac[1][0];
  const double inv = 1.0 / g.det;
  g.inv_jac_t[0][0] = g.jac[1][1] * inv;
  g.inv_jac_t[0][1] = -g.jac[1][0] * inv;
  g.inv_jac_t[1][0] = -g.jac[0][1] * inv;
  g.inv_jac_t[1][1] = g.jac[0][0] * inv;
  return g;
}

}  // namespace

VelocitySpace::VelocitySpace(TriMesh mesh, QuadratureRule rule)
    : mesh_(std::move(mesh)), rule_(std::move(rule)) {
  const std::size_t n = mesh_.n;
  const std::size_t side = n + 1;
  const std::size_t lattice = 2 * n + 1;
  num_scalar_ = lattice * lattice;

  auto lattice_of = [&](std::size_t v) {
    return std::array<std::size_t, 2>{2 * (v % side), 2 * (v / side)};
  };
  auto index_of = [&](std::size_t li, std::size_t lj) { return lj * lattice + li; };

  dofs_.reserve(mesh_.num_triangles());
  geom_.reserve(mesh_.num_triangles());
  for (const auto& tri : mesh_.triangles) {
    const auto p0 = lattice_of(tri[0]);
    const auto p1 = lattice_of(tri[1]);
    const auto p2 = lattice_of(tri[2]);
    auto mid = [&](const std::array<std::size_t, 2>& a, const std::array<std::size_t, 2>& b) {
      return index_of((a[0] + b[0]) / 2, (a[1] + b[1]) / 2);
    };
    dofs_.push_back({index_of(p0[0], p0[1]), index_of(p1[0], p1[1]), index_of(p2[0], p2[1]),
                     mid(p0, p1), mid(p1, p2), mid(p2, p0)});
    geom_.push_back(make_geometry(mesh_.nodes[tri[0]], mesh_.nodes[tri[1]], mesh_.nodes[tri[2]]));
  }

  shape_q_.reserve(rule_.size());
  for (const auto& q : rule_.points) {
    shape_q_.push_back(p2_shape(q.x, q.y));
  }
}

Point2 VelocitySpace::node(std::size_t s) const {
  const std::size_t lattice = 2 * mesh_.n + 1;
  const double denom = static_cast<double>(2 * mesh_.n);
  return {static_cast<double>(s % lattice) / denom, static_cast<double>(s / lattice) / denom};
}

std::size_t VelocitySpace::locate(Point2 p) const {
  const std::size_t n = mesh_.n;
  const double nd = static_cast<double>(n);
  auto cell = [&](double v) {
    const double c = std::floor(v * nd);
    return static_cast<std::size_t>(std::clamp(c, 0.0, nd - 1.0));
  };
  const std::size_t i = cell(p.x);
  const std::size_t j = cell(p.y);
  const double fx = p.x * nd - static_cast<double>(i);
  const double fy = p.y * nd - static_cast<double>(j);
  const std::size_t base = 2 * (j * n + i);
  return fy <= fx ? base : base + 1;
}

FEField::FEField(const VelocitySpace& s, Vector c) : space(&s), coeffs(std::move(c)) {
  if (static_cast<std::size_t>(coeffs.size()) != s.num_dofs()) {
    throw std::invalid_argument("FEField: coefficient length " + std::to_string(coeffs.size()) +
                                " does not match space dimension " +
                                std::to_string(s.num_dofs()));
  }
}

FEField FEField::zero(const VelocitySpace& s) {
  return FEField(s, Vector::Zero(static_cast<Eigen::Index>(s.num_dofs())));
}

FEField interpolate(const VelocitySpace& space, const VectorFunction& g, double t) {
  const std::size_t ns = space.num_scalar_dofs();
  Vector c(static_cast<Eigen::Index>(2 * ns));
  for (std::size_t s = 0; s < ns; ++s) {
    const Point2 p = space.node(s);
    const Vec2 v = g(p, t);
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
      throw EvaluationError("interpolate: non-finite value at (" + std::to_string(p.x) + ", " +
                            std::to_string(p.y) + "), t = " + std::to_string(t));
    }
    c(static_cast<Eigen::Index>(s)) = v.x;
    c(static_cast<Eigen::Index>(ns + s)) = v.y;
  }
  return FEField(space, std::move(c));
}

namespace {

struct LocalPoint {
  std::size_t element;
  P2Shape shape;
};

LocalPoint local_point(const VelocitySpace& space, Point2 p) {
  const std::size_t e = space.locate(p);
  const ElementGeometry& g = space.geometry(e);
  // (s, t) = J^{-1} (p - origin); J^{-1} is the transpose of inv_jac_t.
  const double dx = p.x - g.origin.x;
  const double dy = p.y - g.origin.y;
  const double s = g.inv_jac_t[0][0] * dx + g.inv_jac_t[1][0] * dy;
  const double t = g.inv_jac_t[0][1] * dx + g.inv_jac_t[1][1] * dy;
  return {e, p2_shape(s, t)};
}

}  // namespace

Vec2 evaluate(const FEField& u, Point2 p) {
  const VelocitySpace& space = *u.space;
  const LocalPoint lp = local_point(space, p);
  const auto& dofs = space.element_dofs(lp.element);
  const auto ns = static_cast<Eigen::Index>(space.num_scalar_dofs());
  Vec2 v;
  for (std::size_t a = 0; a < 6; ++a) {
    const auto d = static_cast<Eigen::Index>(dofs[a]);
    v.x += lp.shape.value[a] * u.coeffs(d);
    v.y += lp.shape.value[a] * u.coeffs(ns + d);
  }
  return v;
}

Mat2 evaluate_gradient(const FEField& u, Point2 p) {
  const VelocitySpace& space = *u.space;
  const LocalPoint lp = local_point(space, p);
  const auto& dofs = space.element_dofs(lp.element);
  const ElementGeometry& g = space.geometry(lp.element);
  const auto ns = static_cast<Eigen::Index>(space.num_scalar_dofs());
  Mat2 m;
  for (std::size_t a = 0; a < 6; ++a) {
    const double gx = g.inv_jac_t[0][0] * lp.shape.d_ds[a] + g.inv_jac_t[0][1] * lp.shape.d_dt[a];
    const double gy = g.inv_jac_t[1][0] * lp.shape.d_ds[a] + g.inv_jac_t[1][1] * lp.shape.d_dt[a];
    const auto d = static_cast<Eigen::Index>(dofs[a]);
    m.grad[0][0] += gx * u.coeffs(d);
    m.grad[0][1] += gy * u.coeffs(d);
    m.grad[1][0] += gx * u.coeffs(ns + d);
    m.grad[1][1] += gy * u.coeffs(ns + d);
  }
  return m;
}

}  // namespace romlab
