#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "romlab/assembly.hpp"
#include "test_support.hpp"

namespace romlab {
namespace {

using std::numbers::pi;
using testing::random_vector;

/// Quadratic Lagrange vertex function of vertex `a` of a physical triangle,
/// written through barycentric coordinates (no reference-element code).
double vertex_basis(const std::array<Point2, 3>& tri, int a, Point2 p) {
  const auto& p0 = tri[0];
  const double det = (tri[1].x - p0.x) * (tri[2].y - p0.y) - (tri[2].x - p0.x) * (tri[1].y - p0.y);
  const double l1 = ((p.x - p0.x) * (tri[2].y - p0.y) - (tri[2].x - p0.x) * (p.y - p0.y)) / det;
  const double l2 = ((tri[1].x - p0.x) * (p.y - p0.y) - (p.x - p0.x) * (tri[1].y - p0.y)) / det;
  const double l[3] = {1 - l1 - l2, l1, l2};
  return l[a] * (2 * l[a] - 1);
}

double integrate_on_triangle(const std::array<Point2, 3>& tri,
                             const std::function<double(Point2)>& f) {
  const auto rule = collapsed_gauss_rule(8);
  const double det = std::abs((tri[1].x - tri[0].x) * (tri[2].y - tri[0].y) -
                              (tri[2].x - tri[0].x) * (tri[1].y - tri[0].y));
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double s = rule.points[k].x, t = rule.points[k].y;
    const Point2 p{tri[0].x + s * (tri[1].x - tri[0].x) + t * (tri[2].x - tri[0].x),
                   tri[0].y + s * (tri[1].y - tri[0].y) + t * (tri[2].y - tri[0].y)};
    sum += rule.weights[k] * det * f(p);
  }
  return sum;
}

TEST(Mass, VertexDiagonalMatchesHighOrderOracle) {
  const VelocitySpace space(build_mesh(1));
  const auto mass = assemble_mass(space);
  const auto& mesh = space.mesh();
  // Scalar DOF of vertex (0, 0) and the triangles around it.
  std::size_t dof = space.num_scalar_dofs();
  for (std::size_t s = 0; s < space.num_scalar_dofs(); ++s)
    if (space.node(s).x == 0.0 && space.node(s).y == 0.0) dof = s;
  ASSERT_LT(dof, space.num_scalar_dofs());

  double oracle = 0.0;
  for (const auto& t : mesh.triangles) {
    const std::array<Point2, 3> tri{mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]};
    for (int a = 0; a < 3; ++a) {
      if (tri[a].x == 0.0 && tri[a].y == 0.0) {
        oracle += integrate_on_triangle(tri, [&](Point2 p) {
          const double v = vertex_basis(tri, a, p);
          return v * v;
        });
      }
    }
  }
  // Vertex (0,0) touches both triangles: 2 * area / 30.
  EXPECT_NEAR(oracle, 1.0 / 30.0, 1e-15);
  EXPECT_NEAR(mass.coeff(dof, dof), oracle, 1e-15);
  EXPECT_NEAR(mass.coeff(dof + space.num_scalar_dofs(), dof + space.num_scalar_dofs()), oracle,
              1e-15);
}

TEST(Mass, ConstantIntegratesToArea) {
  const VelocitySpace space(build_mesh(6));
  const auto scalar = assemble_scalar_mass(space);
  const Vector ones = Vector::Ones(static_cast<Eigen::Index>(space.num_scalar_dofs()));
  EXPECT_NEAR(scalar.bilinear(ones, ones), 1.0, 1e-13);
  const auto mass = assemble_mass(space);
  const Vector ones2 = Vector::Ones(static_cast<Eigen::Index>(space.num_dofs()));
  EXPECT_NEAR(mass.bilinear(ones2, ones2), 2.0, 1e-13);
}

TEST(Mass, SymmetricPositiveDefiniteBlockDiagonal) {
  const VelocitySpace space(build_mesh(5));
  const auto mass = assemble_mass(space);
  EXPECT_EQ(mass.symmetry_defect(), 0.0);
  const auto ns = space.num_scalar_dofs();
  for (std::size_t i = 0; i < mass.dim(); ++i) {
    EXPECT_GT(mass.coeff(i, i), 0.0);
    for (std::size_t k = mass.row_ptr()[i]; k < mass.row_ptr()[i + 1]; ++k)
      ASSERT_EQ(i < ns, mass.col_idx()[k] < ns) << "coupling across components";
  }
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    const Vector x = random_vector(rng, static_cast<Eigen::Index>(mass.dim()));
    EXPECT_GT(mass.bilinear(x, x), 0.0);
  }
}

/// The degree-4 rule is exact for P2 x P2 products, so a higher order rule
/// must give the same matrix.
TEST(Mass, QuadratureExactness) {
  const VelocitySpace space(build_mesh(4));
  const auto a = assemble_mass(space);
  const auto b = assemble_mass(space, collapsed_gauss_rule(4));
  ASSERT_EQ(a.nnz(), b.nnz());
  double diff = 0.0;
  for (std::size_t k = 0; k < a.nnz(); ++k) diff = std::max(diff, std::abs(a.values()[k] - b.values()[k]));
  EXPECT_LE(diff, 1e-13);
}

TEST(Stiffness, QuadratureExactness) {
  const VelocitySpace space(build_mesh(4));
  const auto a = assemble_stiffness(space);
  const auto b = assemble_stiffness(space, collapsed_gauss_rule(4));
  ASSERT_EQ(a.nnz(), b.nnz());
  double diff = 0.0;
  for (std::size_t k = 0; k < a.nnz(); ++k) diff = std::max(diff, std::abs(a.values()[k] - b.values()[k]));
  EXPECT_LE(diff, 1e-12);
}

TEST(Stiffness, ConstantsInKernelAndSemidefinite) {
  const VelocitySpace space(build_mesh(6));
  const auto stiff = assemble_stiffness(space);
  EXPECT_EQ(stiff.symmetry_defect(), 0.0);
  const Vector ones = Vector::Ones(static_cast<Eigen::Index>(space.num_dofs()));
  EXPECT_LE(stiff.apply(ones).cwiseAbs().maxCoeff(), 1e-11);
  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    const Vector x = random_vector(rng, static_cast<Eigen::Index>(stiff.dim()));
    EXPECT_GE(stiff.bilinear(x, x), 0.0);
  }
}

TEST(Stiffness, LinearFieldHasUnitEnergy) {
  const VelocitySpace space(build_mesh(7));
  const auto stiff = assemble_stiffness(space);
  const auto u = interpolate(space, [](Point2 p, double) { return Vec2{p.x, 0.0}; }, 0.0);
  EXPECT_NEAR(stiff.bilinear(u.coeffs, u.coeffs), 1.0, 1e-12);
}

TEST(Norms, ZeroAndDimensionMismatch) {
  const VelocitySpace space(build_mesh(3));
  const auto mass = assemble_mass(space);
  const auto stiff = assemble_stiffness(space);
  const Vector z = Vector::Zero(static_cast<Eigen::Index>(space.num_dofs()));
  EXPECT_EQ(l2_norm(mass, z), 0.0);
  EXPECT_EQ(h1_semi_norm(stiff, z), 0.0);
  EXPECT_THROW(l2_norm(mass, Vector::Zero(4)), std::invalid_argument);
  EXPECT_THROW(l2_inner(mass, z, Vector::Zero(4)), std::invalid_argument);
  EXPECT_THROW(h1_semi_norm(stiff, Vector::Zero(4)), std::invalid_argument);
}

TEST(Norms, CauchySchwarz) {
  const VelocitySpace space(build_mesh(4));
  const auto mass = assemble_mass(space);
  std::mt19937_64 rng(17);
  for (int k = 0; k < 100; ++k) {
    const Vector u = random_vector(rng, static_cast<Eigen::Index>(space.num_dofs()));
    const Vector v = random_vector(rng, static_cast<Eigen::Index>(space.num_dofs()));
    EXPECT_LE(std::abs(l2_inner(mass, u, v)), l2_norm(mass, u) * l2_norm(mass, v) * (1 + 1e-14));
  }
}

/// ||sin(pi x) sin(pi y)||^2 = 1/4 and |.|_1^2 = pi^2 / 2, approached at
/// fourth and second order respectively.
TEST(Norms, EigenfunctionConvergence) {
  auto g = [](Point2 p, double) { return Vec2{std::sin(pi * p.x) * std::sin(pi * p.y), 0.0}; };
  double prev_l2 = 0, prev_h1 = 0;
  for (std::size_t n : {4u, 8u, 16u, 32u}) {
    const VelocitySpace space(build_mesh(n));
    const auto u = interpolate(space, g, 0.0);
    const double e_l2 = std::abs(std::pow(l2_norm(assemble_mass(space), u.coeffs), 2) - 0.25);
    const double e_h1 =
        std::abs(std::pow(h1_semi_norm(assemble_stiffness(space), u.coeffs), 2) - pi * pi / 2);
    if (n > 4) {
      EXPECT_GT(std::log2(prev_l2 / e_l2), 3.7) << "n = " << n;
      EXPECT_GT(std::log2(prev_h1 / e_h1), 1.9) << "n = " << n;
    }
    prev_l2 = e_l2;
    prev_h1 = e_h1;
  }
  EXPECT_LT(prev_l2, 1e-6);
}

/// Slow b* straight from point evaluations on a tensor Gauss grid of each
/// element, independent of the assembled kernels.
double bstar_oracle(const FEField& u, const FEField& v, const FEField& w) {
  const auto rule = collapsed_gauss_rule(5);
  const auto& space = *u.space;
  double sum = 0.0;
  for (std::size_t e = 0; e < space.num_elements(); ++e) {
    const auto& g = space.geometry(e);
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const auto p = g.map(rule.points[k].x, rule.points[k].y);
      const auto uu = evaluate(u, p), vv = evaluate(v, p), ww = evaluate(w, p);
      const auto gv = evaluate_gradient(v, p), gw = evaluate_gradient(w, p);
      const double uv[2] = {uu.x * gv.grad[0][0] + uu.y * gv.grad[0][1],
                            uu.x * gv.grad[1][0] + uu.y * gv.grad[1][1]};
      const double uw[2] = {uu.x * gw.grad[0][0] + uu.y * gw.grad[0][1],
                            uu.x * gw.grad[1][0] + uu.y * gw.grad[1][1]};
      const double val = 0.5 * (uv[0] * ww.x + uv[1] * ww.y - uw[0] * vv.x - uw[1] * vv.y);
      sum += rule.weights[k] * std::abs(g.det) * val;
    }
  }
  return sum;
}

TEST(Trilinear, PolynomialFieldsAgainstAnalyticIntegral) {
  const VelocitySpace space(build_mesh(4));
  auto fu = [](Point2 p, double) { return Vec2{1 + p.x, 2 - p.y}; };
  auto fv = [](Point2 p, double) { return Vec2{p.x * p.x + p.y, p.x * p.y}; };
  auto fw = [](Point2 p, double) { return Vec2{p.y, 1 - p.x}; };
  const auto u = interpolate(space, fu, 0), v = interpolate(space, fv, 0),
             w = interpolate(space, fw, 0);

  // Tensor Gauss-Legendre over the whole square with analytic derivatives.
  std::vector<double> x, wx;
  gauss_legendre_unit(6, x, wx);
  double exact = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double px = x[i], py = x[j];
      const double ux = 1 + px, uy = 2 - py;
      const double vx = px * px + py, vy = px * py, wx_ = py, wy = 1 - px;
      const double uv0 = ux * 2 * px + uy * 1, uv1 = ux * py + uy * px;
      const double uw0 = ux * 0 + uy * 1, uw1 = ux * -1 + uy * 0;
      exact += wx[i] * wx[j] * 0.5 * (uv0 * wx_ + uv1 * wy - uw0 * vx - uw1 * vy);
    }
  }
  EXPECT_NEAR(trilinear_bstar(u, v, w), exact, 1e-12 * std::max(1.0, std::abs(exact)));
  EXPECT_NEAR(bstar_oracle(u, v, w), exact, 1e-12 * std::max(1.0, std::abs(exact)));
}

TEST(Trilinear, RandomFieldsAgainstPointwiseOracle) {
  const VelocitySpace space(build_mesh(3));
  std::mt19937_64 rng(23);
  const auto n = static_cast<Eigen::Index>(space.num_dofs());
  const FEField u(space, random_vector(rng, n)), v(space, random_vector(rng, n)),
      w(space, random_vector(rng, n));
  const double lib = trilinear_bstar(u, v, w, collapsed_gauss_rule(5));
  EXPECT_NEAR(lib, bstar_oracle(u, v, w), 1e-11 * std::max(1.0, std::abs(lib)));
}

TEST(Trilinear, SkewSymmetry) {
  const VelocitySpace space(build_mesh(4));
  std::mt19937_64 rng(29);
  const auto n = static_cast<Eigen::Index>(space.num_dofs());
  for (int k = 0; k < 100; ++k) {
    const FEField u(space, random_vector(rng, n)), v(space, random_vector(rng, n)),
        w(space, random_vector(rng, n));
    const double a = trilinear_bstar(u, v, w), b = trilinear_bstar(u, w, v);
    EXPECT_LE(std::abs(a + b), 1e-12 * std::max(1.0, std::abs(a)));
    EXPECT_LE(std::abs(trilinear_bstar(u, v, v)), 1e-13);
  }
}

TEST(Trilinear, LinearInEachArgument) {
  const VelocitySpace space(build_mesh(3));
  std::mt19937_64 rng(31);
  const auto n = static_cast<Eigen::Index>(space.num_dofs());
  const Vector a = random_vector(rng, n), b = random_vector(rng, n), c = random_vector(rng, n);
  const FEField u(space, a), v(space, b), w(space, c);
  const FEField u2(space, 2.5 * a), v2(space, -3.0 * b);
  EXPECT_NEAR(trilinear_bstar(u2, v, w), 2.5 * trilinear_bstar(u, v, w), 1e-12);
  EXPECT_NEAR(trilinear_bstar(u, v2, w), -3.0 * trilinear_bstar(u, v, w), 1e-12);
}

TEST(Trilinear, DifferentSpacesRejected) {
  const VelocitySpace s1(build_mesh(2)), s2(build_mesh(2));
  const auto u = FEField::zero(s1), v = FEField::zero(s2);
  EXPECT_THROW(trilinear_bstar(u, v, u), std::invalid_argument);
}

}  // namespace
}  // namespace romlab
