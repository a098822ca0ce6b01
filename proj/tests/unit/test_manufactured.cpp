#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "romlab/manufactured.hpp"

namespace romlab {
namespace {

using std::numbers::pi;

/// Direct formula, written independently of the library.
Vec2 u_ref(Point2 p, double t) {
  return Vec2{2 / pi * std::atan(-500 * (p.y - t)) * std::sin(pi * p.y),
              2 / pi * std::atan(-500 * (p.x - t)) * std::sin(pi * p.x)};
}

TEST(Manufactured, PointValues) {
  const AnalyticSolution sol;
  EXPECT_EQ(sol.velocity({0.3, 0.0}, 0.2).x, 0.0);  // sin(0) = 0
  const auto v = sol.velocity({0.5, 0.5}, 0.5);
  EXPECT_EQ(v.x, 0.0);
  EXPECT_EQ(v.y, 0.0);
  const auto w = sol.velocity({0.25, 0.75}, 0.1);
  EXPECT_NEAR(w.x, u_ref({0.25, 0.75}, 0.1).x, 1e-15);
  EXPECT_NEAR(w.y, u_ref({0.25, 0.75}, 0.1).y, 1e-15);
  // At t = 0 and y > 0 the front has passed: u ~ -sin(pi y).
  EXPECT_NEAR(sol.velocity({0.1, 0.5}, 0.0).x, -1.0 + 2.0 / (250.0 * pi), 1e-5);
}

TEST(Manufactured, DivergenceFree) {
  const AnalyticSolution sol;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unif(0, 1);
  for (int k = 0; k < 100; ++k) {
    const auto g = sol.velocity_grad({unif(rng), unif(rng)}, unif(rng));
    EXPECT_EQ(g.grad[0][0] + g.grad[1][1], 0.0);
  }
}

TEST(Manufactured, DerivativesMatchFiniteDifferences) {
  const AnalyticSolution sol;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unif(0, 1);
  const double h = 1e-6;
  for (int k = 0; k < 200; ++k) {
    const Point2 p{unif(rng), unif(rng)};
    const double t = unif(rng);
    const auto g = sol.velocity_grad(p, t);
    const auto ux = [&](Point2 q, double s) { return sol.velocity(q, s); };
    const auto dx_p = ux({p.x + h, p.y}, t), dx_m = ux({p.x - h, p.y}, t);
    const auto dy_p = ux({p.x, p.y + h}, t), dy_m = ux({p.x, p.y - h}, t);
    const double fd[2][2] = {{(dx_p.x - dx_m.x) / (2 * h), (dy_p.x - dy_m.x) / (2 * h)},
                             {(dx_p.y - dx_m.y) / (2 * h), (dy_p.y - dy_m.y) / (2 * h)}};
    for (int c = 0; c < 2; ++c)
      for (int d = 0; d < 2; ++d)
        EXPECT_NEAR(g.grad[c][d], fd[c][d], 1e-5 * (std::abs(fd[c][d]) + 1));
    const auto dt = sol.velocity_dt(p, t);
    const auto tp = ux(p, t + h), tm = ux(p, t - h);
    EXPECT_NEAR(dt.x, (tp.x - tm.x) / (2 * h), 1e-5 * (std::abs(dt.x) + 1));
    EXPECT_NEAR(dt.y, (tp.y - tm.y) / (2 * h), 1e-5 * (std::abs(dt.y) + 1));
  }
}

/// Strong-form residual: the forcing rebuilt from finite differences of the
/// velocity alone.
TEST(Manufactured, ForcingMatchesStrongFormResidual) {
  const AnalyticSolution sol;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(0.01, 0.99);
  const double h1 = 1e-6, h2 = 1e-5;
  for (int k = 0; k < 200; ++k) {
    const Point2 p{unif(rng), unif(rng)};
    const double t = unif(rng);
    auto u = [&](double x, double y, double s) { return u_ref({x, y}, s); };
    const auto c = u(p.x, p.y, t);
    const auto xp = u(p.x + h2, p.y, t), xm = u(p.x - h2, p.y, t);
    const auto yp = u(p.x, p.y + h2, t), ym = u(p.x, p.y - h2, t);
    const double lap_x = (xp.x - 2 * c.x + xm.x + yp.x - 2 * c.x + ym.x) / (h2 * h2);
    const double lap_y = (xp.y - 2 * c.y + xm.y + yp.y - 2 * c.y + ym.y) / (h2 * h2);
    const auto gxp = u(p.x + h1, p.y, t), gxm = u(p.x - h1, p.y, t);
    const auto gyp = u(p.x, p.y + h1, t), gym = u(p.x, p.y - h1, t);
    const double dudx = (gxp.x - gxm.x) / (2 * h1), dudy = (gyp.x - gym.x) / (2 * h1);
    const double dvdx = (gxp.y - gxm.y) / (2 * h1), dvdy = (gyp.y - gym.y) / (2 * h1);
    const auto tp = u(p.x, p.y, t + h1), tm = u(p.x, p.y, t - h1);
    const double fx = (tp.x - tm.x) / (2 * h1) - 1e-3 * lap_x + c.x * dudx + c.y * dudy;
    const double fy = (tp.y - tm.y) / (2 * h1) - 1e-3 * lap_y + c.x * dvdx + c.y * dvdy;
    const auto f = sol.forcing(p, t);
    EXPECT_NEAR(f.x, fx, 1e-4 * (std::abs(f.x) + 1)) << p.x << " " << p.y << " " << t;
    EXPECT_NEAR(f.y, fy, 1e-4 * (std::abs(f.y) + 1)) << p.x << " " << p.y << " " << t;
  }
}

TEST(Manufactured, InviscidForcingIsMaterialDerivative) {
  const AnalyticSolution sol(0.0);
  const Point2 p{0.37, 0.61};
  const double t = 0.42;
  const auto f = sol.forcing(p, t), ut = sol.velocity_dt(p, t), u = sol.velocity(p, t);
  const auto g = sol.velocity_grad(p, t);
  EXPECT_NEAR(f.x - ut.x, u.x * g.grad[0][0] + u.y * g.grad[0][1], 1e-12);
  EXPECT_NEAR(f.y - ut.y, u.x * g.grad[1][0] + u.y * g.grad[1][1], 1e-12);
}

TEST(Manufactured, FunctionWrappersMatchMembers) {
  const AnalyticSolution sol;
  const auto vf = sol.velocity_function();
  const auto ff = sol.forcing_function();
  const Point2 p{0.2, 0.9};
  EXPECT_EQ(vf(p, 0.3).x, sol.velocity(p, 0.3).x);
  EXPECT_EQ(ff(p, 0.3).y, sol.forcing(p, 0.3).y);
}

}  // namespace
}  // namespace romlab
