#include "romlab/manufactured.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace romlab {

using std::numbers::pi;

AnalyticSolution::AnalyticSolution(double nu, double sharpness) : nu_(nu), sharpness_(sharpness) {
  if (!(nu >= 0.0) || !std::isfinite(nu)) {
    throw std::invalid_argument("AnalyticSolution: nu must be non-negative and finite");
  }
  if (!(sharpness > 0.0) || !std::isfinite(sharpness)) {
    throw std::invalid_argument("AnalyticSolution: sharpness must be positive and finite");
  }
}

AnalyticSolution::Profile AnalyticSolution::profile(double z, double t) const {
  const double k = sharpness_;
  const double s = -k * (z - t);
  const double a = std::atan(s);
  const double sn = std::sin(pi * z);
  const double cs = std::cos(pi * z);
  const double q = 1.0 / (1.0 + s * s);
  const double c = 2.0 / pi;
  Profile p;
  p.value = c * a * sn;
  p.d1 = c * (-k * q * sn + pi * a * cs);
  p.d2 = c * (-2.0 * k * k * s * q * q * sn - 2.0 * k * pi * q * cs - pi * pi * a * sn);
  p.dt = c * k * q * sn;
  return p;
}

Vec2 AnalyticSolution::velocity(Point2 p, double t) const {
  return {profile(p.y, t).value, profile(p.x, t).value};
}

Mat2 AnalyticSolution::velocity_grad(Point2 p, double t) const {
  Mat2 m;
  m.grad[0][0] = 0.0;
  m.grad[0][1] = profile(p.y, t).d1;
  m.grad[1][0] = profile(p.x, t).d1;
  m.grad[1][1] = 0.0;
  return m;
}

Vec2 AnalyticSolution::velocity_dt(Point2 p, double t) const {
  return {profile(p.y, t).dt, profile(p.x, t).dt};
}

Vec2 AnalyticSolution::velocity_laplacian(Point2 p, double t) const {
  return {profile(p.y, t).d2, profile(p.x, t).d2};
}

Vec2 AnalyticSolution::forcing(Point2 p, double t) const {
  const Profile gy = profile(p.y, t);  // u(y)
  const Profile gx = profile(p.x, t);  // v(x)
  // (u . grad) u = (u u_x + v u_y, u v_x + v v_y) with u_x = v_y = 0.
  return {gy.dt - nu_ * gy.d2 + gx.value * gy.d1, gx.dt - nu_ * gx.d2 + gy.value * gx.d1};
}

VectorFunction AnalyticSolution::velocity_function() const {
  return [self = *this](Point2 p, double t) { return self.velocity(p, t); };
}

VectorFunction AnalyticSolution::forcing_function() const {
  return [self = *this](Point2 p, double t) { return self.forcing(p, t); };
}

}  // namespace romlab
