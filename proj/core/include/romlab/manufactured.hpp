#pragma once

#include "romlab/fe_space.hpp"
#include "romlab/mesh.hpp"

namespace romlab {

/// Travelling-front manufactured solution on the unit square:
///   u = (2/pi) atan(-k (y - t)) sin(pi y),  v = (2/pi) atan(-k (x - t)) sin(pi x),
/// with k the sharpness (500) and zero pressure. u depends on y only and v on
/// x only, so the field is divergence free by construction.
class AnalyticSolution {
 public:
  explicit AnalyticSolution(double nu = 1e-3, double sharpness = 500.0);

  double nu() const { return nu_; }
  double sharpness() const { return sharpness_; }

  Vec2 velocity(Point2 p, double t) const;
  Mat2 velocity_grad(Point2 p, double t) const;
  Vec2 velocity_dt(Point2 p, double t) const;
  /// Component-wise Laplacian.
  Vec2 velocity_laplacian(Point2 p, double t) const;
  /// f = u_t - nu Lap u + (u . grad) u.
  Vec2 forcing(Point2 p, double t) const;

  VectorFunction velocity_function() const;
  VectorFunction forcing_function() const;

 private:
  struct Profile {
    double value;
    double d1;  // derivative in the profile coordinate
    double d2;
    double dt;
  };
  // g(z, t) = (2/pi) atan(-k (z - t)) sin(pi z) and its derivatives.
  Profile profile(double z, double t) const;

  double nu_;
  double sharpness_;
};

}  // namespace romlab
