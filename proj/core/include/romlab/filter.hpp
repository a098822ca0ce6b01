#pragma once

#include <Eigen/Cholesky>

#include "romlab/pod.hpp"
#include "romlab/types.hpp"

namespace romlab {

/// ROM differential filter in L2-orthonormal coordinates: abar solves
/// (I + delta^2 S_r) abar = a. Factored once; solves are read-only.
class FilterOperator {
 public:
  FilterOperator(const RomStiffness& stiffness, double delta);

  double delta() const { return delta_; }
  std::size_t dim() const { return static_cast<std::size_t>(system_.rows()); }

  /// I + delta^2 S_r.
  const Matrix& system() const { return system_; }
  /// Lower Cholesky factor L with L L^T = system().
  Matrix factor() const;

  Vector apply(const Vector& a) const;
  Matrix apply(const Matrix& a) const;

 private:
  double delta_;
  Matrix system_;
  Eigen::LLT<Matrix> llt_;
};

/// Throws std::invalid_argument for delta < 0 or a non-finite delta.
FilterOperator build_filter(const RomStiffness& stiffness, double delta);

Vector apply_filter(const FilterOperator& filter, const Vector& a);

/// Filter a full FE field: (I + delta^2 S_r)^{-1} Phi_r^T M v.
Vector filter_fe(const FilterOperator& filter, const PODBasis& basis,
                 const SymmetricOperator& mass, const Vector& v);

}  // namespace romlab
