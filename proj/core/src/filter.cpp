#include "romlab/filter.hpp"

#include <cmath>
#include <stdexcept>

#include "romlab/errors.hpp"

namespace romlab {

FilterOperator::FilterOperator(const RomStiffness& stiffness, double delta) : delta_(delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("FilterOperator: delta must be finite and non-negative");
  }
  const auto r = stiffness.matrix.rows();
  system_ = Matrix::Identity(r, r) + (delta * delta) * stiffness.matrix;
  llt_.compute(system_);
  if (llt_.info() != Eigen::Success) {
    throw SolverError("FilterOperator: I + delta^2 S_r is not positive definite");
  }
}

Matrix FilterOperator::factor() const { return llt_.matrixL(); }

Vector FilterOperator::apply(const Vector& a) const {
  if (a.size() != system_.rows()) {
    throw std::invalid_argument("FilterOperator::apply: dimension mismatch");
  }
  return llt_.solve(a);
}

Matrix FilterOperator::apply(const Matrix& a) const {
  if (a.rows() != system_.rows()) {
    throw std::invalid_argument("FilterOperator::apply: dimension mismatch");
  }
  return llt_.solve(a);
}

FilterOperator build_filter(const RomStiffness& stiffness, double delta) {
  return FilterOperator(stiffness, delta);
}

Vector apply_filter(const FilterOperator& filter, const Vector& a) { return filter.apply(a); }

Vector filter_fe(const FilterOperator& filter, const PODBasis& basis,
                 const SymmetricOperator& mass, const Vector& v) {
  return filter.apply(project_Pr(basis, filter.dim(), mass, v));
}

}  // namespace romlab
