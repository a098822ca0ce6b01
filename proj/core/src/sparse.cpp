#include "romlab/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace romlab {

SymmetricOperator::SymmetricOperator(std::size_t dim, std::vector<Triplet> triplets)
    : dim_(dim) {
  for (const auto& t : triplets) {
    if (t.row >= dim || t.col >= dim) {
      throw std::invalid_argument("SymmetricOperator: triplet index out of range");
    }
  }
  // Stable sort so duplicates are summed in insertion order.
  std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  row_ptr_.assign(dim + 1, 0);
  col_idx_.reserve(triplets.size() / 2);
  values_.reserve(triplets.size() / 2);
  std::size_t k = 0;
  for (std::size_t row = 0; row < dim; ++row) {
    while (k < triplets.size() && triplets[k].row == row) {
      const std::size_t col = triplets[k].col;
      double sum = 0.0;
      while (k < triplets.size() && triplets[k].row == row && triplets[k].col == col) {
        sum += triplets[k].value;
        ++k;
      }
      col_idx_.push_back(col);
      values_.push_back(sum);
    }
    row_ptr_[row + 1] = col_idx_.size();
  }
}

double SymmetricOperator::coeff(std::size_t i, std::size_t j) const {
  const auto begin = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
  const auto end = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
  const auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) {
    return 0.0;
  }
  return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

Vector SymmetricOperator::apply(const Vector& x) const {
  if (static_cast<std::size_t>(x.size()) != dim_) {
    throw std::invalid_argument("SymmetricOperator::apply: dimension mismatch");
  }
  Vector y(x.size());
  for (std::size_t i = 0; i < dim_; ++i) {
    double sum = 0.0;
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      sum += values_[k] * x(static_cast<Eigen::Index>(col_idx_[k]));
    }
    y(static_cast<Eigen::Index>(i)) = sum;
  }
  return y;
}

Matrix SymmetricOperator::apply(const Matrix& x) const {
  if (static_cast<std::size_t>(x.rows()) != dim_) {
    throw std::invalid_argument("SymmetricOperator::apply: dimension mismatch");
  }
  Matrix y = Matrix::Zero(x.rows(), x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    for (std::size_t i = 0; i < dim_; ++i) {
      double sum = 0.0;
      for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
        sum += values_[k] * x(static_cast<Eigen::Index>(col_idx_[k]), c);
      }
      y(static_cast<Eigen::Index>(i), c) = sum;
    }
  }
  return y;
}

double SymmetricOperator::bilinear(const Vector& x, const Vector& y) const {
  return x.dot(apply(y));
}

double SymmetricOperator::symmetry_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      worst = std::max(worst, std::abs(values_[k] - coeff(col_idx_[k], i)));
    }
  }
  return worst;
}

}  // namespace romlab
