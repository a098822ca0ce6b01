#pragma once

#include <cstddef>
#include <vector>

#include "romlab/types.hpp"

namespace romlab {

/// Symmetric sparse operator in CSR form (both triangles stored).
///
/// Built from (row, col, value) triplets; duplicates are summed in insertion
/// order, so mirrored contributions added pairwise stay bit-identical.
class SymmetricOperator {
 public:
  struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
  };

  SymmetricOperator() = default;
  SymmetricOperator(std::size_t dim, std::vector<Triplet> triplets);

  std::size_t dim() const { return dim_; }
  std::size_t nnz() const { return values_.size(); }

  /// A(i, j), zero when not stored.
  double coeff(std::size_t i, std::size_t j) const;

  Vector apply(const Vector& x) const;
  Matrix apply(const Matrix& x) const;

  /// x^T A y.
  double bilinear(const Vector& x, const Vector& y) const;

  /// Largest |A(i, j) - A(j, i)| over stored entries.
  double symmetry_defect() const;

  const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::size_t>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::size_t dim_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

}  // namespace romlab
