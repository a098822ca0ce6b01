#pragma once

#include "romlab/types.hpp"

namespace romlab {

struct SymmetricEigen {
  Vector values;   // descending
  Matrix vectors;  // column j pairs with values(j)
};

/// Cyclic Jacobi eigensolver for dense symmetric matrices.
///
/// Sweeps rotate every off-diagonal pair in fixed row-major order until the
/// off-diagonal Frobenius mass drops below machine precision relative to the
/// matrix norm. Throws std::invalid_argument when A is not square or its
/// symmetry defect exceeds 1e-10 * max|A|.
SymmetricEigen symmetric_eig(const Matrix& a);

/// max |A(i, j) - A(j, i)|.
double symmetry_defect(const Matrix& a);

}  // namespace romlab
