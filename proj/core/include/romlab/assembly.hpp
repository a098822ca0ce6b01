#pragma once

#include "romlab/fe_space.hpp"
#include "romlab/quadrature.hpp"
#include "romlab/sparse.hpp"

namespace romlab {

/// Vector L2 mass operator, block diagonal over the two components.
SymmetricOperator assemble_mass(const VelocitySpace& space);
/// Same, integrated with an explicit rule instead of the space's own.
SymmetricOperator assemble_mass(const VelocitySpace& space, const QuadratureRule& rule);

/// Vector gradient operator (grad u, grad v). No boundary rows are
/// eliminated; constants are in the kernel.
SymmetricOperator assemble_stiffness(const VelocitySpace& space);
SymmetricOperator assemble_stiffness(const VelocitySpace& space, const QuadratureRule& rule);

/// Scalar (single component) mass operator of size N_s.
SymmetricOperator assemble_scalar_mass(const VelocitySpace& space);

double l2_inner(const SymmetricOperator& mass, const Vector& u, const Vector& v);
double l2_norm(const SymmetricOperator& mass, const Vector& u);
double h1_semi_norm(const SymmetricOperator& stiffness, const Vector& u);

/// b*(u, v, w) = 1/2 [((u . grad) v, w) - ((u . grad) w, v)] by element
/// quadrature with the space's rule. Throws std::invalid_argument when the
/// fields live on different spaces.
double trilinear_bstar(const FEField& u, const FEField& v, const FEField& w);
/// Same, with an explicit quadrature rule.
double trilinear_bstar(const FEField& u, const FEField& v, const FEField& w,
                       const QuadratureRule& rule);

}  // namespace romlab
