#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "romlab/fe_space.hpp"
#include "romlab/manufactured.hpp"
#include "romlab/sparse.hpp"
#include "romlab/types.hpp"

namespace romlab {

/// Snapshot ensemble: column l is the nodal interpolant at times[l].
struct SnapshotSet {
  const VelocitySpace* space = nullptr;
  std::vector<double> times;
  Matrix columns;  // N x (M + 1)

  std::size_t count() const { return static_cast<std::size_t>(columns.cols()); }
  FEField column(std::size_t l) const;
};

/// t_l = l * dt for l = 0..steps.
std::vector<double> uniform_times(double dt, std::size_t steps);

/// Throws std::invalid_argument on an empty or non-increasing time list or
/// times outside [0, 1].
SnapshotSet collect_snapshots(const VelocitySpace& space, const AnalyticSolution& solution,
                              std::span<const double> times);

/// K = U^T M U / (M + 1).
Matrix correlation_matrix(const SnapshotSet& snapshots, const SymmetricOperator& mass);

/// Which quantity ||phi_j||_1^2 denotes in the H1 truncation sum.
enum class H1Convention { full_norm, seminorm };

struct PODOptions {
  double rank_tol = 1e-14;  // relative to lambda_1
  H1Convention h1 = H1Convention::full_norm;
};

/// L2-orthonormal POD basis from the method of snapshots.
struct PODBasis {
  Vector eigenvalues;     // lambda_1 >= ... >= lambda_d > 0
  Matrix eigenvectors;    // (M + 1) x d correlation eigenvectors z_j
  Matrix modes;           // N x d
  Matrix gradient_gram;   // d x d, (grad phi_j, grad phi_i)
  H1Convention h1 = H1Convention::full_norm;

  std::size_t rank() const { return static_cast<std::size_t>(eigenvalues.size()); }

  /// ||phi_j||_1^2 under the configured convention (0-based j).
  double h1_norm_sq(std::size_t j) const;

  FEField mode(const VelocitySpace& space, std::size_t j) const;
};

/// Throws DegenerateEnsembleError when no eigenvalue exceeds rank_tol * lambda_1
/// (or every eigenvalue is non-positive).
PODBasis build_pod_basis(const SnapshotSet& snapshots, const SymmetricOperator& mass,
                         const SymmetricOperator& stiffness, const PODOptions& options = {});

struct TruncationErrors {
  double l2 = 0.0;
  double h1 = 0.0;
};

/// Lambda_L2 = sum_{j>r} lambda_j, Lambda_H1 = sum_{j>r} ||phi_j||_1^2 lambda_j.
TruncationErrors truncation_errors(const PODBasis& basis, std::size_t r);

/// S_r with (S_r)_ij = (grad phi_j, grad phi_i) and its spectral norm.
struct RomStiffness {
  Matrix matrix;
  double spectral_norm = 0.0;

  std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
  /// sqrt(||S_r||_2), the POD inverse-estimate constant.
  double inverse_constant() const;
};

RomStiffness rom_stiffness(const PODBasis& basis, std::size_t r);

/// Coordinates (v, phi_i), i < r, of the ROM L2 projection of v.
Vector project_Pr(const PODBasis& basis, std::size_t r, const SymmetricOperator& mass,
                  const Vector& v);

/// Reconstruct Phi_r a.
Vector reconstruct(const PODBasis& basis, const Vector& a);

/// ROM Laplacian in coordinates: -S_r a.
Vector rom_laplacian(const RomStiffness& stiffness, const Vector& a);

}  // namespace romlab
