#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "romlab/fe_space.hpp"
#include "romlab/filter.hpp"
#include "romlab/manufactured.hpp"
#include "romlab/pod.hpp"
#include "romlab/sparse.hpp"
#include "romlab/types.hpp"

namespace romlab {

/// T_ijk = b*(phi_i, phi_j, phi_k) for i, j, k < r.
///
/// Stored as an r x r^2 matrix with data(i, m + r * j) = T_ijm, so that the
/// advection matrix B(abar)_mj = sum_i abar_i T_ijm is one row-vector product.
class TrilinearTensor {
 public:
  TrilinearTensor() = default;
  TrilinearTensor(std::size_t r, Matrix data);

  std::size_t dim() const { return r_; }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k + r_ * j));
  }
  const Matrix& data() const { return data_; }

  /// B(abar) with B_mj = sum_i abar_i T_ijm.
  Matrix advection_matrix(const Vector& abar) const;
  /// N_m(abar, a) = sum_ij abar_i a_j T_ijm.
  Vector contract(const Vector& abar, const Vector& a) const;

  /// Sub-tensor on the leading r modes.
  TrilinearTensor leading(std::size_t r) const;

  /// max |T_ijk|.
  double max_abs() const;

 private:
  std::size_t r_ = 0;
  Matrix data_;
};

struct TensorBuildOptions {
  std::size_t block_bytes = std::size_t{256} << 20;
};

/// Single sweep over quadrature points in blocks: per block, mode values and
/// gradients are tabulated for all r modes and the convective products are
/// contracted against the mode values with one matrix product.
TrilinearTensor build_trilinear_tensor(const PODBasis& basis, std::size_t r,
                                       const VelocitySpace& space,
                                       const TensorBuildOptions& options = {});

/// Column k holds (f_h(t_k), phi_i), i < r, with f_h the nodal interpolant.
Matrix project_forcing(const PODBasis& basis, std::size_t r, const SymmetricOperator& mass,
                       const VelocitySpace& space, const VectorFunction& forcing,
                       std::span<const double> times);

enum class Linearization {
  picard_implicit,  // advecting field filtered from the current iterate
  semi_implicit,    // advecting field filtered from the previous time level
};

struct LROMConfig {
  std::size_t r = 0;
  double delta = 0.0;  // 0 selects the Galerkin ROM
  double dt = 1e-2;
  double t_final = 1.0;
  double nu = 1e-3;
  double picard_tol = 1e-10;
  std::size_t picard_max_iters = 50;
  Linearization linearization = Linearization::picard_implicit;

  /// Number of time steps M = t_final / dt. Throws std::invalid_argument when
  /// the ratio is more than 2 ulp from an integer or parameters are invalid.
  std::size_t num_steps() const;
  void validate() const;
};

struct ROMOperators {
  RomStiffness stiffness;
  TrilinearTensor tensor;
  Matrix forcing;  // r x (M + 1), column k at t_k
  Vector initial;  // P_r u^0

  std::size_t dim() const { return stiffness.dim(); }
};

struct StepResult {
  Vector state;
  Vector filtered;  // advecting field used in the final linear solve
  std::size_t iterations = 0;
  double residual = 0.0;  // relative nonlinear residual at `state`
};

/// One backward-Euler step of the Leray ROM, solved by Picard iteration on
/// the filtered advecting field. Throws StepDivergenceError (step index 0)
/// when Picard stalls and SolverError on a singular system.
StepResult lrom_step(const ROMOperators& ops, const FilterOperator& filter, const LROMConfig& cfg,
                     const Vector& a_k, const Vector& f_next);

/// Same scheme with the unfiltered advecting field.
StepResult grom_step(const ROMOperators& ops, const LROMConfig& cfg, const Vector& a_k,
                     const Vector& f_next);

/// Nonlinear residual (a - a_k)/dt + nu S a + N(abar, a) - f.
Vector step_residual(const ROMOperators& ops, const LROMConfig& cfg, const Vector& a_k,
                     const Vector& f_next, const Vector& abar, const Vector& a);

struct ROMTrajectory {
  std::vector<Vector> states;            // a^0 .. a^M
  std::vector<std::size_t> iterations;   // per step, size M
  std::vector<double> energy;            // ||a^k||^2, size M + 1
  std::vector<double> dissipation;       // dt * sum_{j<k} (a^{j+1})^T S_r a^{j+1}, size M + 1

  const Vector& final_state() const { return states.back(); }
};

/// March k = 0..M-1 from ops.initial. Step failures are rethrown as
/// StepDivergenceError carrying the failing step index. A non-finite state or
/// ||a|| > 1e6 (1 + ||a^0||) also aborts.
ROMTrajectory run(const ROMOperators& ops, const FilterOperator& filter, const LROMConfig& cfg);

struct StabilityReport {
  std::vector<double> ledger;  // ||a^m||^2 + dt sum_{k<m} ||grad u_r^{k+1}||^2, m = 0..M
  double max_value = 0.0;
  bool bounded = false;
};

StabilityReport stability_check(const ROMTrajectory& traj, const ROMOperators& ops,
                                const LROMConfig& cfg);

}  // namespace romlab
