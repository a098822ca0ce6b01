#include "romlab/rom.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "romlab/errors.hpp"

namespace romlab {

TrilinearTensor::TrilinearTensor(std::size_t r, Matrix data) : r_(r), data_(std::move(data)) {
  const auto ri = static_cast<Eigen::Index>(r);
  if (data_.rows() != ri || data_.cols() != ri * ri) {
    throw std::invalid_argument("TrilinearTensor: data must be r x r^2");
  }
}

Matrix TrilinearTensor::advection_matrix(const Vector& abar) const {
  const auto r = static_cast<Eigen::Index>(r_);
  if (abar.size() != r) {
    throw std::invalid_argument("TrilinearTensor::advection_matrix: dimension mismatch");
  }
  const Eigen::RowVectorXd flat = abar.transpose() * data_;
  return Eigen::Map<const Matrix>(flat.data(), r, r);
}

Vector TrilinearTensor::contract(const Vector& abar, const Vector& a) const {
  if (a.size() != static_cast<Eigen::Index>(r_)) {
    throw std::invalid_argument("TrilinearTensor::contract: dimension mismatch");
  }
  return advection_matrix(abar) * a;
}

TrilinearTensor TrilinearTensor::leading(std::size_t r) const {
  if (r > r_) {
    throw std::invalid_argument("TrilinearTensor::leading: r exceeds tensor dimension");
  }
  const auto ri = static_cast<Eigen::Index>(r);
  const auto full = static_cast<Eigen::Index>(r_);
  Matrix sub(ri, ri * ri);
  for (Eigen::Index j = 0; j < ri; ++j) {
    sub.middleCols(ri * j, ri) = data_.block(0, full * j, ri, ri);
  }
  return TrilinearTensor(r, std::move(sub));
}

double TrilinearTensor::max_abs() const { return data_.size() == 0 ? 0.0 : data_.cwiseAbs().maxCoeff(); }

TrilinearTensor build_trilinear_tensor(const PODBasis& basis, std::size_t r,
                                       const VelocitySpace& space,
                                       const TensorBuildOptions& options) {
  if (r == 0 || r > basis.rank()) {
    throw std::invalid_argument("build_trilinear_tensor: r = " + std::to_string(r) +
                                " out of range [1, " + std::to_string(basis.rank()) + "]");
  }
  if (static_cast<std::size_t>(basis.modes.rows()) != space.num_dofs()) {
    throw std::invalid_argument("build_trilinear_tensor: basis does not match the space");
  }
  const auto ri = static_cast<Eigen::Index>(r);
  const auto ns = static_cast<Eigen::Index>(space.num_scalar_dofs());
  const QuadratureRule& rule = space.quadrature();
  const auto& shapes = space.shape_at_quadrature();
  const std::size_t nq = rule.size();

  // G holds r^2 x (2 * points) doubles per block.
  const std::size_t bytes_per_point = 2 * r * r * sizeof(double);
  const std::size_t points_budget = std::max<std::size_t>(nq, options.block_bytes / bytes_per_point);
  const std::size_t elements_per_block = std::max<std::size_t>(1, points_budget / nq);

  // a(i + r j, k) = sum_q w_q ((phi_i . grad) phi_j) . phi_k
  Matrix a = Matrix::Zero(ri * ri, ri);

  Matrix vx, vy, dxx, dyx, dxy, dyy, g, w;
  const Matrix phi = basis.modes.leftCols(ri);
  for (std::size_t e0 = 0; e0 < space.num_elements(); e0 += elements_per_block) {
    const std::size_t e1 = std::min(space.num_elements(), e0 + elements_per_block);
    const auto pts = static_cast<Eigen::Index>((e1 - e0) * nq);
    vx.resize(ri, pts);
    vy.resize(ri, pts);
    dxx.resize(ri, pts);
    dyx.resize(ri, pts);
    dxy.resize(ri, pts);
    dyy.resize(ri, pts);
    w.resize(ri, 2 * pts);

    Eigen::Index col = 0;
    for (std::size_t e = e0; e < e1; ++e) {
      const ElementGeometry& geo = space.geometry(e);
      const auto& dofs = space.element_dofs(e);
      const double jac = std::abs(geo.det);
      for (std::size_t q = 0; q < nq; ++q, ++col) {
        const P2Shape& sh = shapes[q];
        vx.col(col).setZero();
        vy.col(col).setZero();
        dxx.col(col).setZero();
        dyx.col(col).setZero();
        dxy.col(col).setZero();
        dyy.col(col).setZero();
        for (std::size_t n = 0; n < 6; ++n) {
          const double gx = geo.inv_jac_t[0][0] * sh.d_ds[n] + geo.inv_jac_t[0][1] * sh.d_dt[n];
          const double gy = geo.inv_jac_t[1][0] * sh.d_ds[n] + geo.inv_jac_t[1][1] * sh.d_dt[n];
          const auto d = static_cast<Eigen::Index>(dofs[n]);
          const auto cx = phi.row(d).transpose();
          const auto cy = phi.row(ns + d).transpose();
          vx.col(col) += sh.value[n] * cx;
          vy.col(col) += sh.value[n] * cy;
          dxx.col(col) += gx * cx;
          dyx.col(col) += gy * cx;
          dxy.col(col) += gx * cy;
          dyy.col(col) += gy * cy;
        }
        const double wq = rule.weights[q] * jac;
        w.col(2 * col) = wq * vx.col(col);
        w.col(2 * col + 1) = wq * vy.col(col);
      }
    }

    g.resize(ri * ri, 2 * pts);
    for (Eigen::Index p = 0; p < pts; ++p) {
      for (Eigen::Index j = 0; j < ri; ++j) {
        // (phi_i . grad) phi_j, x and y components, for all i at once
        g.col(2 * p).segment(ri * j, ri) = vx.col(p) * dxx(j, p) + vy.col(p) * dyx(j, p);
        g.col(2 * p + 1).segment(ri * j, ri) = vx.col(p) * dxy(j, p) + vy.col(p) * dyy(j, p);
      }
    }
    a.noalias() += g * w.transpose();
  }

  Matrix data(ri, ri * ri);
  for (Eigen::Index i = 0; i < ri; ++i) {
    for (Eigen::Index j = 0; j < ri; ++j) {
      for (Eigen::Index m = 0; m < ri; ++m) {
        data(i, m + ri * j) = 0.5 * (a(i + ri * j, m) - a(i + ri * m, j));
      }
    }
  }
  return TrilinearTensor(r, std::move(data));
}

Matrix project_forcing(const PODBasis& basis, std::size_t r, const SymmetricOperator& mass,
                       const VelocitySpace& space, const VectorFunction& forcing,
                       std::span<const double> times) {
  if (r == 0 || r > basis.rank()) {
    throw std::invalid_argument("project_forcing: r out of range");
  }
  const auto ri = static_cast<Eigen::Index>(r);
  const Matrix weighted = mass.apply(Matrix(basis.modes.leftCols(ri)));  // M Phi_r
  Matrix out(ri, static_cast<Eigen::Index>(times.size()));
  constexpr std::size_t kBatch = 64;
  Matrix batch;
  for (std::size_t k0 = 0; k0 < times.size(); k0 += kBatch) {
    const std::size_t k1 = std::min(times.size(), k0 + kBatch);
    batch.resize(static_cast<Eigen::Index>(space.num_dofs()), static_cast<Eigen::Index>(k1 - k0));
    for (std::size_t k = k0; k < k1; ++k) {
      batch.col(static_cast<Eigen::Index>(k - k0)) = interpolate(space, forcing, times[k]).coeffs;
    }
    out.middleCols(static_cast<Eigen::Index>(k0), static_cast<Eigen::Index>(k1 - k0)).noalias() =
        weighted.transpose() * batch;
  }
  return out;
}

std::size_t LROMConfig::num_steps() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("LROMConfig: dt must be positive");
  }
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    throw std::invalid_argument("LROMConfig: t_final must be non-negative");
  }
  const double ratio = t_final / dt;
  const double steps = std::round(ratio);
  if (std::abs(ratio - steps) > 2.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, steps)) {
    throw std::invalid_argument("LROMConfig: t_final / dt is not an integer step count");
  }
  return static_cast<std::size_t>(steps);
}

void LROMConfig::validate() const {
  if (r == 0) {
    throw std::invalid_argument("LROMConfig: r must be positive");
  }
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("LROMConfig: delta must be non-negative");
  }
  if (!(nu >= 0.0) || !std::isfinite(nu)) {
    throw std::invalid_argument("LROMConfig: nu must be non-negative");
  }
  if (!(picard_tol > 0.0)) {
    throw std::invalid_argument("LROMConfig: picard_tol must be positive");
  }
  if (picard_max_iters == 0) {
    throw std::invalid_argument("LROMConfig: picard_max_iters must be positive");
  }
  (void)num_steps();
}

namespace {

Vector solve_dense(const Matrix& a, const Vector& b) {
  Eigen::PartialPivLU<Matrix> lu(a);
  Vector x = lu.solve(b);
  if (!x.allFinite()) {
    throw SolverError("backward-Euler system is singular or produced non-finite values");
  }
  return x;
}

// Fixed-point iteration on the advecting field; `smooth` maps a state to its
// advecting field (identity for the Galerkin ROM).
template <typename Smooth>
StepResult picard_step(const ROMOperators& ops, const LROMConfig& cfg, const Vector& a_k,
                       const Vector& f_next, Smooth smooth) {
  const auto r = static_cast<Eigen::Index>(ops.dim());
  if (a_k.size() != r || f_next.size() != r) {
    throw std::invalid_argument("ROM step: state or forcing has the wrong dimension");
  }
  if (!a_k.allFinite()) {
    throw std::invalid_argument("ROM step: non-finite state");
  }
  const Vector rhs = a_k / cfg.dt + f_next;
  const double scale = rhs.norm() > 0.0 ? rhs.norm() : 1.0;
  Matrix base = cfg.nu * ops.stiffness.matrix;
  base.diagonal().array() += 1.0 / cfg.dt;

  const bool lagged = cfg.linearization == Linearization::semi_implicit;
  Vector abar = smooth(a_k);
  StepResult out;
  for (std::size_t it = 1; it <= cfg.picard_max_iters; ++it) {
    const Vector a = solve_dense(base + ops.tensor.advection_matrix(abar), rhs);
    const Vector abar_next = lagged ? abar : smooth(a);
    const Vector res = base * a + ops.tensor.contract(abar_next, a) - rhs;
    out.state = a;
    out.filtered = abar_next;
    out.iterations = it;
    out.residual = res.norm() / scale;
    if (lagged || out.residual <= cfg.picard_tol) {
      return out;
    }
    if (!std::isfinite(out.residual)) {
      break;
    }
    abar = abar_next;
  }
  throw StepDivergenceError("Picard iteration did not converge in " +
                                std::to_string(cfg.picard_max_iters) +
                                " iterations (relative residual " +
                                std::to_string(out.residual) + ")",
                            0, out.residual);
}

}  // namespace

StepResult lrom_step(const ROMOperators& ops, const FilterOperator& filter, const LROMConfig& cfg,
                     const Vector& a_k, const Vector& f_next) {
  if (filter.dim() != ops.dim()) {
    throw std::invalid_argument("lrom_step: filter dimension does not match the operators");
  }
  return picard_step(ops, cfg, a_k, f_next, [&](const Vector& a) { return filter.apply(a); });
}

StepResult grom_step(const ROMOperators& ops, const LROMConfig& cfg, const Vector& a_k,
                     const Vector& f_next) {
  return picard_step(ops, cfg, a_k, f_next, [](const Vector& a) { return a; });
}

Vector step_residual(const ROMOperators& ops, const LROMConfig& cfg, const Vector& a_k,
                     const Vector& f_next, const Vector& abar, const Vector& a) {
  return (a - a_k) / cfg.dt + cfg.nu * (ops.stiffness.matrix * a) + ops.tensor.contract(abar, a) -
         f_next;
}

ROMTrajectory run(const ROMOperators& ops, const FilterOperator& filter, const LROMConfig& cfg) {
  cfg.validate();
  const std::size_t steps = cfg.num_steps();
  if (static_cast<std::size_t>(ops.forcing.cols()) < steps + 1) {
    throw std::invalid_argument("run: forcing series shorter than the number of time levels");
  }
  if (ops.initial.size() != static_cast<Eigen::Index>(ops.dim())) {
    throw std::invalid_argument("run: initial state has the wrong dimension");
  }
  ROMTrajectory traj;
  traj.states.reserve(steps + 1);
  traj.iterations.reserve(steps);
  traj.energy.reserve(steps + 1);
  traj.dissipation.reserve(steps + 1);
  traj.states.push_back(ops.initial);
  traj.energy.push_back(ops.initial.squaredNorm());
  traj.dissipation.push_back(0.0);

  const double limit = 1e6 * (1.0 + ops.initial.norm());
  for (std::size_t k = 0; k < steps; ++k) {
    StepResult step;
    try {
      step = lrom_step(ops, filter, cfg, traj.states.back(),
                       ops.forcing.col(static_cast<Eigen::Index>(k + 1)));
    } catch (const StepDivergenceError& err) {
      throw StepDivergenceError("step " + std::to_string(k) + ": " + err.what(), k, err.residual());
    } catch (const SolverError& err) {
      throw StepDivergenceError("step " + std::to_string(k) + ": " + err.what(), k,
                                std::numeric_limits<double>::quiet_NaN());
    }
    const double nrm = step.state.norm();
    if (!step.state.allFinite() || nrm > limit) {
      throw StepDivergenceError("step " + std::to_string(k) + ": state blew up (norm " +
                                    std::to_string(nrm) + ")",
                                k, step.residual);
    }
    const double grad_sq = step.state.dot(ops.stiffness.matrix * step.state);
    traj.dissipation.push_back(traj.dissipation.back() + cfg.dt * grad_sq);
    traj.energy.push_back(step.state.squaredNorm());
    traj.iterations.push_back(step.iterations);
    traj.states.push_back(std::move(step.state));
  }
  return traj;
}

StabilityReport stability_check(const ROMTrajectory& traj, const ROMOperators& /*ops*/,
                                const LROMConfig& /*cfg*/) {
  StabilityReport rep;
  rep.ledger.reserve(traj.energy.size());
  bool finite = true;
  for (std::size_t m = 0; m < traj.energy.size(); ++m) {
    const double v = traj.energy[m] + traj.dissipation[m];
    finite = finite && std::isfinite(v);
    rep.ledger.push_back(v);
    rep.max_value = std::max(rep.max_value, v);
  }
  const double start = rep.ledger.empty() ? 0.0 : rep.ledger.front();
  rep.bounded = finite && rep.max_value <= 1e6 * (1.0 + start);
  return rep;
}

}  // namespace romlab
