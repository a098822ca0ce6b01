#include "romlab/pod.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "romlab/dense.hpp"
#include "romlab/errors.hpp"

namespace romlab {

FEField SnapshotSet::column(std::size_t l) const {
  return FEField(*space, columns.col(static_cast<Eigen::Index>(l)));
}

std::vector<double> uniform_times(double dt, std::size_t steps) {
  std::vector<double> t(steps + 1);
  for (std::size_t l = 0; l <= steps; ++l) {
    t[l] = static_cast<double>(l) * dt;
  }
  return t;
}

SnapshotSet collect_snapshots(const VelocitySpace& space, const AnalyticSolution& solution,
                              std::span<const double> times) {
  if (times.empty()) {
    throw std::invalid_argument("collect_snapshots: empty time list");
  }
  for (std::size_t l = 0; l < times.size(); ++l) {
    if (!(times[l] >= 0.0 && times[l] <= 1.0 + 1e-12)) {
      throw std::invalid_argument("collect_snapshots: time outside [0, 1]");
    }
    if (l > 0 && !(times[l] > times[l - 1])) {
      throw std::invalid_argument("collect_snapshots: times must be strictly increasing");
    }
  }
  SnapshotSet set;
  set.space = &space;
  set.times.assign(times.begin(), times.end());
  set.columns.resize(static_cast<Eigen::Index>(space.num_dofs()),
                     static_cast<Eigen::Index>(times.size()));
  const VectorFunction g = solution.velocity_function();
  for (std::size_t l = 0; l < times.size(); ++l) {
    set.columns.col(static_cast<Eigen::Index>(l)) = interpolate(space, g, times[l]).coeffs;
  }
  return set;
}

Matrix correlation_matrix(const SnapshotSet& snapshots, const SymmetricOperator& mass) {
  if (static_cast<std::size_t>(snapshots.columns.rows()) != mass.dim()) {
    throw std::invalid_argument("correlation_matrix: dimension mismatch");
  }
  const Matrix mu = mass.apply(snapshots.columns);
  const Eigen::Index m = snapshots.columns.cols();
  Matrix k(m, m);
  const double inv = 1.0 / static_cast<double>(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      const double v = snapshots.columns.col(i).dot(mu.col(j)) * inv;
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

double PODBasis::h1_norm_sq(std::size_t j) const {
  const auto jj = static_cast<Eigen::Index>(j);
  const double grad = gradient_gram(jj, jj);
  return h1 == H1Convention::full_norm ? 1.0 + grad : grad;
}

FEField PODBasis::mode(const VelocitySpace& space, std::size_t j) const {
  return FEField(space, modes.col(static_cast<Eigen::Index>(j)));
}

PODBasis build_pod_basis(const SnapshotSet& snapshots, const SymmetricOperator& mass,
                         const SymmetricOperator& stiffness, const PODOptions& options) {
  if (snapshots.count() == 0) {
    throw std::invalid_argument("build_pod_basis: no snapshots");
  }
  const Matrix k = correlation_matrix(snapshots, mass);
  const SymmetricEigen eig = symmetric_eig(k);

  const double lead = eig.values(0);
  if (!(lead > 0.0)) {
    throw DegenerateEnsembleError("build_pod_basis: correlation matrix has no positive eigenvalue");
  }
  Eigen::Index d = 0;
  while (d < eig.values.size() && eig.values(d) > options.rank_tol * lead && eig.values(d) > 0.0) {
    ++d;
  }
  if (d == 0) {
    throw DegenerateEnsembleError("build_pod_basis: all eigenvalues below the rank tolerance");
  }

  PODBasis basis;
  basis.h1 = options.h1;
  basis.eigenvalues = eig.values.head(d);
  basis.eigenvectors = eig.vectors.leftCols(d);

  const double samples = static_cast<double>(snapshots.count());
  basis.modes = snapshots.columns * basis.eigenvectors;
  for (Eigen::Index j = 0; j < d; ++j) {
    basis.modes.col(j) /= std::sqrt(samples * basis.eigenvalues(j));
  }

  // The trailing modes inherit eigenvector error amplified by
  // sqrt(lambda_1 / lambda_j); two Gram-Schmidt passes in the mass inner
  // product restore orthonormality without changing the nested spans.
  Matrix mphi = mass.apply(basis.modes);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      if (j > 0) {
        const Vector proj = mphi.leftCols(j).transpose() * basis.modes.col(j);
        basis.modes.col(j) -= basis.modes.leftCols(j) * proj;
      }
      Vector mj = mass.apply(Vector(basis.modes.col(j)));
      const double nrm = std::sqrt(basis.modes.col(j).dot(mj));
      basis.modes.col(j) /= nrm;
      mphi.col(j) = mj / nrm;
    }
  }

  const Matrix sphi = stiffness.apply(basis.modes);
  Matrix gram = basis.modes.transpose() * sphi;
  basis.gradient_gram = 0.5 * (gram + gram.transpose());
  return basis;
}

TruncationErrors truncation_errors(const PODBasis& basis, std::size_t r) {
  const std::size_t d = basis.rank();
  if (r > d) {
    throw std::invalid_argument("truncation_errors: r = " + std::to_string(r) +
                                " exceeds rank " + std::to_string(d));
  }
  TruncationErrors out;
  // Smallest terms first.
  for (std::size_t j = d; j-- > r;) {
    const double lambda = basis.eigenvalues(static_cast<Eigen::Index>(j));
    out.l2 += lambda;
    out.h1 += basis.h1_norm_sq(j) * lambda;
  }
  return out;
}

double RomStiffness::inverse_constant() const { return std::sqrt(spectral_norm); }

RomStiffness rom_stiffness(const PODBasis& basis, std::size_t r) {
  if (r == 0 || r > basis.rank()) {
    throw std::invalid_argument("rom_stiffness: r = " + std::to_string(r) + " out of range [1, " +
                                std::to_string(basis.rank()) + "]");
  }
  const auto rr = static_cast<Eigen::Index>(r);
  RomStiffness out;
  out.matrix = basis.gradient_gram.topLeftCorner(rr, rr);
  const SymmetricEigen eig = symmetric_eig(out.matrix);
  out.spectral_norm = std::max(std::abs(eig.values(0)), std::abs(eig.values(rr - 1)));
  return out;
}

Vector project_Pr(const PODBasis& basis, std::size_t r, const SymmetricOperator& mass,
                  const Vector& v) {
  if (r > basis.rank()) {
    throw std::invalid_argument("project_Pr: r exceeds rank");
  }
  if (static_cast<std::size_t>(v.size()) != mass.dim() || basis.modes.rows() != v.size()) {
    throw std::invalid_argument("project_Pr: dimension mismatch");
  }
  return basis.modes.leftCols(static_cast<Eigen::Index>(r)).transpose() * mass.apply(v);
}

Vector reconstruct(const PODBasis& basis, const Vector& a) {
  if (a.size() > basis.modes.cols()) {
    throw std::invalid_argument("reconstruct: more coordinates than modes");
  }
  return basis.modes.leftCols(a.size()) * a;
}

Vector rom_laplacian(const RomStiffness& stiffness, const Vector& a) {
  if (static_cast<std::size_t>(a.size()) != stiffness.dim()) {
    throw std::invalid_argument("rom_laplacian: dimension mismatch");
  }
  return -(stiffness.matrix * a);
}

}  // namespace romlab
