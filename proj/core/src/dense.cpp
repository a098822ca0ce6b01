#include "romlab/dense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace romlab {

double symmetry_defect(const Matrix& a) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = j + 1; i < a.rows(); ++i) {
      worst = std::max(worst, std::abs(a(i, j) - a(j, i)));
    }
  }
  return worst;
}

SymmetricEigen symmetric_eig(const Matrix& input) {
  if (input.rows() != input.cols()) {
    throw std::invalid_argument("symmetric_eig: matrix is not square");
  }
  const Eigen::Index n = input.rows();
  const double scale = n > 0 ? input.cwiseAbs().maxCoeff() : 0.0;
  if (!input.allFinite()) {
    throw std::invalid_argument("symmetric_eig: non-finite entries");
  }
  if (symmetry_defect(input) > 1e-10 * std::max(scale, std::numeric_limits<double>::min())) {
    throw std::invalid_argument("symmetric_eig: matrix is not symmetric");
  }

  Matrix a = 0.5 * (input + input.transpose());
  Matrix v = Matrix::Identity(n, n);

  const double eps = std::numeric_limits<double>::epsilon();
  const double frob = a.norm();
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < j; ++i) {
        off += a(i, j) * a(i, j);
      }
    }
    if (std::sqrt(2.0 * off) <= eps * frob) {
      break;
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) {
          continue;
        }
        // Skip rotations that cannot change either diagonal entry.
        if (sweep > 3 && std::abs(apq) <= eps * 1e-2 * std::min(std::abs(a(p, p)), std::abs(a(q, q)))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(1.0, theta));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return a(x, x) > a(y, y); });

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.values(k) = a(src, src);
    out.vectors.col(k) = v.col(src);
  }
  return out;
}

}  // namespace romlab
