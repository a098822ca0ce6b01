#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "romlab/dense.hpp"

namespace romlab {
namespace {

Matrix random_symmetric(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> dist;
  Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = dist(rng);
  return a + a.transpose();
}

TEST(SymmetricEig, Identity) {
  const auto e = symmetric_eig(Matrix::Identity(5, 5));
  for (int i = 0; i < 5; ++i) EXPECT_EQ(e.values(i), 1.0);
  EXPECT_NEAR((e.vectors.transpose() * e.vectors - Matrix::Identity(5, 5)).norm(), 0, 1e-15);
}

TEST(SymmetricEig, TwoByTwo) {
  Matrix a(2, 2);
  a << 2, 1, 1, 2;
  const auto e = symmetric_eig(a);
  EXPECT_NEAR(e.values(0), 3.0, 1e-15);
  EXPECT_NEAR(e.values(1), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(e.vectors(0, 0)), std::sqrt(0.5), 1e-15);
}

TEST(SymmetricEig, AgreesWithReferenceSolver) {
  std::mt19937_64 rng(9);
  for (Eigen::Index n : {1, 3, 20, 101}) {
    const Matrix a = random_symmetric(rng, n);
    const auto e = symmetric_eig(a);
    Eigen::SelfAdjointEigenSolver<Matrix> ref(a);
    const Vector ref_desc = ref.eigenvalues().reverse();
    EXPECT_LE((e.values - ref_desc).cwiseAbs().maxCoeff(), 1e-12 * a.norm());
    for (Eigen::Index i = 1; i < n; ++i) EXPECT_GE(e.values(i - 1), e.values(i));
    EXPECT_LE((e.vectors.transpose() * e.vectors - Matrix::Identity(n, n)).cwiseAbs().maxCoeff(),
              1e-13);
    EXPECT_LE((a * e.vectors - e.vectors * e.values.asDiagonal()).cwiseAbs().maxCoeff(),
              1e-12 * a.norm());
  }
}

TEST(SymmetricEig, Deterministic) {
  std::mt19937_64 rng(10);
  const Matrix a = random_symmetric(rng, 30);
  const auto e1 = symmetric_eig(a), e2 = symmetric_eig(a);
  EXPECT_TRUE((e1.values.array() == e2.values.array()).all());
  EXPECT_TRUE((e1.vectors.array() == e2.vectors.array()).all());
}

TEST(SymmetricEig, RejectsBadInput) {
  EXPECT_THROW(symmetric_eig(Matrix::Zero(2, 3)), std::invalid_argument);
  Matrix a(2, 2);
  a << 1, 2, 3, 4;
  EXPECT_THROW(symmetric_eig(a), std::invalid_argument);
  a << 1, std::nan(""), std::nan(""), 1;
  EXPECT_THROW(symmetric_eig(a), std::invalid_argument);
  EXPECT_EQ(symmetry_defect(Matrix::Identity(3, 3)), 0.0);
}

}  // namespace
}  // namespace romlab
