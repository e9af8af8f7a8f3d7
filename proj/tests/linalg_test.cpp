#include <Eigen/Dense>
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "normspace/linalg.hpp"
#include "normspace/random.hpp"
#include "test_util.hpp"

using namespace normspace;

namespace {

Matrix random_symmetric(std::size_t n, Rng& rng) {
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = rng.normal();
  return a;
}

}  // namespace

TEST(Matrix, FromRowsRejectsRaggedInput) {
  EXPECT_NS_ERROR(Matrix::from_rows({{1, 2}, {3}}), BadDimensions);
  const Matrix m = Matrix::from_rows({{1, 2}, {3, 4}});
  EXPECT_EQ(m(1, 0), 3.0);
  EXPECT_EQ(m.column(1), (std::vector<double>{2, 4}));
}

TEST(Matrix, Multiply) {
  const Matrix m = Matrix::from_rows({{1, 2}, {3, 4}});
  EXPECT_EQ(multiply(m, std::vector<double>{1, 1}), (std::vector<double>{3, 7}));
  EXPECT_NS_ERROR(multiply(m, std::vector<double>{1}), DimensionMismatch);
}

TEST(LuSolver, SolvesAndReportsDeterminant) {
  const Matrix m = Matrix::from_rows({{0, 2}, {3, 1}});
  const LuSolver lu(m);
  EXPECT_NEAR(lu.determinant(), -6.0, 1e-14);
  const auto x = lu.solve(std::vector<double>{2, 4});
  EXPECT_NEAR(x[0], 1.0, 1e-14);
  EXPECT_NEAR(x[1], 1.0, 1e-14);
}

TEST(LuSolver, SingularMatrixRejected) {
  EXPECT_NS_ERROR(LuSolver(Matrix::from_rows({{1, 2}, {2, 4}})), SingularMatrix);
  EXPECT_FALSE(is_invertible(Matrix::from_rows({{1, 2}, {2, 4}})));
  EXPECT_TRUE(is_invertible(Matrix::from_rows({{1e-8, 0}, {0, 1e8}})));  // scale-free per row
}

TEST(NumericalRank, CountsIndependentRows) {
  EXPECT_EQ(numerical_rank(Matrix::from_rows({{2, 4}, {4, 8}})), 1u);
  EXPECT_EQ(numerical_rank(Matrix::identity(3)), 3u);
  EXPECT_EQ(numerical_rank(Matrix(2, 2)), 0u);
}

TEST(JacobiEigen, KnownSpectra) {
  const auto e = jacobi_eigen(Matrix::from_rows({{2, 1}, {1, 2}}));
  ASSERT_EQ(e.values.size(), 2u);
  EXPECT_NEAR(e.values[0], 3.0, 1e-14);
  EXPECT_NEAR(e.values[1], 1.0, 1e-14);

  const auto star = jacobi_eigen(Matrix::from_rows({{2, -2, -2}, {-2, 2, -2}, {-2, -2, 2}}));
  EXPECT_NEAR(star.values[0], 4.0, 1e-13);
  EXPECT_NEAR(star.values[1], 4.0, 1e-13);
  EXPECT_NEAR(star.values[2], -2.0, 1e-13);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(std::abs(star.vectors(i, 2)), 1.0 / std::sqrt(3.0), 1e-13);
}

TEST(JacobiEigen, DiagonalInputNeedsNoSweeps) {
  const auto e = jacobi_eigen(Matrix::from_rows({{1, 0}, {0, 5}}));
  EXPECT_EQ(e.values, (std::vector<double>{5, 1}));
  EXPECT_EQ(e.sweeps, 0);
}

TEST(JacobiEigen, AgreesWithEigenOnRandomMatrices) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.index(12);
    const Matrix a = random_symmetric(n, rng);
    const auto mine = jacobi_eigen(a);

    Eigen::MatrixXd ea(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) ea(i, j) = a(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(ea);
    std::vector<double> ref(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    std::sort(ref.rbegin(), ref.rend());

    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(mine.values[i], ref[i], 1e-11) << "n=" << n;

    // A v = lambda v and V orthonormal.
    for (std::size_t c = 0; c < n; ++c) {
      const auto v = mine.vectors.column(c);
      const auto av = multiply(a, v);
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(av[i], mine.values[c] * v[i], 1e-11);
      for (std::size_t d = 0; d < n; ++d) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += v[i] * mine.vectors(i, d);
        EXPECT_NEAR(dot, c == d ? 1.0 : 0.0, 1e-12);
      }
    }
  }
}

TEST(JacobiEigen, NonSquareRejected) { EXPECT_NS_ERROR(jacobi_eigen(Matrix(2, 3)), BadDimensions); }
