#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace normspace {

/// Small dense row-major matrix. Sizes here are at most a few dozen.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  /// Throws BadDimensions on ragged input.
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::vector<double> column(std::size_t c) const;
  std::vector<std::vector<double>> to_rows() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

std::vector<double> multiply(const Matrix& a, std::span<const double> x);

/// LU factorization with partial pivoting, reusable for many right-hand sides.
class LuSolver {
 public:
  /// Throws SingularMatrix when the matrix fails `is_invertible`.
  explicit LuSolver(const Matrix& a);

  std::vector<double> solve(std::span<const double> b) const;
  double determinant() const noexcept { return determinant_; }

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  double determinant_ = 0.0;
};

/// |det A| compared against the Hadamard bound prod_i ||row_i||_2, which
/// always dominates it; the ratio is scale-free in each row.
double relative_determinant(const Matrix& a);
bool is_invertible(const Matrix& a, double rel_tol = 1e-12);

/// Numerical rank by Gaussian elimination with partial pivoting; a pivot
/// counts when it exceeds rel_tol times the largest entry of the input.
std::size_t numerical_rank(const Matrix& a, double rel_tol = 1e-12);

struct SymmetricEigen {
  std::vector<double> values;  // descending
  Matrix vectors;              // column i pairs with values[i]
  int sweeps = 0;
};

/// Cyclic Jacobi rotations on a symmetric matrix. Only the upper triangle
/// is read; the input is copied.
SymmetricEigen jacobi_eigen(const Matrix& a, int max_sweeps = 100);

}  // namespace normspace
