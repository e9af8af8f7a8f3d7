#include "normspace/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "normspace/error.hpp"

namespace normspace {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(ErrorCode::BadDimensions, "ragged matrix rows");
    std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * c));
  }
  return m;
}

std::vector<double> Matrix::column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

std::vector<std::vector<double>> Matrix::to_rows() const {
  std::vector<std::vector<double>> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r].assign(row(r).begin(), row(r).end());
  return out;
}

std::vector<double> multiply(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector size mismatch");
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < a.cols(); ++c) s += a(r, c) * x[c];
    y[r] = s;
  }
  return y;
}

namespace {

// In-place elimination with partial pivoting; returns the pivots in order.
std::vector<double> eliminate(Matrix& m, std::vector<std::size_t>& perm) {
  const std::size_t n = m.rows();
  perm.resize(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<double> pivots;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m(r, col)) > std::abs(m(best, col))) best = r;
    if (best != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(col, c), m(best, c));
      std::swap(perm[col], perm[best]);
    }
    const double pivot = m(col, col);
    pivots.push_back(pivot);
    if (pivot == 0.0) continue;
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m(r, col) / pivot;
      m(r, col) = f;
      for (std::size_t c = col + 1; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return pivots;
}

}  // namespace

double relative_determinant(const Matrix& a) {
  if (!a.square()) throw Error(ErrorCode::BadDimensions, "determinant of a non-square matrix");
  double hadamard = 1.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    double s = 0.0;
    for (double v : a.row(r)) s += v * v;
    hadamard *= std::sqrt(s);
  }
  if (hadamard == 0.0) return 0.0;
  Matrix m = a;
  std::vector<std::size_t> perm;
  double det = 1.0;
  for (double p : eliminate(m, perm)) det *= p;
  return std::abs(det) / hadamard;
}

bool is_invertible(const Matrix& a, double rel_tol) { return relative_determinant(a) > rel_tol; }

LuSolver::LuSolver(const Matrix& a) : lu_(a) {
  if (!is_invertible(a)) throw Error(ErrorCode::SingularMatrix, "matrix is singular to relative tolerance 1e-12");
  const auto pivots = eliminate(lu_, perm_);
  determinant_ = 1.0;
  for (double p : pivots) determinant_ *= p;
  std::size_t swaps = 0;
  std::vector<std::size_t> p = perm_;
  for (std::size_t i = 0; i < p.size(); ++i)
    while (p[i] != i) {
      std::swap(p[i], p[p[i]]);
      ++swaps;
    }
  if (swaps % 2 == 1) determinant_ = -determinant_;
}

std::vector<double> LuSolver::solve(std::span<const double> b) const {
  const std::size_t n = lu_.rows();
  if (b.size() != n) throw Error(ErrorCode::DimensionMismatch, "right-hand side size mismatch");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[perm_[i]];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * x[j];
    x[i] = s / lu_(i, i);
  }
  return x;
}

std::size_t numerical_rank(const Matrix& a, double rel_tol) {
  Matrix m = a;
  double largest = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (double v : m.row(r)) largest = std::max(largest, std::abs(v));
  if (largest == 0.0) return 0;
  const double threshold = rel_tol * largest;
  std::size_t rank = 0;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
    std::size_t best = pivot_row;
    for (std::size_t r = pivot_row + 1; r < m.rows(); ++r)
      if (std::abs(m(r, col)) > std::abs(m(best, col))) best = r;
    if (std::abs(m(best, col)) <= threshold) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot_row, c), m(best, c));
    for (std::size_t r = pivot_row + 1; r < m.rows(); ++r) {
      const double f = m(r, col) / m(pivot_row, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(pivot_row, c);
    }
    ++pivot_row;
    ++rank;
  }
  return rank;
}

SymmetricEigen jacobi_eigen(const Matrix& input, int max_sweeps) {
  if (!input.square()) throw Error(ErrorCode::BadDimensions, "eigendecomposition of a non-square matrix");
  const std::size_t n = input.rows();
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = input(i, j);
  Matrix v = Matrix::identity(n);

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) total += a(i, j) * a(i, j);
  const double eps = std::numeric_limits<double>::epsilon();

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off <= eps * eps * total * 1e-4 || off == 0.0) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });
  SymmetricEigen out;
  out.sweeps = sweep;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] = a(order[i], order[i]);
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, i) = v(k, order[i]);
  }
  return out;
}

}  // namespace normspace
