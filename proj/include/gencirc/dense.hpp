// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gencirc/core.hpp"

namespace gencirc {

/// Row-major dense complex matrix. Only used for materialization and for the
/// brute-force oracle; the structured types never go through it.
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
    return out;
  }

  /// Builds a matrix whose j-th column is columns[j].
  static DenseMatrix from_columns(std::span<const CVector> columns) {
    const std::size_t cols = columns.size();
    const std::size_t rows = cols == 0 ? 0 : columns.front().size();
    DenseMatrix out(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) {
      detail::require(columns[j].size() == rows, "ragged column set");
      for (std::size_t i = 0; i < rows; ++i) out(i, j) = columns[j][i];
    }
    return out;
  }

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  [[nodiscard]] std::span<const Complex> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  [[nodiscard]] std::span<const Complex> data() const noexcept { return data_; }

  [[nodiscard]] std::size_t nonzeros() const noexcept {
    std::size_t n = 0;
    for (const auto& v : data_) n += (v != Complex{0.0, 0.0});
    return n;
  }

  [[nodiscard]] double frobenius_norm() const { return detail::norm2(data_); }

  [[nodiscard]] Complex trace() const {
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) sum += (*this)(i, i);
    return sum;
  }

  [[nodiscard]] CVector column(std::size_t j) const {
    CVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  [[nodiscard]] CVector operator*(const CVector& x) const {
    detail::require(x.size() == cols_, "matrix-vector length mismatch");
    CVector y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      Complex acc{0.0, 0.0};
      const Complex* r = data_.data() + i * cols_;
      for (std::size_t j = 0; j < cols_; ++j) acc += r[j] * x[j];
      y[i] = acc;
    }
    return y;
  }

  [[nodiscard]] DenseMatrix operator*(const DenseMatrix& b) const {
    detail::require(cols_ == b.rows_, "matrix-matrix shape mismatch");
    DenseMatrix c(rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const Complex a = (*this)(i, k);
        if (a == Complex{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a * b(k, j);
      }
    }
    return c;
  }

  DenseMatrix& operator+=(const DenseMatrix& b) {
    detail::require(rows_ == b.rows_ && cols_ == b.cols_, "shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += b.data_[i];
    return *this;
  }

  DenseMatrix& operator-=(const DenseMatrix& b) {
    detail::require(rows_ == b.rows_ && cols_ == b.cols_, "shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= b.data_[i];
    return *this;
  }

  DenseMatrix& operator*=(Complex a) {
    for (auto& v : data_) v *= a;
    return *this;
  }

  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator*(Complex a, DenseMatrix b) { return b *= a; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// LU factorization with partial pivoting (pivot magnitude = complex modulus).
///
/// A pivot whose modulus falls at or below `pivot_floor` marks the matrix as
/// numerically singular; the factorization continues so that rank() stays
/// meaningful, but solve() refuses to run.
class PivotedLU {
public:
  PivotedLU(DenseMatrix a, double pivot_floor) : lu_(std::move(a)), perm_(lu_.rows()) {
    detail::require(lu_.square(), "LU needs a square matrix");
    const std::size_t n = lu_.rows();
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
    // Elimination over the columns; rows that cannot supply a pivot are left
    // in place and counted as rank deficiency.
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
      std::size_t best = row;
      double best_mag = std::abs(lu_(row, col));
      for (std::size_t i = row + 1; i < n; ++i) {
        const double mag = std::abs(lu_(i, col));
        if (mag > best_mag) {
          best = i;
          best_mag = mag;
        }
      }
      min_pivot_ = std::min(min_pivot_, best_mag);
      if (best_mag <= pivot_floor) {
        singular_ = true;
        continue;
      }
      if (best != row) {
        for (std::size_t j = 0; j < n; ++j) std::swap(lu_(row, j), lu_(best, j));
        std::swap(perm_[row], perm_[best]);
      }
      const Complex pivot = lu_(row, col);
      for (std::size_t i = row + 1; i < n; ++i) {
        const Complex factor = lu_(i, col) / pivot;
        lu_(i, col) = factor;
        if (factor == Complex{0.0, 0.0}) continue;
        for (std::size_t j = col + 1; j < n; ++j) lu_(i, j) -= factor * lu_(row, j);
      }
      ++row;
    }
    rank_ = row;
    if (n == 0) min_pivot_ = 0.0;
  }

  [[nodiscard]] std::size_t rank() const noexcept { return rank_; }
  [[nodiscard]] bool singular() const noexcept { return singular_; }
  [[nodiscard]] double min_pivot() const noexcept { return min_pivot_; }

  /// Solves A x = b. Only valid when the matrix is nonsingular.
  [[nodiscard]] std::optional<CVector> solve(const CVector& b) const {
    const std::size_t n = lu_.rows();
    detail::require(b.size() == n, "right-hand side length mismatch");
    if (singular_) return std::nullopt;
    CVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
    }
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
      x[i] /= lu_(i, i);
    }
    return x;
  }

private:
  DenseMatrix lu_;
  std::vector<std::size_t> perm_;
  std::size_t rank_ = 0;
  bool singular_ = false;
  double min_pivot_ = std::numeric_limits<double>::infinity();
};

/// Numerical rank by partial-pivoting elimination. Pivots at or below
/// `relative_floor * ||A||_F` count as zero.
inline std::size_t numerical_rank(const DenseMatrix& a, double relative_floor) {
  if (a.rows() == 0) return 0;
  return PivotedLU(a, relative_floor * a.frobenius_norm()).rank();
}

}  // namespace gencirc
