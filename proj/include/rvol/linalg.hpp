#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace rvol::linalg {

/// Dense column-major matrix; columns are contiguous so the QR inner loops
/// run straight through the kernel primitives.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

  std::span<double> col(std::size_t j) { return {data_.data() + j * rows_, rows_}; }
  std::span<const double> col(std::size_t j) const {
    return {data_.data() + j * rows_, rows_};
  }

  /// Copies rows [first, first + count) of every column.
  Matrix slice_rows(std::size_t first, std::size_t count) const;

  /// Copies row i into a dense vector (strided gather).
  std::vector<double> row(std::size_t i) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Householder QR stored JAMA-style: the reflector vectors live below the
/// diagonal of `qr`, R's diagonal in `rdiag`, R's strict upper triangle on
/// and above the diagonal of `qr`.
class QrDecomposition {
 public:
  explicit QrDecomposition(Matrix a);

  std::size_t rows() const { return qr_.rows(); }
  std::size_t cols() const { return qr_.cols(); }

  /// max |rdiag| / min |rdiag| — a cheap proxy for the condition number.
  double condition_proxy() const;

  /// Column with the smallest |rdiag| (the near-dependent one).
  std::size_t weakest_column() const;

  bool full_rank(double condition_threshold = 1e10) const;

  /// Least-squares solve; throws NumericError on rank deficiency.
  std::vector<double> solve(std::span<const double> y) const;

  /// (X'X)^{-1} = R^{-1} R^{-T}.
  Matrix normal_matrix_inverse() const;

 private:
  Matrix qr_;
  std::vector<double> rdiag_;
};

/// y_hat = X b (column-major accumulation).
std::vector<double> multiply(const Matrix& x, std::span<const double> b);

/// y - X b.
std::vector<double> residuals(const Matrix& x, std::span<const double> y,
                              std::span<const double> b);

}  // namespace rvol::linalg
