#include "rvol/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#include "rvol/errors.hpp"
#include "rvol/kernels.hpp"

namespace rvol::linalg {

Matrix Matrix::slice_rows(std::size_t first, std::size_t count) const {
  Matrix out(count, cols_);
  for (std::size_t j = 0; j < cols_; ++j) {
    const double* src = data_.data() + j * rows_ + first;
    std::memcpy(out.col(j).data(), src, count * sizeof(double));
  }
  return out;
}

std::vector<double> Matrix::row(std::size_t i) const {
  std::vector<double> out(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out[j] = (*this)(i, j);
  return out;
}

QrDecomposition::QrDecomposition(Matrix a) : qr_(std::move(a)), rdiag_(qr_.cols()) {
  const std::size_t m = qr_.rows();
  const std::size_t n = qr_.cols();
  if (m < n) throw NumericError("QR needs at least as many rows as columns");

  for (std::size_t k = 0; k < n; ++k) {
    auto ck = qr_.col(k);
    const std::size_t len = m - k;
    double nrm = std::sqrt(kernels::active().sum_sq(ck.data() + k, len));
    if (nrm == 0.0) {
      rdiag_[k] = 0.0;
      continue;
    }
    if (qr_(k, k) < 0.0) nrm = -nrm;
    for (std::size_t i = k; i < m; ++i) ck[i] /= nrm;
    qr_(k, k) += 1.0;

    for (std::size_t j = k + 1; j < n; ++j) {
      auto cj = qr_.col(j);
      const double s =
          -kernels::active().dot(ck.data() + k, cj.data() + k, len) / qr_(k, k);
      kernels::active().axpy(s, ck.data() + k, cj.data() + k, len);
    }
    rdiag_[k] = -nrm;
  }
}

double QrDecomposition::condition_proxy() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (double d : rdiag_) {
    lo = std::min(lo, std::fabs(d));
    hi = std::max(hi, std::fabs(d));
  }
  if (lo == 0.0) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

std::size_t QrDecomposition::weakest_column() const {
  std::size_t weakest = 0;
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < rdiag_.size(); ++k) {
    if (std::fabs(rdiag_[k]) < lo) {
      lo = std::fabs(rdiag_[k]);
      weakest = k;
    }
  }
  return weakest;
}

bool QrDecomposition::full_rank(double condition_threshold) const {
  return condition_proxy() <= condition_threshold;
}

std::vector<double> QrDecomposition::solve(std::span<const double> y) const {
  const std::size_t m = qr_.rows();
  const std::size_t n = qr_.cols();
  if (y.size() != m) throw NumericError("QR solve: length mismatch");
  if (!full_rank()) {
    throw NumericError("rank-deficient design (column " +
                       std::to_string(weakest_column()) + ", condition proxy " +
                       std::to_string(condition_proxy()) + ")");
  }

  std::vector<double> work(y.begin(), y.end());
  for (std::size_t k = 0; k < n; ++k) {
    auto ck = qr_.col(k);
    const std::size_t len = m - k;
    const double s =
        -kernels::active().dot(ck.data() + k, work.data() + k, len) / qr_(k, k);
    kernels::active().axpy(s, ck.data() + k, work.data() + k, len);
  }

  std::vector<double> x(n);
  for (std::size_t kk = n; kk-- > 0;) {
    double v = work[kk];
    for (std::size_t j = kk + 1; j < n; ++j) v -= qr_(kk, j) * x[j];
    x[kk] = v / rdiag_[kk];
  }
  return x;
}

Matrix QrDecomposition::normal_matrix_inverse() const {
  const std::size_t n = qr_.cols();
  if (!full_rank()) throw NumericError("rank-deficient design in (X'X)^{-1}");

  // R^{-1} column by column via back-substitution
  Matrix rinv(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t kk = c + 1; kk-- > 0;) {
      double v = (kk == c) ? 1.0 : 0.0;
      for (std::size_t j = kk + 1; j <= c; ++j) v -= qr_(kk, j) * rinv(j, c);
      rinv(kk, c) = v / rdiag_[kk];
    }
  }

  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t l = std::max(i, j); l < n; ++l) s += rinv(i, l) * rinv(j, l);
      out(i, j) = s;
      out(j, i) = s;
    }
  }
  return out;
}

std::vector<double> multiply(const Matrix& x, std::span<const double> b) {
  if (b.size() != x.cols()) throw NumericError("multiply: length mismatch");
  std::vector<double> y(x.rows(), 0.0);
  for (std::size_t j = 0; j < x.cols(); ++j) {
    kernels::active().axpy(b[j], x.col(j).data(), y.data(), x.rows());
  }
  return y;
}

std::vector<double> residuals(const Matrix& x, std::span<const double> y,
                              std::span<const double> b) {
  if (y.size() != x.rows()) throw NumericError("residuals: length mismatch");
  std::vector<double> r = multiply(x, b);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = y[i] - r[i];
  return r;
}

}  // namespace rvol::linalg
