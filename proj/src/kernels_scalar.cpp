#include <cmath>
#include <cstddef>

#include "kernels_tables.hpp"

// Reference backend. Every reduction uses a Neumaier accumulator: the
// running error of each add is captured and folded back in at the end, so
// results stay within ~1 ulp of the exact sum regardless of length.

namespace rvol::kernels::detail {

namespace {

struct Acc {
  double s = 0.0;
  double c = 0.0;

  inline void add(double v) {
    const double t = s + v;
    if (std::fabs(s) >= std::fabs(v)) {
      c += (s - t) + v;
    } else {
      c += (v - t) + s;
    }
    s = t;
  }

  inline double value() const { return s + c; }
};

double sum_scalar(const double* x, std::size_t n) {
  Acc a;
  for (std::size_t i = 0; i < n; ++i) a.add(x[i]);
  return a.value();
}

double sum_sq_scalar(const double* x, std::size_t n) {
  Acc a;
  for (std::size_t i = 0; i < n; ++i) a.add(x[i] * x[i]);
  return a.value();
}

SignSplit sum_sq_signed_scalar(const double* x, std::size_t n) {
  Acc plus, minus;
  for (std::size_t i = 0; i < n; ++i) {
    const double sq = x[i] * x[i];
    if (x[i] >= 0.0) {
      plus.add(sq);
    } else {
      minus.add(sq);
    }
  }
  return {plus.value(), minus.value()};
}

double sum_abs_scalar(const double* x, std::size_t n) {
  Acc a;
  for (std::size_t i = 0; i < n; ++i) a.add(std::fabs(x[i]));
  return a.value();
}

double sum_abs_lag1_scalar(const double* x, std::size_t n) {
  Acc a;
  for (std::size_t i = 1; i < n; ++i) a.add(std::fabs(x[i]) * std::fabs(x[i - 1]));
  return a.value();
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += x[i] * y[i];
    s1 += x[i + 1] * y[i + 1];
    s2 += x[i + 2] * y[i + 2];
    s3 += x[i + 3] * y[i + 3];
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += x[i] * y[i];
  return ((s0 + s1) + (s2 + s3)) + tail;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void mul_scalar(const double* x, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * y[i];
}

double sum_sq_diff_scalar(const double* p, const double* a, std::size_t n) {
  Acc acc;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = p[i] - a[i];
    acc.add(d * d);
  }
  return acc.value();
}

double sum_abs_diff_scalar(const double* p, const double* a, std::size_t n) {
  Acc acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(std::fabs(p[i] - a[i]));
  return acc.value();
}

double sum_sq_relerr_scalar(const double* p, const double* a, std::size_t n) {
  Acc acc;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = 1.0 - p[i] / a[i];
    acc.add(d * d);
  }
  return acc.value();
}

double sum_abs_relerr_scalar(const double* p, const double* a, std::size_t n) {
  Acc acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(std::fabs(1.0 - p[i] / a[i]));
  return acc.value();
}

}  // namespace

const Backend scalar_table = {
    "scalar",
    sum_scalar,
    sum_sq_scalar,
    sum_sq_signed_scalar,
    sum_abs_scalar,
    sum_abs_lag1_scalar,
    dot_scalar,
    axpy_scalar,
    mul_scalar,
    sum_sq_diff_scalar,
    sum_abs_diff_scalar,
    sum_sq_relerr_scalar,
    sum_abs_relerr_scalar,
};

}  // namespace rvol::kernels::detail
