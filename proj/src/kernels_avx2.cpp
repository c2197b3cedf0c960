#include "kernels_tables.hpp"

#if defined(RVOL_BUILD_AVX2) && (defined(__x86_64__) || defined(__i386__))

#include <immintrin.h>

#include <cmath>
#include <cstddef>

// AVX2+FMA backend. This TU is compiled with -mavx2 -mfma and is entered
// only after a runtime cpuid check (see kernels.cpp). Reductions keep four
// independent Neumaier lanes and combine them with a compensated scalar
// pass, so accuracy matches the scalar reference to ~1 ulp; only the
// association order differs.

namespace rvol::kernels::detail {

namespace {

inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

struct ScalarAcc {
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

struct VecAcc {
  __m256d s = _mm256_setzero_pd();
  __m256d c = _mm256_setzero_pd();

  inline void add(__m256d v) {
    const __m256d t = _mm256_add_pd(s, v);
    const __m256d s_big = _mm256_cmp_pd(abs_pd(s), abs_pd(v), _CMP_GE_OQ);
    const __m256d corr_s = _mm256_add_pd(_mm256_sub_pd(s, t), v);
    const __m256d corr_v = _mm256_add_pd(_mm256_sub_pd(v, t), s);
    c = _mm256_add_pd(c, _mm256_blendv_pd(corr_v, corr_s, s_big));
    s = t;
  }

  inline void fold_into(ScalarAcc& acc) const {
    alignas(32) double sv[4];
    alignas(32) double cv[4];
    _mm256_store_pd(sv, s);
    _mm256_store_pd(cv, c);
    for (int i = 0; i < 4; ++i) acc.add(sv[i]);
    for (int i = 0; i < 4; ++i) acc.add(cv[i]);
  }
};

double sum_avx2(const double* x, std::size_t n) {
  VecAcc v;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) v.add(_mm256_loadu_pd(x + i));
  ScalarAcc a;
  v.fold_into(a);
  for (; i < n; ++i) a.add(x[i]);
  return a.value();
}

double sum_sq_avx2(const double* x, std::size_t n) {
  VecAcc v;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    v.add(_mm256_mul_pd(xv, xv));
  }
  ScalarAcc a;
  v.fold_into(a);
  for (; i < n; ++i) a.add(x[i] * x[i]);
  return a.value();
}

SignSplit sum_sq_signed_avx2(const double* x, std::size_t n) {
  VecAcc plus_v, minus_v;
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d sq = _mm256_mul_pd(xv, xv);
    const __m256d nonneg = _mm256_cmp_pd(xv, zero, _CMP_GE_OQ);
    plus_v.add(_mm256_and_pd(sq, nonneg));
    minus_v.add(_mm256_andnot_pd(nonneg, sq));
  }
  ScalarAcc plus, minus;
  plus_v.fold_into(plus);
  minus_v.fold_into(minus);
  for (; i < n; ++i) {
    const double sq = x[i] * x[i];
    if (x[i] >= 0.0) {
      plus.add(sq);
    } else {
      minus.add(sq);
    }
  }
  return {plus.value(), minus.value()};
}

double sum_abs_avx2(const double* x, std::size_t n) {
  VecAcc v;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) v.add(abs_pd(_mm256_loadu_pd(x + i)));
  ScalarAcc a;
  v.fold_into(a);
  for (; i < n; ++i) a.add(std::fabs(x[i]));
  return a.value();
}

double sum_abs_lag1_avx2(const double* x, std::size_t n) {
  VecAcc v;
  std::size_t i = 1;
  for (; i + 4 <= n; i += 4) {
    const __m256d cur = abs_pd(_mm256_loadu_pd(x + i));
    const __m256d prev = abs_pd(_mm256_loadu_pd(x + i - 1));
    v.add(_mm256_mul_pd(cur, prev));
  }
  ScalarAcc a;
  v.fold_into(a);
  for (; i < n; ++i) a.add(std::fabs(x[i]) * std::fabs(x[i - 1]));
  return a.value();
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd();
  __m256d s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), s0);
    s1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), s1);
  }
  for (; i + 4 <= n; i += 4) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), s0);
  }
  const __m256d s = _mm256_add_pd(s0, s1);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, s);
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) total += x[i] * y[i];
  return total;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d yv = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yv));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void mul_avx2(const double* x, const double* y, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i,
                     _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) out[i] = x[i] * y[i];
}

double sum_sq_diff_avx2(const double* p, const double* a, std::size_t n) {
  VecAcc v;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(p + i), _mm256_loadu_pd(a + i));
    v.add(_mm256_mul_pd(d, d));
  }
  ScalarAcc acc;
  v.fold_into(acc);
  for (; i < n; ++i) {
    const double d = p[i] - a[i];
    acc.add(d * d);
  }
  return acc.value();
}

double sum_abs_diff_avx2(const double* p, const double* a, std::size_t n) {
  VecAcc v;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    v.add(abs_pd(_mm256_sub_pd(_mm256_loadu_pd(p + i), _mm256_loadu_pd(a + i))));
  }
  ScalarAcc acc;
  v.fold_into(acc);
  for (; i < n; ++i) acc.add(std::fabs(p[i] - a[i]));
  return acc.value();
}

double sum_sq_relerr_avx2(const double* p, const double* a, std::size_t n) {
  VecAcc v;
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r =
        _mm256_sub_pd(one, _mm256_div_pd(_mm256_loadu_pd(p + i), _mm256_loadu_pd(a + i)));
    v.add(_mm256_mul_pd(r, r));
  }
  ScalarAcc acc;
  v.fold_into(acc);
  for (; i < n; ++i) {
    const double r = 1.0 - p[i] / a[i];
    acc.add(r * r);
  }
  return acc.value();
}

double sum_abs_relerr_avx2(const double* p, const double* a, std::size_t n) {
  VecAcc v;
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    v.add(abs_pd(
        _mm256_sub_pd(one, _mm256_div_pd(_mm256_loadu_pd(p + i), _mm256_loadu_pd(a + i)))));
  }
  ScalarAcc acc;
  v.fold_into(acc);
  for (; i < n; ++i) acc.add(std::fabs(1.0 - p[i] / a[i]));
  return acc.value();
}

}  // namespace

const Backend avx2_table = {
    "avx2",
    sum_avx2,
    sum_sq_avx2,
    sum_sq_signed_avx2,
    sum_abs_avx2,
    sum_abs_lag1_avx2,
    dot_avx2,
    axpy_avx2,
    mul_avx2,
    sum_sq_diff_avx2,
    sum_abs_diff_avx2,
    sum_sq_relerr_avx2,
    sum_abs_relerr_avx2,
};

}  // namespace rvol::kernels::detail

#endif  // RVOL_BUILD_AVX2
