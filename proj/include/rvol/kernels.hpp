#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace rvol::kernels {

struct SignSplit {
  double plus = 0.0;   // terms with x >= 0
  double minus = 0.0;  // terms with x < 0
};

// One function table per backend. All reductions use Neumaier-compensated
// accumulation so scalar and vector variants agree to ~1 ulp of the exact
// sum; dot/axpy are plain multi-accumulator loops.
struct Backend {
  const char* name;

  double (*sum)(const double* x, std::size_t n);
  double (*sum_sq)(const double* x, std::size_t n);
  SignSplit (*sum_sq_signed)(const double* x, std::size_t n);
  double (*sum_abs)(const double* x, std::size_t n);
  // sum over j = 1..n-1 of |x[j]| * |x[j-1]|
  double (*sum_abs_lag1)(const double* x, std::size_t n);

  double (*dot)(const double* x, const double* y, std::size_t n);
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  void (*mul)(const double* x, const double* y, double* out, std::size_t n);

  // forecast-loss reductions: p = predicted, a = realized
  double (*sum_sq_diff)(const double* p, const double* a, std::size_t n);
  double (*sum_abs_diff)(const double* p, const double* a, std::size_t n);
  double (*sum_sq_relerr)(const double* p, const double* a, std::size_t n);
  double (*sum_abs_relerr)(const double* p, const double* a, std::size_t n);
};

const Backend& scalar_backend();

/// AVX2+FMA table, or nullptr when the build or the CPU lacks support.
const Backend* avx2_backend();

/// Backend used by the convenience wrappers below. Defaults to the widest
/// instruction set the CPU supports.
const Backend& active();
std::string_view active_name();

/// Selects "auto", "scalar" or "avx2"; throws UsageError if unavailable.
void select(std::string_view name);

std::vector<std::string_view> available();

inline double sum(std::span<const double> x) {
  return active().sum(x.data(), x.size());
}
inline double sum_sq(std::span<const double> x) {
  return active().sum_sq(x.data(), x.size());
}
inline SignSplit sum_sq_signed(std::span<const double> x) {
  return active().sum_sq_signed(x.data(), x.size());
}
inline double sum_abs(std::span<const double> x) {
  return active().sum_abs(x.data(), x.size());
}
inline double sum_abs_lag1(std::span<const double> x) {
  return active().sum_abs_lag1(x.data(), x.size());
}
inline double dot(std::span<const double> x, std::span<const double> y) {
  return active().dot(x.data(), y.data(), x.size());
}
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  active().axpy(a, x.data(), y.data(), x.size());
}
inline void mul(std::span<const double> x, std::span<const double> y,
                std::span<double> out) {
  active().mul(x.data(), y.data(), out.data(), x.size());
}
inline double sum_sq_diff(std::span<const double> p, std::span<const double> a) {
  return active().sum_sq_diff(p.data(), a.data(), p.size());
}
inline double sum_abs_diff(std::span<const double> p, std::span<const double> a) {
  return active().sum_abs_diff(p.data(), a.data(), p.size());
}
inline double sum_sq_relerr(std::span<const double> p, std::span<const double> a) {
  return active().sum_sq_relerr(p.data(), a.data(), p.size());
}
inline double sum_abs_relerr(std::span<const double> p, std::span<const double> a) {
  return active().sum_abs_relerr(p.data(), a.data(), p.size());
}

}  // namespace rvol::kernels
