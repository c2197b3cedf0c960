#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rvol::stats {

/// Standard normal CDF via erfc.
double normal_cdf(double x);

/// Two-sided p-value 2(1 - Phi(|z|)).
double normal_two_sided_p(double z);

/// Upper tail P(X > x) for chi-square with `dof` degrees of freedom.
double chi_squared_sf(double x, int dof);

struct Moments {
  std::size_t n = 0;
  double mean = 0.0;
  double median = 0.0;
  double max = 0.0;
  double min = 0.0;
  double std_dev = 0.0;   // sample, n-1 denominator
  double skewness = 0.0;  // m3 / m2^{3/2}
  double ex_kurtosis = 0.0;  // m4 / m2^2 - 3
  bool shape_defined = true;  // false when the series has zero variance
};

Moments moments(std::span<const double> series);

/// Biased (T-denominator) sample autocorrelations at lags 1..max_lag.
std::vector<double> autocorrelations(std::span<const double> series, int max_lag);

struct LjungBox {
  double q = 0.0;
  double p_value = 1.0;
  int lags = 0;
};

/// Q = T(T+2) sum_k rho_k^2 / (T-k), chi-square p with `max_lag` dof.
LjungBox ljung_box(std::span<const double> series, int max_lag = 20);

}  // namespace rvol::stats
