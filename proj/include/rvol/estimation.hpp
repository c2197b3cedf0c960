#pragma once

#include <span>
#include <string>
#include <vector>

#include "rvol/linalg.hpp"

namespace rvol::estimation {

/// Sentinel for the plug-in truncation L = floor(4 (T/100)^{2/9}).
constexpr int kAutoBandwidth = -1;

int auto_bandwidth(std::size_t nobs);

struct OlsFit {
  std::vector<double> coefficients;
  std::vector<double> residuals;
  double r2 = 0.0;
  double adj_r2 = 0.0;
  std::size_t nobs = 0;
  std::size_t nparams = 0;
};

/**
 * Ordinary least squares via Householder QR (never the raw normal
 * equations). X must carry the intercept column; `names` (optional) label
 * columns in rank-deficiency errors.
 */
OlsFit ols(const linalg::Matrix& x, std::span<const double> y,
           std::span<const std::string> names = {});

struct HacCovariance {
  linalg::Matrix cov;
  int bandwidth = 0;
  bool psd = true;  // false when a sandwich diagonal came out negative
};

/**
 * Newey-West HAC covariance of the OLS coefficients: Bartlett weights
 * w_l = 1 - l/(L+1), sandwich (X'X)^{-1} S (X'X)^{-1}, no small-sample
 * correction. bandwidth = kAutoBandwidth applies the plug-in rule;
 * bandwidth 0 collapses to the White (heteroscedasticity-only) sandwich.
 */
HacCovariance newey_west_cov(const linalg::Matrix& x,
                             std::span<const double> residuals,
                             int bandwidth = kAutoBandwidth);

/// 1 - (SSR/(n-k)) / (SST/(n-1)) with SST about the mean of y.
double adjusted_r2(std::span<const double> y, std::span<const double> residuals,
                   std::size_t k);

enum class Significance { none, p10, p5, p1 };

/// Two-sided test against normal critical values 1.645 / 1.960 / 2.576,
/// boundaries inclusive.
Significance significance(double t_stat);

const char* stars(Significance s);

struct FitResult {
  std::string model;
  std::vector<std::string> names;  // intercept first
  std::vector<double> coefficients;
  std::vector<double> hac_se;
  std::vector<double> t_stats;
  double r2 = 0.0;
  double adj_r2 = 0.0;
  std::vector<double> residuals;
  std::size_t nobs = 0;
  int bandwidth_used = 0;
  bool hac_psd = true;
};

/// ols + newey_west_cov + t-stats in one pass.
FitResult fit(const linalg::Matrix& x, std::span<const double> y,
              std::vector<std::string> names, std::string model_id,
              int bandwidth = kAutoBandwidth);

}  // namespace rvol::estimation
