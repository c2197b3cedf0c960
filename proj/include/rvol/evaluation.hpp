#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rvol/forecast.hpp"

namespace rvol::evaluation {

enum class LossKind { mse, mae, hmse, hmae };

const char* loss_name(LossKind k);
LossKind loss_by_name(std::string_view name);

struct LossReport {
  std::string model;
  double mse = 0.0;
  double mae = 0.0;
  double hmse = 0.0;
  double hmae = 0.0;
  std::size_t m = 0;           // forecast count
  std::size_t h_excluded = 0;  // records with realized == 0, dropped from H-losses
};

/// MSE/MAE plus the heteroscedasticity-adjusted variants on the ratio
/// predicted/realized; all in ln RV units.
LossReport losses(std::span<const forecast::ForecastRecord> records);

struct DmResult {
  std::string benchmark;
  std::string comparison;
  LossKind loss = LossKind::mse;
  double statistic = 0.0;  // positive => the comparison model's loss is smaller
  double p_value = 1.0;
  std::size_t m = 0;
  int lrv_lag = 0;
  bool infinite = false;  // zero-variance differential with nonzero mean
};

/**
 * Diebold-Mariano test on the loss differential d_t = L(benchmark) -
 * L(comparison). The long-run variance uses Bartlett weights up to
 * lrv_lag; the default 0 (the h-1 rule for 1-step forecasts) is the plain
 * sample variance of d. Asymptotically N(0,1) under equal accuracy.
 */
DmResult dm_test(std::span<const forecast::ForecastRecord> benchmark,
                 std::span<const forecast::ForecastRecord> comparison,
                 LossKind kind, int lrv_lag = 0);

/// Upper-triangle benchmark x comparison grid over all four losses
/// (28 pairs x 4 losses = 112 cells for the eight-model suite).
std::vector<DmResult> dm_matrix(const forecast::Panel& panel, int lrv_lag = 0);

}  // namespace rvol::evaluation
