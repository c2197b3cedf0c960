#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "rvol/dataset.hpp"
#include "rvol/features.hpp"
#include "rvol/linalg.hpp"

namespace rvol::forecast {

struct ForecastRecord {
  Date target;
  std::string model;
  double predicted = 0.0;  // ln RV units
  double realized = 0.0;
  Date window_start;
  Date window_end;  // target minus one trading day
};

struct RowPrediction {
  std::size_t target_row = 0;
  double predicted = 0.0;
  bool ok = true;
  std::string reason;  // singular-window skips
};

/// The rolling engine: for each origin o from row window-1 on, refit on
/// rows [o-window+1, o] and predict row o+1 from its regressors. The
/// coefficients are re-estimated at every step. Generic over any design
/// matrix so it can be oracle-tested on tiny systems.
std::vector<RowPrediction> rolling_predict(const linalg::Matrix& x,
                                           std::span<const double> y,
                                           std::size_t window,
                                           unsigned threads = 0);

struct RollingOutcome {
  std::vector<ForecastRecord> records;
  std::vector<std::pair<Date, std::string>> skipped;
};

/// One model's out-of-sample ln RV forecasts with a window of `window`
/// regression rows.
RollingOutcome rolling_forecast(std::span<const DailyMeasures> measures,
                                const features::ModelSpec& spec,
                                std::size_t window = 1000, unsigned threads = 0);

/// All requested models forecast over the identical row set; dates any
/// model skipped are removed from every model so the panel stays paired.
struct Panel {
  std::vector<std::string> models;  // suite order
  std::map<std::string, std::vector<ForecastRecord>> records;
  std::vector<std::pair<Date, std::string>> skipped;
};

Panel forecast_panel(std::span<const DailyMeasures> measures,
                     std::span<const features::ModelSpec> specs,
                     std::size_t window = 1000, unsigned threads = 0);

}  // namespace rvol::forecast
