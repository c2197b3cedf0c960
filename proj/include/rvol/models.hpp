#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rvol/dataset.hpp"
#include "rvol/estimation.hpp"
#include "rvol/features.hpp"

namespace rvol::models {

struct SuiteOptions {
  int nw_bandwidth = estimation::kAutoBandwidth;
  unsigned threads = 0;
  std::string market = "market";
  std::size_t min_rows = 100;
};

struct SuiteEntry {
  features::ModelSpec spec;
  std::optional<estimation::FitResult> fit;
  std::string skip_reason;  // set when fit is empty
};

struct SuiteResult {
  std::string market;
  std::vector<SuiteEntry> entries;  // all eight models, suite order
  std::size_t common_rows = 0;
  std::size_t rejected_rows = 0;
};

/// build_rows -> ols -> newey_west_cov for one model on its own maximal
/// row set.
estimation::FitResult fit_model(std::span<const DailyMeasures> measures,
                                const features::ModelSpec& spec,
                                int nw_bandwidth = estimation::kAutoBandwidth);

/// Fits every model whose inputs are available on the identical row set
/// (the intersection of rows valid for each of them), so adjusted R^2 is
/// comparable across columns. Models with missing inputs get an explicit
/// skip reason.
SuiteResult fit_suite(std::span<const DailyMeasures> measures,
                      const SuiteOptions& options = {});

}  // namespace rvol::models
