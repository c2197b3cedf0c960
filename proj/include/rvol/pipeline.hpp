#pragma once

#include <string>
#include <vector>

#include "rvol/dataset.hpp"
#include "rvol/estimation.hpp"

namespace rvol::pipeline {

struct Options {
  std::string ticks_path;     // one of ticks_path / measures_path is set
  std::string measures_path;
  std::string out_dir;
  std::string market = "market";
  std::size_t window = 1000;
  int nw_bandwidth = estimation::kAutoBandwidth;
  int dm_lag = 0;
  int min_obs = 10;
  unsigned threads = 0;
  bool scale_display = true;
};

std::vector<DailyMeasures> load_measures_file(const std::string& path);

/// Measures (from ticks or a measures file) written with plot series.
std::vector<DailyMeasures> compute_measures_step(const Options& opts);

/// measures -> describe -> fit -> forecast -> evaluate, writing every
/// artifact under out_dir. Returns the number of files written.
int run_pipeline(const Options& opts);

}  // namespace rvol::pipeline
