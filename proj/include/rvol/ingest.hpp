#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rvol/dataset.hpp"

namespace rvol::ingest {

/// Reads a tick CSV (`timestamp,price` header). Duplicate timestamps keep
/// the last tick; a decreasing timestamp or non-positive price is an error
/// naming the line.
std::vector<PriceTick> parse_ticks(std::istream& in);

struct SessionBuild {
  Dataset dataset;
  std::vector<Date> dropped;  // days below min_obs ticks
};

/// Groups ticks by trading date and computes within-day log returns; no
/// overnight return crosses a session boundary.
SessionBuild sessions_from_ticks(std::span<const PriceTick> ticks,
                                 int min_obs = 10, std::string market = "");

/// Reads a measures CSV (`date,rv[,rsv_plus,rsv_minus,bv,ret]`, `#` comment
/// lines skipped). Absent columns or empty cells leave fields unavailable.
std::vector<DailyMeasures> load_measures(std::istream& in);

}  // namespace rvol::ingest
