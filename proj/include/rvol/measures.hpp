#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "rvol/dataset.hpp"
#include "rvol/kernels.hpp"

namespace rvol::measures {

/// Sum of squared intraday returns.
double realized_volatility(std::span<const double> returns);

/// (2/pi) * sum_{j>=2} |r_j||r_{j-1}|; needs at least two returns.
double bipower_variation(std::span<const double> returns);

/// max(rv - bv, 0).
double jump_component(double rv, double bv);

/// Squared returns split by sign; r = 0 counts toward the plus side.
/// plus + minus equals realized_volatility up to summation-order rounding.
kernels::SignSplit semivariances(std::span<const double> returns);

/// (max(rsv_plus - bv/2, 0), max(rsv_minus - bv/2, 0)).
std::pair<double, double> signed_jumps(double rsv_plus, double rsv_minus,
                                       double bv);

/// All per-day quantities for one session (needs n >= 2).
DailyMeasures compute_daily(const IntradaySession& session);

/// compute_daily across a dataset, parallel over days.
std::vector<DailyMeasures> compute_all(const Dataset& dataset,
                                       unsigned threads = 0);

/// Writer mirroring ingest::load_measures; values at 17 significant digits
/// so a write/load round trip reproduces the doubles exactly.
void write_csv(std::ostream& out, std::span<const DailyMeasures> measures);

}  // namespace rvol::measures
