#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rvol/dataset.hpp"
#include "rvol/linalg.hpp"

namespace rvol::features {

/// Daily value plus trailing 5- and 22-trading-day unweighted means.
/// Weekly/monthly entries are NaN until the full window exists.
struct AggregateSeries {
  std::vector<double> daily;
  std::vector<double> weekly;
  std::vector<double> monthly;
};

struct Aggregates {
  std::vector<Date> dates;
  AggregateSeries rv;
  AggregateSeries jump;
  AggregateSeries jump_plus;
  AggregateSeries jump_minus;
  AggregateSeries rsv_plus;
  AggregateSeries rsv_minus;
  AggregateSeries abs_ret;
  AggregateSeries ret;  // signed means, used only for leverage indicators
  bool has_bv = false;
  bool has_semivariance = false;
  bool has_ret = false;

  std::size_t size() const { return dates.size(); }
};

/// Trailing-window aggregation; measures must be calendar-ordered with no
/// duplicate dates. Calendar gaps are ignored (windows count trading days).
Aggregates aggregate(std::span<const DailyMeasures> measures);

/// The six return regressors for target date index t: trailing mean
/// absolute returns at daily/weekly/monthly horizons, then the same
/// magnitudes gated by the sign of the (signed) return aggregate at t-1.
std::array<double, 6> leverage_vector(const Aggregates& agg, std::size_t t);

/// One of the eight-model suite: which volatility block (RV vs split
/// semivariances), which jump block (symmetric vs signed), leverage or not.
struct ModelSpec {
  std::string id;
  bool semivariance_vol = false;
  bool asymmetric_jumps = false;
  bool leverage = false;

  std::size_t dimension() const {
    return 1 + (semivariance_vol ? 6 : 3) + (asymmetric_jumps ? 6 : 3) +
           (leverage ? 6 : 0);
  }
  bool requires_semivariance() const { return semivariance_vol || asymmetric_jumps; }
  bool requires_return() const { return leverage; }
  std::vector<std::string> coefficient_names() const;
};

/// HAR-J, HAR-AJ, HAR-J-LE, HAR-AJ-LE, RSV-J, RSV-AJ, RSV-J-LE, RSV-AJ-LE.
const std::vector<ModelSpec>& model_suite();
const ModelSpec& model_by_id(std::string_view id);

/// First usable target index: a row needs the 22-day lag window plus the
/// lag day plus the target itself, so targets start at day 24 (index 23).
inline constexpr std::size_t kFirstTarget = 23;

struct RowSet {
  std::vector<Date> dates;      // target dates
  linalg::Matrix x;             // intercept column first
  std::vector<double> target;   // ln RV_t
  std::vector<std::string> names;
  std::vector<Date> rejected;   // rows dropped for undefined logs
  std::size_t candidates = 0;   // rows attempted
};

/// Design matrix for one model. Throws DataError when a required input
/// column is unavailable or when more than 1% of candidate rows reject.
RowSet build_rows(std::span<const DailyMeasures> measures, const ModelSpec& spec);

/// Row sets for several models restricted to the dates valid for all of
/// them, so goodness-of-fit is comparable across models.
std::map<std::string, RowSet> build_common_rows(
    std::span<const DailyMeasures> measures, std::span<const ModelSpec> specs);

}  // namespace rvol::features
