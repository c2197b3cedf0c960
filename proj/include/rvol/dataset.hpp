#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "rvol/calendar.hpp"

namespace rvol {

struct PriceTick {
  DateTime timestamp;
  double price = 0.0;  // strictly positive
};

/// One trading day's ordered intraday log returns.
struct IntradaySession {
  Date date;
  std::vector<double> returns;

  std::size_t n() const { return returns.size(); }
};

struct Dataset {
  std::string market;
  std::vector<IntradaySession> sessions;  // strictly increasing by date
};

/// Per-day realized quantities. Optional fields stay empty when the source
/// (a measures CSV) did not carry the column; models that need them refuse
/// to fit. The jump components are derived so the truncation identities
/// hold by construction.
struct DailyMeasures {
  Date date;
  double rv = 0.0;
  std::optional<double> bv;
  std::optional<double> rsv_plus;
  std::optional<double> rsv_minus;
  std::optional<double> ret;  // within-day log return
  int n = 0;                  // intraday return count, 0 when unknown

  std::optional<double> jump() const {
    if (!bv) return std::nullopt;
    return std::max(rv - *bv, 0.0);
  }
  std::optional<double> jump_plus() const {
    if (!bv || !rsv_plus) return std::nullopt;
    return std::max(*rsv_plus - 0.5 * *bv, 0.0);
  }
  std::optional<double> jump_minus() const {
    if (!bv || !rsv_minus) return std::nullopt;
    return std::max(*rsv_minus - 0.5 * *bv, 0.0);
  }
};

}  // namespace rvol
