#include "rvol/features.hpp"

#include <cmath>
#include <limits>

#include "rvol/errors.hpp"
#include "rvol/kernels.hpp"

namespace rvol::features {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kWeek = 5;
constexpr std::size_t kMonth = 22;

AggregateSeries roll(const std::vector<double>& daily) {
  const std::size_t n = daily.size();
  AggregateSeries s;
  s.daily = daily;
  s.weekly.assign(n, kNaN);
  s.monthly.assign(n, kNaN);
  for (std::size_t i = kWeek - 1; i < n; ++i) {
    s.weekly[i] = kernels::active().sum(daily.data() + i + 1 - kWeek, kWeek) /
                  static_cast<double>(kWeek);
  }
  for (std::size_t i = kMonth - 1; i < n; ++i) {
    s.monthly[i] = kernels::active().sum(daily.data() + i + 1 - kMonth, kMonth) /
                   static_cast<double>(kMonth);
  }
  return s;
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

Aggregates aggregate(std::span<const DailyMeasures> measures) {
  const std::size_t n = measures.size();
  Aggregates agg;
  agg.dates.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && !(measures[i - 1].date < measures[i].date)) {
      throw DataError("measures must be strictly increasing by date near " +
                      to_string(measures[i].date));
    }
    agg.dates.push_back(measures[i].date);
  }

  agg.has_bv = true;
  agg.has_semivariance = true;
  agg.has_ret = true;
  for (const auto& m : measures) {
    agg.has_bv = agg.has_bv && m.bv.has_value();
    agg.has_semivariance =
        agg.has_semivariance && m.rsv_plus.has_value() && m.rsv_minus.has_value();
    agg.has_ret = agg.has_ret && m.ret.has_value();
  }
  if (n == 0) agg.has_bv = agg.has_semivariance = agg.has_ret = false;

  std::vector<double> tmp(n);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = measures[i].rv;
  agg.rv = roll(tmp);

  if (agg.has_bv) {
    for (std::size_t i = 0; i < n; ++i) tmp[i] = *measures[i].jump();
    agg.jump = roll(tmp);
  }
  if (agg.has_bv && agg.has_semivariance) {
    for (std::size_t i = 0; i < n; ++i) tmp[i] = *measures[i].jump_plus();
    agg.jump_plus = roll(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = *measures[i].jump_minus();
    agg.jump_minus = roll(tmp);
  }
  if (agg.has_semivariance) {
    for (std::size_t i = 0; i < n; ++i) tmp[i] = *measures[i].rsv_plus;
    agg.rsv_plus = roll(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = *measures[i].rsv_minus;
    agg.rsv_minus = roll(tmp);
  }
  if (agg.has_ret) {
    for (std::size_t i = 0; i < n; ++i) tmp[i] = std::fabs(*measures[i].ret);
    agg.abs_ret = roll(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = *measures[i].ret;
    agg.ret = roll(tmp);
  }
  return agg;
}

std::array<double, 6> leverage_vector(const Aggregates& agg, std::size_t t) {
  if (!agg.has_ret) throw DataError("leverage variables need the daily return column");
  if (t < 1 || t > agg.size() - 1) throw DataError("leverage_vector: index out of range");
  const std::size_t s = t - 1;
  if (!std::isfinite(agg.abs_ret.monthly[s])) {
    throw DataError("leverage_vector: needs a full 22-day return history before " +
                    to_string(agg.dates[t]));
  }
  const double abs_d = agg.abs_ret.daily[s];
  const double abs_w = agg.abs_ret.weekly[s];
  const double abs_m = agg.abs_ret.monthly[s];
  // magnitudes are means of |r|; the indicators look at the signed return
  // (daily) and the signed trailing means (weekly / monthly)
  const double neg_d = agg.ret.daily[s] < 0.0 ? abs_d : 0.0;
  const double neg_w = agg.ret.weekly[s] < 0.0 ? abs_w : 0.0;
  const double neg_m = agg.ret.monthly[s] < 0.0 ? abs_m : 0.0;
  return {abs_d, abs_w, abs_m, neg_d, neg_w, neg_m};
}

std::vector<std::string> ModelSpec::coefficient_names() const {
  std::vector<std::string> names{"c"};
  const int n_alpha = semivariance_vol ? 6 : 3;
  const int n_beta = asymmetric_jumps ? 6 : 3;
  for (int i = 1; i <= n_alpha; ++i) names.push_back("alpha" + std::to_string(i));
  for (int i = 1; i <= n_beta; ++i) names.push_back("beta" + std::to_string(i));
  if (leverage) {
    for (int i = 1; i <= 6; ++i) names.push_back("delta" + std::to_string(i));
  }
  return names;
}

const std::vector<ModelSpec>& model_suite() {
  static const std::vector<ModelSpec> suite = {
      {"HAR-J", false, false, false},   {"HAR-AJ", false, true, false},
      {"HAR-J-LE", false, false, true}, {"HAR-AJ-LE", false, true, true},
      {"RSV-J", true, false, false},    {"RSV-AJ", true, true, false},
      {"RSV-J-LE", true, false, true},  {"RSV-AJ-LE", true, true, true},
  };
  return suite;
}

const ModelSpec& model_by_id(std::string_view id) {
  for (const auto& spec : model_suite()) {
    if (spec.id == id) return spec;
  }
  throw UsageError("unknown model '" + std::string(id) + "'");
}

namespace {

void check_availability(const Aggregates& agg, const ModelSpec& spec) {
  if (!agg.has_bv) {
    throw DataError(spec.id + ": jump variables need the bv column");
  }
  if (spec.requires_semivariance() && !agg.has_semivariance) {
    throw DataError(spec.id + ": semivariance columns (rsv_plus, rsv_minus) unavailable");
  }
  if (spec.requires_return() && !agg.has_ret) {
    throw DataError(spec.id + ": leverage variables need the ret column");
  }
}

/// Log positivity of the target and of the model's volatility block.
bool row_valid(const Aggregates& agg, const ModelSpec& spec, std::size_t t) {
  const std::size_t s = t - 1;
  if (!positive_finite(agg.rv.daily[t])) return false;
  if (spec.semivariance_vol) {
    return positive_finite(agg.rsv_plus.daily[s]) &&
           positive_finite(agg.rsv_plus.weekly[s]) &&
           positive_finite(agg.rsv_plus.monthly[s]) &&
           positive_finite(agg.rsv_minus.daily[s]) &&
           positive_finite(agg.rsv_minus.weekly[s]) &&
           positive_finite(agg.rsv_minus.monthly[s]);
  }
  return positive_finite(agg.rv.daily[s]) && positive_finite(agg.rv.weekly[s]) &&
         positive_finite(agg.rv.monthly[s]);
}

RowSet assemble(const Aggregates& agg, const ModelSpec& spec,
                const std::vector<std::size_t>& targets) {
  RowSet rows;
  rows.names = spec.coefficient_names();
  rows.dates.reserve(targets.size());
  rows.target.reserve(targets.size());
  rows.x = linalg::Matrix(targets.size(), spec.dimension());

  for (std::size_t r = 0; r < targets.size(); ++r) {
    const std::size_t t = targets[r];
    const std::size_t s = t - 1;
    rows.dates.push_back(agg.dates[t]);
    rows.target.push_back(std::log(agg.rv.daily[t]));

    std::size_t c = 0;
    rows.x(r, c++) = 1.0;
    if (spec.semivariance_vol) {
      rows.x(r, c++) = std::log(agg.rsv_plus.daily[s]);
      rows.x(r, c++) = std::log(agg.rsv_plus.weekly[s]);
      rows.x(r, c++) = std::log(agg.rsv_plus.monthly[s]);
      rows.x(r, c++) = std::log(agg.rsv_minus.daily[s]);
      rows.x(r, c++) = std::log(agg.rsv_minus.weekly[s]);
      rows.x(r, c++) = std::log(agg.rsv_minus.monthly[s]);
    } else {
      rows.x(r, c++) = std::log(agg.rv.daily[s]);
      rows.x(r, c++) = std::log(agg.rv.weekly[s]);
      rows.x(r, c++) = std::log(agg.rv.monthly[s]);
    }
    if (spec.asymmetric_jumps) {
      rows.x(r, c++) = std::log1p(agg.jump_plus.daily[s]);
      rows.x(r, c++) = std::log1p(agg.jump_plus.weekly[s]);
      rows.x(r, c++) = std::log1p(agg.jump_plus.monthly[s]);
      rows.x(r, c++) = std::log1p(agg.jump_minus.daily[s]);
      rows.x(r, c++) = std::log1p(agg.jump_minus.weekly[s]);
      rows.x(r, c++) = std::log1p(agg.jump_minus.monthly[s]);
    } else {
      rows.x(r, c++) = std::log1p(agg.jump.daily[s]);
      rows.x(r, c++) = std::log1p(agg.jump.weekly[s]);
      rows.x(r, c++) = std::log1p(agg.jump.monthly[s]);
    }
    if (spec.leverage) {
      const auto lev = leverage_vector(agg, t);
      for (double v : lev) rows.x(r, c++) = v;
    }
  }
  return rows;
}

void check_rejects(const RowSet& rows) {
  if (rows.candidates == 0) return;
  const double share = static_cast<double>(rows.rejected.size()) /
                       static_cast<double>(rows.candidates);
  if (share > 0.01) {
    throw DataError("rejected " + std::to_string(rows.rejected.size()) + " of " +
                    std::to_string(rows.candidates) +
                    " rows (zero volatility makes the log target undefined); "
                    "more than 1% is treated as corrupt input");
  }
}

}  // namespace

RowSet build_rows(std::span<const DailyMeasures> measures, const ModelSpec& spec) {
  if (measures.size() <= kFirstTarget) {
    throw DataError(spec.id + ": needs at least " + std::to_string(kFirstTarget + 1) +
                    " days of measures (22-day window + lag + target)");
  }
  const Aggregates agg = aggregate(measures);
  check_availability(agg, spec);

  std::vector<std::size_t> targets;
  std::vector<Date> rejected;
  for (std::size_t t = kFirstTarget; t < agg.size(); ++t) {
    if (row_valid(agg, spec, t)) {
      targets.push_back(t);
    } else {
      rejected.push_back(agg.dates[t]);
    }
  }
  RowSet rows = assemble(agg, spec, targets);
  rows.rejected = std::move(rejected);
  rows.candidates = agg.size() - kFirstTarget;
  check_rejects(rows);
  return rows;
}

std::map<std::string, RowSet> build_common_rows(
    std::span<const DailyMeasures> measures, std::span<const ModelSpec> specs) {
  if (specs.empty()) throw DataError("build_common_rows: no models given");
  if (measures.size() <= kFirstTarget) {
    throw DataError("needs at least " + std::to_string(kFirstTarget + 1) +
                    " days of measures (22-day window + lag + target)");
  }
  const Aggregates agg = aggregate(measures);
  for (const auto& spec : specs) check_availability(agg, spec);

  std::vector<std::size_t> targets;
  std::vector<Date> rejected;
  for (std::size_t t = kFirstTarget; t < agg.size(); ++t) {
    bool ok = true;
    for (const auto& spec : specs) ok = ok && row_valid(agg, spec, t);
    if (ok) {
      targets.push_back(t);
    } else {
      rejected.push_back(agg.dates[t]);
    }
  }

  std::map<std::string, RowSet> out;
  for (const auto& spec : specs) {
    RowSet rows = assemble(agg, spec, targets);
    rows.rejected = rejected;
    rows.candidates = agg.size() - kFirstTarget;
    check_rejects(rows);
    out.emplace(spec.id, std::move(rows));
  }
  return out;
}

}  // namespace rvol::features
