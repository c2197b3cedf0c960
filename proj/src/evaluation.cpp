#include "rvol/evaluation.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "rvol/errors.hpp"
#include "rvol/kernels.hpp"
#include "rvol/stats.hpp"

namespace rvol::evaluation {

const char* loss_name(LossKind k) {
  switch (k) {
    case LossKind::mse:
      return "MSE";
    case LossKind::mae:
      return "MAE";
    case LossKind::hmse:
      return "HMSE";
    default:
      return "HMAE";
  }
}

LossKind loss_by_name(std::string_view name) {
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(c));
  if (lower == "mse") return LossKind::mse;
  if (lower == "mae") return LossKind::mae;
  if (lower == "hmse") return LossKind::hmse;
  if (lower == "hmae") return LossKind::hmae;
  throw UsageError("unknown loss '" + std::string(name) +
                   "' (expected mse, mae, hmse or hmae)");
}

LossReport losses(std::span<const forecast::ForecastRecord> records) {
  if (records.empty()) throw DataError("losses: no forecast records");
  const std::size_t m = records.size();

  std::vector<double> p(m), a(m);
  for (std::size_t i = 0; i < m; ++i) {
    p[i] = records[i].predicted;
    a[i] = records[i].realized;
  }

  LossReport report;
  report.model = records.front().model;
  report.m = m;
  report.mse = kernels::sum_sq_diff(p, a) / static_cast<double>(m);
  report.mae = kernels::sum_abs_diff(p, a) / static_cast<double>(m);

  std::vector<double> ph, ah;
  ph.reserve(m);
  ah.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i] == 0.0) continue;
    ph.push_back(p[i]);
    ah.push_back(a[i]);
  }
  report.h_excluded = m - ph.size();
  if (report.h_excluded > 0 &&
      static_cast<double>(report.h_excluded) > 0.01 * static_cast<double>(m)) {
    throw DataError("losses: more than 1% of realized ln RV values are zero; "
                    "H-losses are unreliable");
  }
  if (ph.empty()) throw DataError("losses: every realized ln RV is zero");
  report.hmse = kernels::sum_sq_relerr(ph, ah) / static_cast<double>(ph.size());
  report.hmae = kernels::sum_abs_relerr(ph, ah) / static_cast<double>(ph.size());
  return report;
}

namespace {

double record_loss(const forecast::ForecastRecord& rec, LossKind kind) {
  switch (kind) {
    case LossKind::mse: {
      const double d = rec.predicted - rec.realized;
      return d * d;
    }
    case LossKind::mae:
      return std::fabs(rec.predicted - rec.realized);
    case LossKind::hmse: {
      const double r = 1.0 - rec.predicted / rec.realized;
      return r * r;
    }
    default:
      return std::fabs(1.0 - rec.predicted / rec.realized);
  }
}

bool is_h_loss(LossKind kind) {
  return kind == LossKind::hmse || kind == LossKind::hmae;
}

}  // namespace

DmResult dm_test(std::span<const forecast::ForecastRecord> benchmark,
                 std::span<const forecast::ForecastRecord> comparison,
                 LossKind kind, int lrv_lag) {
  if (benchmark.size() != comparison.size()) {
    throw DataError("dm_test: forecast series have different lengths");
  }
  if (lrv_lag < 0) throw UsageError("dm_test: negative long-run variance lag");

  std::vector<double> d;
  d.reserve(benchmark.size());
  for (std::size_t i = 0; i < benchmark.size(); ++i) {
    if (benchmark[i].target != comparison[i].target) {
      throw DataError("dm_test: unpaired forecast dates at " +
                      to_string(benchmark[i].target) + " vs " +
                      to_string(comparison[i].target));
    }
    if (benchmark[i].realized != comparison[i].realized) {
      throw DataError("dm_test: realized values disagree at " +
                      to_string(benchmark[i].target));
    }
    if (is_h_loss(kind) && benchmark[i].realized == 0.0) continue;
    d.push_back(record_loss(benchmark[i], kind) - record_loss(comparison[i], kind));
  }

  const std::size_t m = d.size();
  if (m < 30) {
    throw DataError("dm_test: needs at least 30 paired forecasts, got " +
                    std::to_string(m));
  }
  if (static_cast<std::size_t>(lrv_lag) >= m) {
    throw UsageError("dm_test: long-run variance lag must be below m");
  }

  const double mean = kernels::sum(d) / static_cast<double>(m);
  std::vector<double> centered(m);
  for (std::size_t i = 0; i < m; ++i) centered[i] = d[i] - mean;

  double lrv = kernels::active().sum_sq(centered.data(), m) / static_cast<double>(m);
  for (int l = 1; l <= lrv_lag; ++l) {
    const double w = 1.0 - static_cast<double>(l) / (static_cast<double>(lrv_lag) + 1.0);
    const double gamma = kernels::active().dot(centered.data() + l, centered.data(),
                                               m - static_cast<std::size_t>(l)) /
                         static_cast<double>(m);
    lrv += 2.0 * w * gamma;
  }

  DmResult result;
  result.benchmark = std::string(benchmark.front().model);
  result.comparison = std::string(comparison.front().model);
  result.loss = kind;
  result.m = m;
  result.lrv_lag = lrv_lag;

  if (lrv <= 0.0) {
    if (mean == 0.0) {
      throw DataError("dm_test: identical losses for " + result.benchmark + " and " +
                      result.comparison + " (statistic undefined)");
    }
    result.infinite = true;
    result.statistic = mean > 0.0 ? std::numeric_limits<double>::infinity()
                                  : -std::numeric_limits<double>::infinity();
    result.p_value = 0.0;
    return result;
  }

  result.statistic = mean / std::sqrt(lrv / static_cast<double>(m));
  result.p_value = stats::normal_two_sided_p(result.statistic);
  return result;
}

std::vector<DmResult> dm_matrix(const forecast::Panel& panel, int lrv_lag) {
  std::vector<DmResult> out;
  const auto kinds = {LossKind::mse, LossKind::mae, LossKind::hmse, LossKind::hmae};
  for (std::size_t i = 0; i < panel.models.size(); ++i) {
    for (std::size_t j = i + 1; j < panel.models.size(); ++j) {
      const auto& bench = panel.records.at(panel.models[i]);
      const auto& comp = panel.records.at(panel.models[j]);
      for (LossKind kind : kinds) {
        out.push_back(dm_test(bench, comp, kind, lrv_lag));
      }
    }
  }
  return out;
}

}  // namespace rvol::evaluation
