#include "rvol/forecast.hpp"

#include <algorithm>
#include <set>

#include "rvol/errors.hpp"
#include "rvol/kernels.hpp"
#include "rvol/parallel.hpp"

namespace rvol::forecast {

std::vector<RowPrediction> rolling_predict(const linalg::Matrix& x,
                                           std::span<const double> y,
                                           std::size_t window, unsigned threads) {
  const std::size_t rows = x.rows();
  if (window <= x.cols()) {
    throw DataError("rolling window (" + std::to_string(window) +
                    ") must exceed the parameter count (" +
                    std::to_string(x.cols()) + ")");
  }
  if (rows < window + 1) {
    throw DataError("rolling forecast needs at least window+1 usable rows, got " +
                    std::to_string(rows));
  }

  const std::size_t count = rows - window;
  std::vector<RowPrediction> out(count);
  parallel_for(count, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t first = i;              // window covers [first, first+window)
      const std::size_t target = first + window;  // predicted row
      RowPrediction& p = out[i];
      p.target_row = target;
      const linalg::Matrix xw = x.slice_rows(first, window);
      try {
        linalg::QrDecomposition qr(xw);
        const std::vector<double> coeffs =
            qr.solve(std::span<const double>(y.data() + first, window));
        const std::vector<double> xrow = x.row(target);
        p.predicted = kernels::active().dot(coeffs.data(), xrow.data(), coeffs.size());
      } catch (const NumericError& e) {
        p.ok = false;
        p.reason = e.what();
      }
    }
  });
  return out;
}

namespace {

RollingOutcome records_from_predictions(const features::RowSet& rows,
                                        const std::string& model,
                                        std::span<const RowPrediction> preds,
                                        std::size_t window) {
  RollingOutcome outcome;
  outcome.records.reserve(preds.size());
  for (const auto& p : preds) {
    if (!p.ok) {
      outcome.skipped.emplace_back(rows.dates[p.target_row], p.reason);
      continue;
    }
    ForecastRecord rec;
    rec.target = rows.dates[p.target_row];
    rec.model = model;
    rec.predicted = p.predicted;
    rec.realized = rows.target[p.target_row];
    rec.window_start = rows.dates[p.target_row - window];
    rec.window_end = rows.dates[p.target_row - 1];
    outcome.records.push_back(std::move(rec));
  }
  return outcome;
}

}  // namespace

RollingOutcome rolling_forecast(std::span<const DailyMeasures> measures,
                                const features::ModelSpec& spec,
                                std::size_t window, unsigned threads) {
  const features::RowSet rows = features::build_rows(measures, spec);
  const auto preds = rolling_predict(rows.x, rows.target, window, threads);
  return records_from_predictions(rows, spec.id, preds, window);
}

Panel forecast_panel(std::span<const DailyMeasures> measures,
                     std::span<const features::ModelSpec> specs,
                     std::size_t window, unsigned threads) {
  const auto row_sets = features::build_common_rows(measures, specs);

  Panel panel;
  std::set<Date> drop;
  std::map<std::string, RollingOutcome> outcomes;
  for (const auto& spec : specs) {
    const features::RowSet& rows = row_sets.at(spec.id);
    const auto preds = rolling_predict(rows.x, rows.target, window, threads);
    RollingOutcome outcome = records_from_predictions(rows, spec.id, preds, window);
    for (const auto& [date, reason] : outcome.skipped) {
      drop.insert(date);
      panel.skipped.emplace_back(date, spec.id + ": " + reason);
    }
    outcomes.emplace(spec.id, std::move(outcome));
  }

  for (const auto& spec : specs) {
    auto& records = outcomes.at(spec.id).records;
    std::vector<ForecastRecord> kept;
    kept.reserve(records.size());
    for (auto& rec : records) {
      if (!drop.contains(rec.target)) kept.push_back(std::move(rec));
    }
    panel.models.push_back(spec.id);
    panel.records.emplace(spec.id, std::move(kept));
  }
  return panel;
}

}  // namespace rvol::forecast
