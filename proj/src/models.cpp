#include "rvol/models.hpp"

#include "rvol/errors.hpp"
#include "rvol/parallel.hpp"

namespace rvol::models {

estimation::FitResult fit_model(std::span<const DailyMeasures> measures,
                                const features::ModelSpec& spec, int nw_bandwidth) {
  features::RowSet rows = features::build_rows(measures, spec);
  return estimation::fit(rows.x, rows.target, rows.names, spec.id, nw_bandwidth);
}

SuiteResult fit_suite(std::span<const DailyMeasures> measures,
                      const SuiteOptions& options) {
  const auto& suite = features::model_suite();

  SuiteResult result;
  result.market = options.market;
  result.entries.reserve(suite.size());

  const features::Aggregates agg = features::aggregate(measures);
  std::vector<features::ModelSpec> runnable;
  for (const auto& spec : suite) {
    SuiteEntry entry;
    entry.spec = spec;
    if (!agg.has_bv) {
      entry.skip_reason = "bv column unavailable (jump variables undefined)";
    } else if (spec.requires_semivariance() && !agg.has_semivariance) {
      entry.skip_reason = "semivariance columns unavailable";
    } else if (spec.requires_return() && !agg.has_ret) {
      entry.skip_reason = "ret column unavailable (leverage variables undefined)";
    } else {
      runnable.push_back(spec);
    }
    result.entries.push_back(std::move(entry));
  }
  if (runnable.empty()) {
    throw DataError("no model can be fitted: required measure columns missing");
  }

  auto row_sets = features::build_common_rows(measures, runnable);
  const auto& first = row_sets.begin()->second;
  result.common_rows = first.dates.size();
  result.rejected_rows = first.rejected.size();
  if (result.common_rows < options.min_rows) {
    throw DataError("only " + std::to_string(result.common_rows) +
                    " usable rows; at least " + std::to_string(options.min_rows) +
                    " are needed for a meaningful fit");
  }

  // Index into result.entries for each runnable spec, then fit in parallel.
  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < result.entries.size(); ++i) {
    if (result.entries[i].skip_reason.empty()) slots.push_back(i);
  }
  parallel_for(slots.size(), options.threads,
               [&](std::size_t begin, std::size_t end) {
                 for (std::size_t s = begin; s < end; ++s) {
                   SuiteEntry& entry = result.entries[slots[s]];
                   const features::RowSet& rows = row_sets.at(entry.spec.id);
                   entry.fit = estimation::fit(rows.x, rows.target, rows.names,
                                               entry.spec.id, options.nw_bandwidth);
                 }
               });
  return result;
}

}  // namespace rvol::models
