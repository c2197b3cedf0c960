#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "rvol/diagnostics.hpp"
#include "rvol/evaluation.hpp"
#include "rvol/forecast.hpp"
#include "rvol/models.hpp"

namespace rvol::reports {

using json = nlohmann::ordered_json;

std::string fit_table(const models::SuiteResult& suite);
json fit_json(const models::SuiteResult& suite);

std::string describe_table(std::span<const diagnostics::DescriptiveRow> rows,
                           const std::string& market, bool scaled);
json describe_json(std::span<const diagnostics::DescriptiveRow> rows,
                   const std::string& market, bool scaled);

std::string losses_table(std::span<const evaluation::LossReport> reports);
json losses_json(std::span<const evaluation::LossReport> reports);

std::string dm_table(std::span<const evaluation::DmResult> results,
                     std::span<const std::string> models);
json dm_json(std::span<const evaluation::DmResult> results);

/// `date,model,predicted_lnrv,realized_lnrv`, ordered by date then model.
void write_forecast_csv(std::ostream& out, const forecast::Panel& panel);
forecast::Panel read_forecast_csv(std::istream& in);

/// The two plot-ready series behind the RV / ln RV time-series figures.
/// The ln file carries only positive-RV days.
void write_plot_series(std::ostream& rv_out, std::ostream& ln_out,
                       std::span<const DailyMeasures> measures);

}  // namespace rvol::reports
