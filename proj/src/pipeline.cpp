#include "rvol/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rvol/diagnostics.hpp"
#include "rvol/errors.hpp"
#include "rvol/evaluation.hpp"
#include "rvol/forecast.hpp"
#include "rvol/ingest.hpp"
#include "rvol/measures.hpp"
#include "rvol/models.hpp"
#include "rvol/reports.hpp"

namespace rvol::pipeline {

namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << content;
}

fs::path ensure_out_dir(const std::string& dir) {
  if (dir.empty()) throw UsageError("output directory is required");
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec || !fs::is_directory(p)) {
    throw DataError("output directory '" + dir + "' is not writable");
  }
  return p;
}

}  // namespace

std::vector<DailyMeasures> load_measures_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open measures file '" + path + "'");
  return ingest::load_measures(in);
}

std::vector<DailyMeasures> compute_measures_step(const Options& opts) {
  if (!opts.ticks_path.empty()) {
    std::ifstream in(opts.ticks_path, std::ios::binary);
    if (!in) throw DataError("cannot open tick file '" + opts.ticks_path + "'");
    const auto ticks = ingest::parse_ticks(in);
    auto build = ingest::sessions_from_ticks(ticks, opts.min_obs, opts.market);
    for (const auto& day : build.dropped) {
      std::cerr << "[rvol] warning: dropped " << to_string(day)
                << " (fewer than " << opts.min_obs << " ticks)\n";
    }
    return measures::compute_all(build.dataset, opts.threads);
  }
  if (!opts.measures_path.empty()) return load_measures_file(opts.measures_path);
  throw UsageError("either a tick file or a measures file is required");
}

int run_pipeline(const Options& opts) {
  const fs::path out = ensure_out_dir(opts.out_dir);
  int files = 0;

  const std::vector<DailyMeasures> measures = compute_measures_step(opts);
  if (measures.empty()) throw DataError("no usable days in the input");

  {
    std::ostringstream m_csv;
    measures::write_csv(m_csv, measures);
    write_file(out / "measures.csv", m_csv.str());
    std::ostringstream rv_csv, ln_csv;
    reports::write_plot_series(rv_csv, ln_csv, measures);
    write_file(out / "plot_rv.csv", rv_csv.str());
    write_file(out / "plot_lnrv.csv", ln_csv.str());
    files += 3;
  }

  {
    const auto rows =
        diagnostics::describe_measures(measures, opts.scale_display, opts.threads);
    write_file(out / "descriptive.txt",
               reports::describe_table(rows, opts.market, opts.scale_display));
    write_file(out / "descriptive.json",
               reports::describe_json(rows, opts.market, opts.scale_display).dump(2) + "\n");
    files += 2;
  }

  models::SuiteOptions suite_opts;
  suite_opts.nw_bandwidth = opts.nw_bandwidth;
  suite_opts.threads = opts.threads;
  suite_opts.market = opts.market;
  const auto suite = models::fit_suite(measures, suite_opts);
  write_file(out / "fit.txt", reports::fit_table(suite));
  write_file(out / "fit.json", reports::fit_json(suite).dump(2) + "\n");
  files += 2;

  std::vector<features::ModelSpec> runnable;
  for (const auto& entry : suite.entries) {
    if (entry.fit) runnable.push_back(entry.spec);
  }
  const auto panel =
      forecast::forecast_panel(measures, runnable, opts.window, opts.threads);
  for (const auto& [date, reason] : panel.skipped) {
    std::cerr << "[rvol] warning: skipped forecast at " << to_string(date) << ": "
              << reason << "\n";
  }
  {
    std::ostringstream f_csv;
    reports::write_forecast_csv(f_csv, panel);
    write_file(out / "forecasts.csv", f_csv.str());
    files += 1;
  }

  std::vector<evaluation::LossReport> loss_reports;
  for (const auto& model : panel.models) {
    loss_reports.push_back(evaluation::losses(panel.records.at(model)));
  }
  const auto dm = evaluation::dm_matrix(panel, opts.dm_lag);
  write_file(out / "losses.txt", reports::losses_table(loss_reports));
  write_file(out / "losses.json", reports::losses_json(loss_reports).dump(2) + "\n");
  write_file(out / "dm.txt", reports::dm_table(dm, panel.models));
  write_file(out / "dm.json", reports::dm_json(dm).dump(2) + "\n");
  files += 4;

  return files;
}

}  // namespace rvol::pipeline
