// rvol - realized-volatility measures, asymmetric HAR-family model fitting,
// rolling out-of-sample forecasts and forecast-accuracy comparisons.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rvol/csvio.hpp"
#include "rvol/diagnostics.hpp"
#include "rvol/errors.hpp"
#include "rvol/evaluation.hpp"
#include "rvol/forecast.hpp"
#include "rvol/ingest.hpp"
#include "rvol/kernels.hpp"
#include "rvol/measures.hpp"
#include "rvol/models.hpp"
#include "rvol/pipeline.hpp"
#include "rvol/reports.hpp"
#include "rvol/simulator.hpp"
#include "rvol/stats.hpp"

namespace {

using rvol::DataError;
using rvol::NumericError;
using rvol::UsageError;

/// JSON config support for CLI11; nested objects address subcommands
/// ({"forecast": {"window": 500}}). Command-line flags win.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override {
    return {};
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    nlohmann::json root;
    try {
      root = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw CLI::FileError(std::string("config is not valid JSON: ") + e.what());
    }
    std::vector<CLI::ConfigItem> items;
    collect(root, {}, items);
    return items;
  }

 private:
  static void collect(const nlohmann::json& node, std::vector<std::string> parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : node.items()) {
      if (value.is_object()) {
        auto nested = parents;
        nested.push_back(key);
        collect(value, nested, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_string()) {
        item.inputs = {value.get<std::string>()};
      } else if (value.is_boolean()) {
        item.inputs = {value.get<bool>() ? "true" : "false"};
      } else {
        item.inputs = {value.dump()};
      }
      items.push_back(std::move(item));
    }
  }
};

int parse_bandwidth(const std::string& text) {
  if (text == "auto" || text == "AUTO") return rvol::estimation::kAutoBandwidth;
  char* end = nullptr;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (end != text.c_str() + text.size() || text.empty() || v < 0 || v > 1000000) {
    throw UsageError("--nw-lag must be 'auto' or a nonnegative integer");
  }
  return static_cast<int>(v);
}

void write_text_file(const std::string& dir, const std::string& name,
                     const std::string& content) {
  std::filesystem::create_directories(dir);
  std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
  if (!out) throw DataError("cannot write " + name + " under '" + dir + "'");
  out << content;
}

rvol::forecast::Panel load_panel(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open forecast file '" + path + "'");
  return rvol::reports::read_forecast_csv(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"realized-volatility modeling and forecast-comparison toolkit"};
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON config file (command-line flags win)");
  app.allow_config_extras(CLI::config_extras_mode::ignore);

  std::string kernels = "auto";
  unsigned threads = 0;
  app.add_option("--kernels", kernels, "compute backend: auto, scalar or avx2")
      ->capture_default_str();
  app.add_option("--threads", threads, "worker threads (0 = hardware)")
      ->capture_default_str();

  // ---- simulate ----------------------------------------------------------
  auto* c_sim = app.add_subcommand("simulate", "generate a jump-diffusion dataset");
  rvol::sim::SimConfig sim_cfg;
  std::string sim_out, jump_sign = "both";
  bool use_sv = false;
  rvol::sim::LogOuVol sv;
  c_sim->add_option("--days", sim_cfg.days)->capture_default_str();
  c_sim->add_option("--n-per-day", sim_cfg.n_per_day, "intraday returns per day")
      ->capture_default_str();
  c_sim->add_option("--drift", sim_cfg.drift)->capture_default_str();
  c_sim->add_option("--sigma", sim_cfg.sigma, "constant daily volatility")
      ->capture_default_str();
  c_sim->add_flag("--sv", use_sv, "log-OU stochastic volatility");
  c_sim->add_option("--sv-mean", sv.mean_vol)->capture_default_str();
  c_sim->add_option("--sv-persistence", sv.persistence)->capture_default_str();
  c_sim->add_option("--sv-volvol", sv.vol_of_vol)->capture_default_str();
  c_sim->add_option("--sv-rho", sv.rho, "corr(vol shock, price shock)")
      ->capture_default_str();
  c_sim->add_option("--jump-intensity", sim_cfg.jump_intensity, "expected jumps/day")
      ->capture_default_str();
  c_sim->add_option("--jump-mean", sim_cfg.jump_mean)->capture_default_str();
  c_sim->add_option("--jump-sd", sim_cfg.jump_sd)->capture_default_str();
  c_sim->add_option("--jump-sign", jump_sign, "both, positive or negative")
      ->capture_default_str();
  c_sim->add_option("--seed", sim_cfg.seed)->capture_default_str();
  c_sim->add_option("--start-price", sim_cfg.start_price)->capture_default_str();
  c_sim->add_option("--market", sim_cfg.market)->capture_default_str();
  c_sim->add_option("--out", sim_out, "output directory")->required();

  // ---- compute-measures --------------------------------------------------
  auto* c_meas = app.add_subcommand("compute-measures",
                                    "per-day realized measures from a tick file");
  std::string meas_ticks, meas_out, meas_market = "market";
  int meas_min_obs = 10;
  c_meas->add_option("--ticks", meas_ticks, "tick CSV (timestamp,price)")->required();
  c_meas->add_option("--out", meas_out, "output directory")->required();
  c_meas->add_option("--min-obs", meas_min_obs, "drop days with fewer ticks")
      ->capture_default_str();
  c_meas->add_option("--market", meas_market)->capture_default_str();

  // ---- describe ----------------------------------------------------------
  auto* c_desc = app.add_subcommand("describe", "descriptive statistics table");
  std::string desc_measures, desc_out, desc_market = "market";
  bool desc_raw = false;
  c_desc->add_option("--measures", desc_measures, "measures CSV")->required();
  c_desc->add_option("--out", desc_out, "output directory (optional)");
  c_desc->add_flag("--no-scale", desc_raw, "disable the x1000 display scaling");
  c_desc->add_option("--market", desc_market)->capture_default_str();

  // ---- fit ---------------------------------------------------------------
  auto* c_fit = app.add_subcommand("fit", "fit the eight-model suite");
  std::string fit_measures, fit_out, fit_nw = "auto", fit_market = "market";
  c_fit->add_option("--measures", fit_measures, "measures CSV")->required();
  c_fit->add_option("--out", fit_out, "output directory (optional)");
  c_fit->add_option("--nw-lag", fit_nw, "Newey-West bandwidth: auto or a count")
      ->capture_default_str();
  c_fit->add_option("--market", fit_market)->capture_default_str();

  // ---- forecast ----------------------------------------------------------
  auto* c_fc = app.add_subcommand("forecast", "rolling out-of-sample forecasts");
  std::string fc_measures, fc_out;
  std::size_t fc_window = 1000;
  c_fc->add_option("--measures", fc_measures, "measures CSV")->required();
  c_fc->add_option("--out", fc_out, "output directory")->required();
  c_fc->add_option("--window", fc_window, "in-sample window in regression rows")
      ->capture_default_str();

  // ---- evaluate ----------------------------------------------------------
  auto* c_eval = app.add_subcommand("evaluate", "losses and DM tests on forecasts");
  std::string eval_forecasts, eval_out;
  int eval_dm_lag = 0;
  c_eval->add_option("--forecasts", eval_forecasts, "forecast CSV")->required();
  c_eval->add_option("--out", eval_out, "output directory (optional)");
  c_eval->add_option("--dm-lag", eval_dm_lag, "DM long-run variance lag")
      ->capture_default_str();

  // ---- dm-test -----------------------------------------------------------
  auto* c_dm = app.add_subcommand("dm-test", "one pairwise DM test");
  std::string dm_forecasts, dm_bench, dm_comp, dm_loss = "mae";
  int dm_lag = 0;
  c_dm->add_option("--forecasts", dm_forecasts, "forecast CSV")->required();
  c_dm->add_option("--benchmark", dm_bench)->required();
  c_dm->add_option("--comparison", dm_comp)->required();
  c_dm->add_option("--loss", dm_loss, "mse, mae, hmse or hmae")->capture_default_str();
  c_dm->add_option("--dm-lag", dm_lag)->capture_default_str();

  // ---- pipeline ----------------------------------------------------------
  auto* c_pipe = app.add_subcommand(
      "pipeline", "measures -> describe -> fit -> forecast -> evaluate");
  rvol::pipeline::Options pipe;
  std::string pipe_nw = "auto";
  bool pipe_raw = false;
  c_pipe->add_option("--ticks", pipe.ticks_path, "tick CSV");
  c_pipe->add_option("--measures", pipe.measures_path, "measures CSV");
  c_pipe->add_option("--out", pipe.out_dir, "output directory")->required();
  c_pipe->add_option("--window", pipe.window)->capture_default_str();
  c_pipe->add_option("--nw-lag", pipe_nw)->capture_default_str();
  c_pipe->add_option("--dm-lag", pipe.dm_lag)->capture_default_str();
  c_pipe->add_option("--min-obs", pipe.min_obs)->capture_default_str();
  c_pipe->add_flag("--no-scale", pipe_raw);
  c_pipe->add_option("--market", pipe.market)->capture_default_str();

  // global flags (--config, --kernels, --threads) may follow the subcommand
  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    rvol::kernels::select(kernels);

    if (*c_sim) {
      if (jump_sign == "positive") {
        sim_cfg.jump_sign = rvol::sim::JumpSign::positive_only;
      } else if (jump_sign == "negative") {
        sim_cfg.jump_sign = rvol::sim::JumpSign::negative_only;
      } else if (jump_sign != "both") {
        throw UsageError("--jump-sign must be both, positive or negative");
      }
      if (use_sv) sim_cfg.log_ou = sv;
      const auto result = rvol::sim::simulate(sim_cfg);
      const auto daily = rvol::measures::compute_all(result.dataset, threads);
      std::ostringstream ticks, meas, truth;
      rvol::sim::write_ticks_csv(ticks, result);
      rvol::measures::write_csv(meas, daily);
      rvol::sim::write_truth_csv(truth, result.truth);
      write_text_file(sim_out, "ticks.csv", ticks.str());
      write_text_file(sim_out, "measures.csv", meas.str());
      write_text_file(sim_out, "truth.csv", truth.str());
      std::cerr << "[rvol] simulated " << result.dataset.sessions.size()
                << " days (n=" << sim_cfg.n_per_day << ", seed=" << sim_cfg.seed
                << ") into " << sim_out << "\n";
      return 0;
    }

    if (*c_meas) {
      std::ifstream in(meas_ticks, std::ios::binary);
      if (!in) throw DataError("cannot open tick file '" + meas_ticks + "'");
      const auto ticks = rvol::ingest::parse_ticks(in);
      auto build = rvol::ingest::sessions_from_ticks(ticks, meas_min_obs, meas_market);
      for (const auto& day : build.dropped) {
        std::cerr << "[rvol] warning: dropped " << rvol::to_string(day)
                  << " (fewer than " << meas_min_obs << " ticks)\n";
      }
      const auto daily = rvol::measures::compute_all(build.dataset, threads);
      std::ostringstream meas, rv_csv, ln_csv;
      rvol::measures::write_csv(meas, daily);
      rvol::reports::write_plot_series(rv_csv, ln_csv, daily);
      write_text_file(meas_out, "measures.csv", meas.str());
      write_text_file(meas_out, "plot_rv.csv", rv_csv.str());
      write_text_file(meas_out, "plot_lnrv.csv", ln_csv.str());
      std::cerr << "[rvol] " << daily.size() << " days of measures written to "
                << meas_out << "\n";
      return 0;
    }

    if (*c_desc) {
      const auto measures = rvol::pipeline::load_measures_file(desc_measures);
      const auto rows =
          rvol::diagnostics::describe_measures(measures, !desc_raw, threads);
      const std::string table =
          rvol::reports::describe_table(rows, desc_market, !desc_raw);
      std::cout << table;
      if (!desc_out.empty()) {
        write_text_file(desc_out, "descriptive.txt", table);
        write_text_file(desc_out, "descriptive.json",
                        rvol::reports::describe_json(rows, desc_market, !desc_raw).dump(2) + "\n");
      }
      return 0;
    }

    if (*c_fit) {
      const auto measures = rvol::pipeline::load_measures_file(fit_measures);
      rvol::models::SuiteOptions opts;
      opts.nw_bandwidth = parse_bandwidth(fit_nw);
      opts.threads = threads;
      opts.market = fit_market;
      const auto suite = rvol::models::fit_suite(measures, opts);
      const std::string table = rvol::reports::fit_table(suite);
      std::cout << table;
      if (!fit_out.empty()) {
        write_text_file(fit_out, "fit.txt", table);
        write_text_file(fit_out, "fit.json",
                        rvol::reports::fit_json(suite).dump(2) + "\n");
      }
      return 0;
    }

    if (*c_fc) {
      const auto measures = rvol::pipeline::load_measures_file(fc_measures);
      const auto agg = rvol::features::aggregate(measures);
      std::vector<rvol::features::ModelSpec> runnable;
      for (const auto& spec : rvol::features::model_suite()) {
        if (!agg.has_bv) continue;
        if (spec.requires_semivariance() && !agg.has_semivariance) continue;
        if (spec.requires_return() && !agg.has_ret) continue;
        runnable.push_back(spec);
      }
      if (runnable.empty()) throw DataError("no model can be forecast: required columns missing");
      const auto panel =
          rvol::forecast::forecast_panel(measures, runnable, fc_window, threads);
      for (const auto& [date, reason] : panel.skipped) {
        std::cerr << "[rvol] warning: skipped forecast at " << rvol::to_string(date)
                  << ": " << reason << "\n";
      }
      std::ostringstream f_csv;
      rvol::reports::write_forecast_csv(f_csv, panel);
      write_text_file(fc_out, "forecasts.csv", f_csv.str());
      std::cerr << "[rvol] " << panel.records.at(panel.models.front()).size()
                << " forecasts per model written to " << fc_out << "\n";
      return 0;
    }

    if (*c_eval) {
      const auto panel = load_panel(eval_forecasts);
      std::vector<rvol::evaluation::LossReport> loss_reports;
      for (const auto& model : panel.models) {
        loss_reports.push_back(rvol::evaluation::losses(panel.records.at(model)));
      }
      const auto dm = rvol::evaluation::dm_matrix(panel, eval_dm_lag);
      const std::string loss_table = rvol::reports::losses_table(loss_reports);
      const std::string dm_table = rvol::reports::dm_table(dm, panel.models);
      std::cout << loss_table << "\n" << dm_table;
      if (!eval_out.empty()) {
        write_text_file(eval_out, "losses.txt", loss_table);
        write_text_file(eval_out, "losses.json",
                        rvol::reports::losses_json(loss_reports).dump(2) + "\n");
        write_text_file(eval_out, "dm.txt", dm_table);
        write_text_file(eval_out, "dm.json", rvol::reports::dm_json(dm).dump(2) + "\n");
      }
      return 0;
    }

    if (*c_dm) {
      const auto panel = load_panel(dm_forecasts);
      for (const auto& id : {dm_bench, dm_comp}) {
        if (!panel.records.contains(id)) {
          throw DataError("model '" + id + "' not present in the forecast file");
        }
      }
      const auto result = rvol::evaluation::dm_test(
          panel.records.at(dm_bench), panel.records.at(dm_comp),
          rvol::evaluation::loss_by_name(dm_loss), dm_lag);
      std::vector<rvol::evaluation::DmResult> one{result};
      std::cout << rvol::reports::dm_json(one).dump(2) << "\n";
      return 0;
    }

    if (*c_pipe) {
      pipe.nw_bandwidth = parse_bandwidth(pipe_nw);
      pipe.scale_display = !pipe_raw;
      pipe.threads = threads;
      const int files = rvol::pipeline::run_pipeline(pipe);
      std::cerr << "[rvol] pipeline wrote " << files << " files to " << pipe.out_dir
                << "\n";
      return 0;
    }

    throw UsageError("no subcommand given");
  } catch (const UsageError& e) {
    std::cerr << "error (usage): " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error (data): " << e.what() << "\n";
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "error (numeric): " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
