#include "rvol/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "rvol/csvio.hpp"
#include "rvol/errors.hpp"

namespace rvol::reports {

namespace {

std::string num(double v) {
  if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string pval(double p) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", p);
  return buf;
}

std::string starred(double value, double t_stat) {
  return num(value) + estimation::stars(estimation::significance(t_stat));
}

/// Left-justified plain-text table.
std::string render(const std::vector<std::vector<std::string>>& grid) {
  std::vector<std::size_t> widths;
  for (const auto& row : grid) {
    if (row.size() > widths.size()) widths.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  std::string out;
  for (const auto& row : grid) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out += row[c];
      if (c + 1 < row.size()) {
        out.append(widths[c] - row[c].size() + 2, ' ');
      }
    }
    out += '\n';
  }
  return out;
}

const std::vector<std::string>& canonical_coefficients() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v{"c"};
    for (int i = 1; i <= 6; ++i) v.push_back("alpha" + std::to_string(i));
    for (int i = 1; i <= 6; ++i) v.push_back("beta" + std::to_string(i));
    for (int i = 1; i <= 6; ++i) v.push_back("delta" + std::to_string(i));
    return v;
  }();
  return names;
}

}  // namespace

std::string fit_table(const models::SuiteResult& suite) {
  std::vector<const models::SuiteEntry*> fitted;
  for (const auto& entry : suite.entries) {
    if (entry.fit) fitted.push_back(&entry);
  }

  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> header{"coefficient"};
  for (const auto* e : fitted) header.push_back(e->spec.id);
  grid.push_back(header);

  for (const auto& name : canonical_coefficients()) {
    std::vector<std::string> row{name};
    bool any = false;
    for (const auto* e : fitted) {
      const auto& fit = *e->fit;
      const auto it = std::find(fit.names.begin(), fit.names.end(), name);
      if (it == fit.names.end()) {
        row.push_back("");
        continue;
      }
      const std::size_t i = static_cast<std::size_t>(it - fit.names.begin());
      row.push_back(starred(fit.coefficients[i], fit.t_stats[i]));
      any = true;
    }
    if (any) grid.push_back(std::move(row));
  }

  std::vector<std::string> r2_row{"Adj.R2"};
  std::vector<std::string> nobs_row{"nobs"};
  std::vector<std::string> lag_row{"NW lag"};
  for (const auto* e : fitted) {
    r2_row.push_back(num(e->fit->adj_r2));
    nobs_row.push_back(std::to_string(e->fit->nobs));
    lag_row.push_back(std::to_string(e->fit->bandwidth_used));
  }
  grid.push_back(r2_row);
  grid.push_back(nobs_row);
  grid.push_back(lag_row);

  std::string out = "Estimation results: " + suite.market + "\n";
  out += "target ln RV_t; HAC (Newey-West, Bartlett) t-tests; *, **, *** = 10%, 5%, 1%\n";
  out += "common row set: " + std::to_string(suite.common_rows) + " rows, " +
         std::to_string(suite.rejected_rows) + " rejected\n\n";
  out += render(grid);
  for (const auto& entry : suite.entries) {
    if (!entry.fit) {
      out += "skipped " + entry.spec.id + ": " + entry.skip_reason + "\n";
    }
  }
  return out;
}

json fit_json(const models::SuiteResult& suite) {
  json root;
  root["units"] = "target ln RV in natural logs of raw squared-return units";
  root["market"] = suite.market;
  root["common_rows"] = suite.common_rows;
  root["rejected_rows"] = suite.rejected_rows;
  root["models"] = json::array();
  for (const auto& entry : suite.entries) {
    json m;
    m["id"] = entry.spec.id;
    if (!entry.fit) {
      m["skipped"] = entry.skip_reason;
      root["models"].push_back(std::move(m));
      continue;
    }
    const auto& fit = *entry.fit;
    m["nobs"] = fit.nobs;
    m["nw_bandwidth"] = fit.bandwidth_used;
    m["r2"] = fit.r2;
    m["adj_r2"] = fit.adj_r2;
    m["hac_psd"] = fit.hac_psd;
    m["coefficients"] = json::array();
    for (std::size_t i = 0; i < fit.names.size(); ++i) {
      json c;
      c["name"] = fit.names[i];
      c["estimate"] = fit.coefficients[i];
      c["hac_se"] = fit.hac_se[i];
      c["t"] = fit.t_stats[i];
      c["stars"] = estimation::stars(estimation::significance(fit.t_stats[i]));
      m["coefficients"].push_back(std::move(c));
    }
    root["models"].push_back(std::move(m));
  }
  return root;
}

std::string describe_table(std::span<const diagnostics::DescriptiveRow> rows,
                           const std::string& market, bool scaled) {
  std::vector<std::vector<std::string>> grid;
  grid.push_back({"variable", "mean", "median", "max", "min", "std.dev",
                  "skewness", "ex.kurtosis", "Q(20)", "p"});
  for (const auto& r : rows) {
    std::vector<std::string> row{r.name, num(r.mean), num(r.median), num(r.max),
                                 num(r.min), num(r.std_dev)};
    if (r.shape_defined) {
      row.push_back(num(r.skewness));
      row.push_back(num(r.ex_kurtosis));
    } else {
      row.push_back("-");
      row.push_back("-");
    }
    if (r.q_defined) {
      row.push_back(num(r.q20) +
                    (r.q20_p <= 0.01 ? "***" : (r.q20_p <= 0.05 ? "**" : (r.q20_p <= 0.10 ? "*" : ""))));
      row.push_back(pval(r.q20_p));
    } else {
      row.push_back("-");
      row.push_back("-");
    }
    grid.push_back(std::move(row));
  }
  std::string out = "Descriptive statistics: " + market + "\n";
  out += scaled ? "variance variables and the ln(J+1) family multiplied by 1,000 "
                  "(display only; estimation uses raw units)\n"
                : "raw units (no display scaling)\n";
  out += "kurtosis reported as excess; Q(20) = Ljung-Box up to lag 20; *, **, *** = "
         "10%, 5%, 1%\n\n";
  out += render(grid);
  return out;
}

json describe_json(std::span<const diagnostics::DescriptiveRow> rows,
                   const std::string& market, bool scaled) {
  json root;
  root["units"] = scaled ? "variance variables and the ln(J+1) family x1000, "
                           "returns and log levels raw"
                         : "raw squared-return units throughout";
  root["market"] = market;
  root["display_scaling_x1000"] = scaled;
  root["kurtosis_convention"] = "excess";
  root["variables"] = json::array();
  for (const auto& r : rows) {
    json v;
    v["name"] = r.name;
    v["n"] = r.n;
    v["mean"] = r.mean;
    v["median"] = r.median;
    v["max"] = r.max;
    v["min"] = r.min;
    v["std_dev"] = r.std_dev;
    if (r.shape_defined) {
      v["skewness"] = r.skewness;
      v["ex_kurtosis"] = r.ex_kurtosis;
    }
    if (r.q_defined) {
      v["q20"] = r.q20;
      v["q20_p"] = r.q20_p;
    }
    root["variables"].push_back(std::move(v));
  }
  return root;
}

std::string losses_table(std::span<const evaluation::LossReport> reports) {
  std::vector<std::vector<std::string>> grid;
  grid.push_back({"model", "MSE", "MAE", "HMSE", "HMAE", "m"});
  for (const auto& r : reports) {
    grid.push_back({r.model, num(r.mse), num(r.mae), num(r.hmse), num(r.hmae),
                    std::to_string(r.m)});
  }
  std::string out = "Out-of-sample losses (ln RV units)\n\n";
  out += render(grid);
  return out;
}

json losses_json(std::span<const evaluation::LossReport> reports) {
  json root;
  root["units"] = "losses on predicted vs realized ln RV";
  root["models"] = json::array();
  for (const auto& r : reports) {
    json v;
    v["model"] = r.model;
    v["mse"] = r.mse;
    v["mae"] = r.mae;
    v["hmse"] = r.hmse;
    v["hmae"] = r.hmae;
    v["m"] = r.m;
    v["h_excluded"] = r.h_excluded;
    root["models"].push_back(std::move(v));
  }
  return root;
}

std::string dm_table(std::span<const evaluation::DmResult> results,
                     std::span<const std::string> models) {
  // cell lookup: benchmark -> loss -> comparison
  std::map<std::string, std::map<std::string, std::map<std::string, std::string>>> cells;
  for (const auto& r : results) {
    std::string cell =
        r.infinite ? (r.statistic > 0 ? "+inf***" : "-inf***")
                   : starred(r.statistic, r.statistic);
    cells[r.benchmark][evaluation::loss_name(r.loss)][r.comparison] = std::move(cell);
  }

  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> header{"benchmark", "loss"};
  for (std::size_t j = 1; j < models.size(); ++j) header.push_back(models[j]);
  grid.push_back(std::move(header));

  const char* kinds[] = {"MSE", "MAE", "HMSE", "HMAE"};
  for (std::size_t i = 0; i + 1 < models.size(); ++i) {
    for (std::size_t k = 0; k < 4; ++k) {
      std::vector<std::string> row;
      row.push_back(k == 0 ? models[i] : "");
      row.push_back(kinds[k]);
      for (std::size_t j = 1; j < models.size(); ++j) {
        if (j <= i) {
          row.push_back("");
          continue;
        }
        const auto& per_loss = cells[models[i]][kinds[k]];
        const auto it = per_loss.find(models[j]);
        row.push_back(it == per_loss.end() ? "" : it->second);
      }
      grid.push_back(std::move(row));
    }
  }

  std::string out = "Diebold-Mariano tests (positive: comparison model more accurate)\n";
  out += "*, **, *** = 10%, 5%, 1% two-sided normal\n\n";
  out += render(grid);
  return out;
}

json dm_json(std::span<const evaluation::DmResult> results) {
  json root;
  root["units"] = "asymptotically N(0,1) statistics on ln RV loss differentials; "
                  "positive favors the comparison model";
  root["cells"] = json::array();
  for (const auto& r : results) {
    json v;
    v["benchmark"] = r.benchmark;
    v["comparison"] = r.comparison;
    v["loss"] = evaluation::loss_name(r.loss);
    if (r.infinite) {
      v["statistic"] = r.statistic > 0 ? "+inf" : "-inf";
    } else {
      v["statistic"] = r.statistic;
    }
    v["p_value"] = r.p_value;
    v["m"] = r.m;
    v["lrv_lag"] = r.lrv_lag;
    v["stars"] = r.infinite
                     ? "***"
                     : estimation::stars(estimation::significance(r.statistic));
    root["cells"].push_back(std::move(v));
  }
  return root;
}

void write_forecast_csv(std::ostream& out, const forecast::Panel& panel) {
  out << "# units: predicted and realized in ln RV (natural log of raw RV)\n";
  out << "date,model,predicted_lnrv,realized_lnrv\n";
  if (panel.models.empty()) return;
  const std::size_t rows = panel.records.at(panel.models.front()).size();
  for (std::size_t i = 0; i < rows; ++i) {
    for (const auto& model : panel.models) {
      const auto& rec = panel.records.at(model)[i];
      out << to_string(rec.target) << ',' << model << ','
          << csvio::format_full(rec.predicted) << ','
          << csvio::format_full(rec.realized) << '\n';
    }
  }
}

forecast::Panel read_forecast_csv(std::istream& in) {
  forecast::Panel panel;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = csvio::trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!header_seen) {
      if (t != "date,model,predicted_lnrv,realized_lnrv") {
        throw DataError("line " + std::to_string(line_no) +
                        ": expected forecast header "
                        "'date,model,predicted_lnrv,realized_lnrv'");
      }
      header_seen = true;
      continue;
    }
    const auto fields = csvio::split(t);
    if (fields.size() != 4) {
      throw DataError("line " + std::to_string(line_no) + ": expected 4 fields");
    }
    forecast::ForecastRecord rec;
    try {
      rec.target = parse_date(csvio::trim(fields[0]));
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    }
    rec.model = csvio::trim(fields[1]);
    rec.predicted = csvio::parse_number(fields[2], "predicted_lnrv", line_no);
    rec.realized = csvio::parse_number(fields[3], "realized_lnrv", line_no);
    if (!panel.records.contains(rec.model)) panel.models.push_back(rec.model);
    panel.records[rec.model].push_back(std::move(rec));
  }
  if (!header_seen) throw DataError("empty forecast file");
  return panel;
}

void write_plot_series(std::ostream& rv_out, std::ostream& ln_out,
                       std::span<const DailyMeasures> measures) {
  rv_out << "# units: rv in squared daily log returns (raw, not x1000)\n";
  rv_out << "date,rv\n";
  ln_out << "# units: ln_rv = natural log of raw rv; zero-RV days omitted\n";
  ln_out << "date,ln_rv\n";
  for (const auto& m : measures) {
    rv_out << to_string(m.date) << ',' << csvio::format_full(m.rv) << '\n';
    if (m.rv > 0.0) {
      ln_out << to_string(m.date) << ',' << csvio::format_full(std::log(m.rv)) << '\n';
    }
  }
}

}  // namespace rvol::reports
