#include "rvol/diagnostics.hpp"

#include <cmath>
#include <functional>
#include <optional>

#include "rvol/errors.hpp"
#include "rvol/parallel.hpp"

namespace rvol::diagnostics {

DescriptiveRow describe(std::span<const double> series, std::string name,
                        int lb_lags) {
  const stats::Moments m = stats::moments(series);
  DescriptiveRow row;
  row.name = std::move(name);
  row.n = m.n;
  row.mean = m.mean;
  row.median = m.median;
  row.max = m.max;
  row.min = m.min;
  row.std_dev = m.std_dev;
  row.skewness = m.skewness;
  row.ex_kurtosis = m.ex_kurtosis;
  row.shape_defined = m.shape_defined;
  try {
    const stats::LjungBox lb = stats::ljung_box(series, lb_lags);
    row.q20 = lb.q;
    row.q20_p = lb.p_value;
  } catch (const std::exception&) {
    row.q_defined = false;
  }
  return row;
}

std::vector<DescriptiveRow> describe_measures(
    std::span<const DailyMeasures> measures, bool scale_display,
    unsigned threads) {
  if (measures.size() < 2) {
    throw DataError("describe needs at least two days of measures");
  }
  const double scale = scale_display ? 1000.0 : 1.0;

  bool has_sv = true, has_bv = true, has_ret = true;
  for (const auto& m : measures) {
    has_sv = has_sv && m.rsv_plus.has_value() && m.rsv_minus.has_value();
    has_bv = has_bv && m.bv.has_value();
    has_ret = has_ret && m.ret.has_value();
  }

  using Getter = std::function<std::optional<double>(const DailyMeasures&)>;
  struct Variable {
    std::string name;
    bool available;
    double scale;
    Getter get;
  };

  auto log_of = [](std::optional<double> v) -> std::optional<double> {
    if (!v || *v <= 0.0) return std::nullopt;
    return std::log(*v);
  };
  auto log1p_of = [](std::optional<double> v) -> std::optional<double> {
    if (!v) return std::nullopt;
    return std::log1p(*v);
  };

  const std::vector<Variable> variables = {
      {"RV", true, scale, [](const DailyMeasures& m) { return m.rv; }},
      {"RSV+", has_sv, scale, [](const DailyMeasures& m) { return m.rsv_plus; }},
      {"RSV-", has_sv, scale, [](const DailyMeasures& m) { return m.rsv_minus; }},
      {"J", has_bv, scale, [](const DailyMeasures& m) { return m.jump(); }},
      {"J+", has_bv && has_sv, scale,
       [](const DailyMeasures& m) { return m.jump_plus(); }},
      {"J-", has_bv && has_sv, scale,
       [](const DailyMeasures& m) { return m.jump_minus(); }},
      {"r", has_ret, 1.0, [](const DailyMeasures& m) { return m.ret; }},
      {"ln RV", true, 1.0,
       [log_of](const DailyMeasures& m) { return log_of(m.rv); }},
      {"ln RSV+", has_sv, 1.0,
       [log_of](const DailyMeasures& m) { return log_of(m.rsv_plus); }},
      {"ln RSV-", has_sv, 1.0,
       [log_of](const DailyMeasures& m) { return log_of(m.rsv_minus); }},
      {"ln(J+1)", has_bv, scale,
       [log1p_of](const DailyMeasures& m) { return log1p_of(m.jump()); }},
      {"ln(J++1)", has_bv && has_sv, scale,
       [log1p_of](const DailyMeasures& m) { return log1p_of(m.jump_plus()); }},
      {"ln(J-+1)", has_bv && has_sv, scale,
       [log1p_of](const DailyMeasures& m) { return log1p_of(m.jump_minus()); }},
      {"|r|", has_ret, 1.0,
       [](const DailyMeasures& m) -> std::optional<double> {
         if (!m.ret) return std::nullopt;
         return std::fabs(*m.ret);
       }},
      {"|r|I{r<0}", has_ret, 1.0,
       [](const DailyMeasures& m) -> std::optional<double> {
         if (!m.ret) return std::nullopt;
         return *m.ret < 0.0 ? std::fabs(*m.ret) : 0.0;
       }},
  };

  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i].available) active.push_back(i);
  }

  std::vector<DescriptiveRow> rows(active.size());
  parallel_for(active.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Variable& var = variables[active[i]];
      std::vector<double> series;
      series.reserve(measures.size());
      for (const auto& m : measures) {
        if (const auto v = var.get(m)) series.push_back(*v * var.scale);
      }
      rows[i] = describe(series, var.name);
    }
  });
  return rows;
}

}  // namespace rvol::diagnostics
