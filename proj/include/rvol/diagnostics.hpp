#pragma once

#include <span>
#include <string>
#include <vector>

#include "rvol/dataset.hpp"
#include "rvol/stats.hpp"

namespace rvol::diagnostics {

struct DescriptiveRow {
  std::string name;
  std::size_t n = 0;
  double mean = 0.0;
  double median = 0.0;
  double max = 0.0;
  double min = 0.0;
  double std_dev = 0.0;
  double skewness = 0.0;
  double ex_kurtosis = 0.0;  // kurtosis is reported as excess
  bool shape_defined = true;
  double q20 = 0.0;
  double q20_p = 1.0;
  bool q_defined = true;
};

/// Moments plus the Ljung-Box Q for one series.
DescriptiveRow describe(std::span<const double> series, std::string name,
                        int lb_lags = 20);

/**
 * Descriptive rows over the realized-measure variables: RV, RSV+/-, the
 * jump components, r, the log transforms, |r| and |r|I{r<0}. With
 * scale_display the variance-type variables and the ln(J+1) family are
 * multiplied by 1,000 (display convention; model fitting always uses raw
 * units). Log rows skip zero-volatility days.
 */
std::vector<DescriptiveRow> describe_measures(
    std::span<const DailyMeasures> measures, bool scale_display = true,
    unsigned threads = 0);

}  // namespace rvol::diagnostics
