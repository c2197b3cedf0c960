#include "rvol/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "rvol/errors.hpp"
#include "rvol/kernels.hpp"

namespace rvol::stats {

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double normal_two_sided_p(double z) {
  return std::erfc(std::fabs(z) / std::sqrt(2.0));
}

double chi_squared_sf(double x, int dof) {
  if (dof <= 0) throw NumericError("chi-square needs positive degrees of freedom");
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * x);
}

Moments moments(std::span<const double> series) {
  if (series.size() < 2) throw DataError("moments need at least two observations");
  Moments m;
  m.n = series.size();
  const double n = static_cast<double>(m.n);
  m.mean = kernels::sum(series) / n;

  std::vector<double> sorted(series.begin(), series.end());
  std::sort(sorted.begin(), sorted.end());
  m.min = sorted.front();
  m.max = sorted.back();
  m.median = (m.n % 2 == 1) ? sorted[m.n / 2]
                            : 0.5 * (sorted[m.n / 2 - 1] + sorted[m.n / 2]);

  double m2 = 0.0, m2c = 0.0, m3 = 0.0, m3c = 0.0, m4 = 0.0, m4c = 0.0;
  auto add = [](double& s, double& c, double v) {
    const double t = s + v;
    if (std::fabs(s) >= std::fabs(v)) {
      c += (s - t) + v;
    } else {
      c += (v - t) + s;
    }
    s = t;
  };
  for (double x : series) {
    const double d = x - m.mean;
    const double d2 = d * d;
    add(m2, m2c, d2);
    add(m3, m3c, d2 * d);
    add(m4, m4c, d2 * d2);
  }
  m2 = (m2 + m2c) / n;
  m3 = (m3 + m3c) / n;
  m4 = (m4 + m4c) / n;

  m.std_dev = std::sqrt((m2 * n) / (n - 1.0));
  // constant series can leave O(ulp) dust in m2; treat that as zero variance
  const double scale = std::max(std::fabs(m.max), std::fabs(m.min));
  if (m2 <= scale * scale * 1e-24) {
    m.shape_defined = false;
  } else {
    m.skewness = m3 / std::pow(m2, 1.5);
    m.ex_kurtosis = m4 / (m2 * m2) - 3.0;
  }
  return m;
}

std::vector<double> autocorrelations(std::span<const double> series, int max_lag) {
  const std::size_t t = series.size();
  if (max_lag < 1 || t <= static_cast<std::size_t>(max_lag) + 1) {
    throw DataError("series too short for autocorrelations up to lag " +
                    std::to_string(max_lag));
  }
  const double mean = kernels::sum(series) / static_cast<double>(t);
  std::vector<double> centered(t);
  for (std::size_t i = 0; i < t; ++i) centered[i] = series[i] - mean;

  const double gamma0 =
      kernels::active().sum_sq(centered.data(), t) / static_cast<double>(t);
  double scale = 0.0;
  for (double x : series) scale = std::max(scale, std::fabs(x));
  if (gamma0 <= scale * scale * 1e-24) {
    throw NumericError("zero-variance series has no autocorrelations");
  }

  std::vector<double> rho(static_cast<std::size_t>(max_lag));
  for (int k = 1; k <= max_lag; ++k) {
    const double gk = kernels::active().dot(centered.data() + k, centered.data(),
                                            t - static_cast<std::size_t>(k)) /
                      static_cast<double>(t);
    rho[static_cast<std::size_t>(k - 1)] = gk / gamma0;
  }
  return rho;
}

LjungBox ljung_box(std::span<const double> series, int max_lag) {
  const auto rho = autocorrelations(series, max_lag);
  const double t = static_cast<double>(series.size());
  double q = 0.0;
  for (int k = 1; k <= max_lag; ++k) {
    const double r = rho[static_cast<std::size_t>(k - 1)];
    q += r * r / (t - static_cast<double>(k));
  }
  q *= t * (t + 2.0);
  return {q, chi_squared_sf(q, max_lag), max_lag};
}

}  // namespace rvol::stats
