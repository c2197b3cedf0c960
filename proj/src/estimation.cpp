#include "rvol/estimation.hpp"

#include <cmath>
#include <limits>

#include "rvol/errors.hpp"
#include "rvol/kernels.hpp"

namespace rvol::estimation {

int auto_bandwidth(std::size_t nobs) {
  return static_cast<int>(
      std::floor(4.0 * std::pow(static_cast<double>(nobs) / 100.0, 2.0 / 9.0)));
}

OlsFit ols(const linalg::Matrix& x, std::span<const double> y,
           std::span<const std::string> names) {
  const std::size_t n = x.rows();
  const std::size_t k = x.cols();
  if (y.size() != n) throw NumericError("ols: y length does not match X rows");
  if (n <= k) {
    throw NumericError("ols: nobs (" + std::to_string(n) +
                       ") must exceed parameter count (" + std::to_string(k) + ")");
  }

  linalg::QrDecomposition qr(x);
  if (!qr.full_rank()) {
    const std::size_t c = qr.weakest_column();
    const std::string label =
        c < names.size() ? names[c] : ("column " + std::to_string(c));
    throw NumericError("ols: near rank-deficient design at " + label +
                       " (condition proxy " + std::to_string(qr.condition_proxy()) +
                       " > 1e10)");
  }

  OlsFit fit;
  fit.nobs = n;
  fit.nparams = k;
  fit.coefficients = qr.solve(y);
  fit.residuals = linalg::residuals(x, y, fit.coefficients);

  const double ssr = kernels::sum_sq(fit.residuals);
  const double mean = kernels::sum(y) / static_cast<double>(n);
  std::vector<double> centered(n);
  for (std::size_t i = 0; i < n; ++i) centered[i] = y[i] - mean;
  const double sst = kernels::sum_sq(centered);
  if (sst > 0.0) {
    fit.r2 = 1.0 - ssr / sst;
    fit.adj_r2 = 1.0 - (ssr / static_cast<double>(n - k)) /
                           (sst / static_cast<double>(n - 1));
  } else {
    // constant target: the fit itself is fine, R^2 is undefined
    fit.r2 = std::numeric_limits<double>::quiet_NaN();
    fit.adj_r2 = std::numeric_limits<double>::quiet_NaN();
  }
  return fit;
}

HacCovariance newey_west_cov(const linalg::Matrix& x,
                             std::span<const double> residuals, int bandwidth) {
  const std::size_t t = x.rows();
  const std::size_t k = x.cols();
  if (residuals.size() != t) {
    throw NumericError("newey_west_cov: residual length does not match X rows");
  }
  const int lag =
      bandwidth == kAutoBandwidth ? auto_bandwidth(t) : bandwidth;
  if (lag < 0) throw NumericError("newey_west_cov: negative bandwidth");
  if (static_cast<std::size_t>(lag) >= t) {
    throw NumericError("newey_west_cov: bandwidth " + std::to_string(lag) +
                       " must be below nobs " + std::to_string(t));
  }

  // z_i = x_i .* e; then S = Z'Z plus Bartlett-weighted lag cross-products.
  linalg::Matrix z(t, k);
  for (std::size_t j = 0; j < k; ++j) {
    kernels::active().mul(x.col(j).data(), residuals.data(), z.col(j).data(), t);
  }

  linalg::Matrix s(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = kernels::active().dot(z.col(i).data(), z.col(j).data(), t);
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  for (int l = 1; l <= lag; ++l) {
    const double w = 1.0 - static_cast<double>(l) / (static_cast<double>(lag) + 1.0);
    const std::size_t len = t - static_cast<std::size_t>(l);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        // gamma_l[i][j] = sum_t z_i[t] z_j[t-l]
        const double g = kernels::active().dot(
            z.col(i).data() + l, z.col(j).data(), len);
        s(i, j) += w * g;
        s(j, i) += w * g;
      }
    }
  }

  linalg::QrDecomposition qr(x);
  const linalg::Matrix xtx_inv = qr.normal_matrix_inverse();

  // cov = (X'X)^{-1} S (X'X)^{-1}
  linalg::Matrix tmp(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      double v = 0.0;
      for (std::size_t l = 0; l < k; ++l) v += xtx_inv(i, l) * s(l, j);
      tmp(i, j) = v;
    }
  }
  HacCovariance out;
  out.cov = linalg::Matrix(k, k);
  out.bandwidth = lag;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      double v = 0.0;
      for (std::size_t l = 0; l < k; ++l) v += tmp(i, l) * xtx_inv(l, j);
      out.cov(i, j) = v;
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (out.cov(i, i) < 0.0) out.psd = false;
  }
  return out;
}

double adjusted_r2(std::span<const double> y, std::span<const double> residuals,
                   std::size_t k) {
  const std::size_t n = y.size();
  if (n <= k) throw NumericError("adjusted_r2: nobs must exceed parameter count");
  const double ssr = kernels::sum_sq(residuals);
  const double mean = kernels::sum(y) / static_cast<double>(n);
  std::vector<double> centered(n);
  for (std::size_t i = 0; i < n; ++i) centered[i] = y[i] - mean;
  const double sst = kernels::sum_sq(centered);
  if (sst <= 0.0) throw NumericError("adjusted_r2: target has zero variance");
  return 1.0 - (ssr / static_cast<double>(n - k)) / (sst / static_cast<double>(n - 1));
}

Significance significance(double t_stat) {
  const double a = std::fabs(t_stat);
  if (a >= 2.576) return Significance::p1;
  if (a >= 1.960) return Significance::p5;
  if (a >= 1.645) return Significance::p10;
  return Significance::none;
}

const char* stars(Significance s) {
  switch (s) {
    case Significance::p1:
      return "***";
    case Significance::p5:
      return "**";
    case Significance::p10:
      return "*";
    default:
      return "";
  }
}

FitResult fit(const linalg::Matrix& x, std::span<const double> y,
              std::vector<std::string> names, std::string model_id,
              int bandwidth) {
  OlsFit base = ols(x, y, names);
  HacCovariance hac = newey_west_cov(x, base.residuals, bandwidth);

  FitResult out;
  out.model = std::move(model_id);
  out.names = std::move(names);
  out.coefficients = std::move(base.coefficients);
  out.residuals = std::move(base.residuals);
  out.r2 = base.r2;
  out.adj_r2 = base.adj_r2;
  out.nobs = base.nobs;
  out.bandwidth_used = hac.bandwidth;
  out.hac_psd = hac.psd;

  const std::size_t k = x.cols();
  out.hac_se.resize(k);
  out.t_stats.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    out.hac_se[i] = std::sqrt(std::max(hac.cov(i, i), 0.0));
    out.t_stats[i] =
        out.hac_se[i] > 0.0 ? out.coefficients[i] / out.hac_se[i]
                            : std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace rvol::estimation
