#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "rvol/dataset.hpp"
#include "rvol/features.hpp"

namespace rvol::sim {

enum class JumpSign { both, positive_only, negative_only };

/// Log-OU stochastic volatility: d ln(sigma) = kappa (theta - ln sigma) dt
/// + xi dB, with corr(dB, dW) = rho for a true leverage channel.
struct LogOuVol {
  double mean_vol = 0.01;      // exp(theta), daily units
  double persistence = 0.05;   // kappa per day; small kappa = persistent vol
  double vol_of_vol = 0.15;    // xi
  double rho = 0.0;
};

struct SimConfig {
  int days = 1200;
  int n_per_day = 78;
  double drift = 0.0;   // mu per day
  double sigma = 0.01;  // constant daily volatility unless log_ou is set
  std::optional<LogOuVol> log_ou;
  double jump_intensity = 0.0;  // expected jumps per day
  double jump_mean = 0.0;
  double jump_sd = 0.01;
  JumpSign jump_sign = JumpSign::both;
  std::uint64_t seed = 1;
  Date start_date{2001, 1, 1};
  std::string market = "sim";
  double start_price = 20000.0;
};

/// Exact per-day ground truth recorded alongside the simulated path.
struct DayTruth {
  Date date;
  double iv = 0.0;           // sum of step sigma^2 dt
  double jump2_plus = 0.0;   // sum kappa^2 over jumps with kappa >= 0
  double jump2_minus = 0.0;
};

struct SimResult {
  Dataset dataset;
  std::vector<DayTruth> truth;
  std::vector<std::vector<double>> prices;  // per day, n_per_day + 1 levels
};

/// Euler discretization of the jump-diffusion log price at step 1/n_per_day;
/// Poisson jump counts per day at uniform intraday positions. Fully
/// determined by the seed.
SimResult simulate(const SimConfig& config);

void write_truth_csv(std::ostream& out, std::span<const DayTruth> truth);

/// Tick file matching the ingest format; intraday timestamps are evenly
/// spaced within each date.
void write_ticks_csv(std::ostream& out, const SimResult& result);

/// Synthetic data drawn directly from one of the HAR-family equations with
/// known coefficients, for coefficient-recovery experiments. Auxiliary
/// series are iid: jumps Bernoulli(jump_prob) * |N(0, jump_scale^2)|
/// (clamped below RV so the measures reproduce them exactly), daily returns
/// N(0, ret_sd^2), semivariance share Uniform(0.35, 0.65) of RV.
struct HarDgpConfig {
  features::ModelSpec spec;
  std::vector<double> coefficients;  // intercept first, spec layout
  int days = 5000;
  double noise_sd = 0.4;
  std::uint64_t seed = 1;
  double jump_prob = 0.3;
  double jump_scale = 5e-5;
  double ret_sd = 0.01;
  int burn_in = 500;
  Date start_date{2001, 1, 1};
};

std::vector<DailyMeasures> simulate_har_dgp(const HarDgpConfig& config);

}  // namespace rvol::sim
