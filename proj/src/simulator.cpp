#include "rvol/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "rvol/csvio.hpp"
#include "rvol/errors.hpp"
#include "rvol/kernels.hpp"

namespace rvol::sim {

namespace {

void validate(const SimConfig& c) {
  if (c.days < 1) throw UsageError("simulate: days must be positive");
  if (c.n_per_day < 2) throw UsageError("simulate: n_per_day must be at least 2");
  if (c.n_per_day > 86000) {
    throw UsageError("simulate: n_per_day must fit distinct per-second timestamps");
  }
  if (c.sigma < 0.0) throw UsageError("simulate: sigma must be nonnegative");
  if (c.jump_intensity < 0.0) throw UsageError("simulate: jump intensity must be nonnegative");
  if (c.jump_sd < 0.0) throw UsageError("simulate: jump size sd must be nonnegative");
  if (c.log_ou) {
    if (c.log_ou->mean_vol <= 0.0 || c.log_ou->vol_of_vol < 0.0 ||
        c.log_ou->persistence < 0.0 || std::fabs(c.log_ou->rho) > 1.0) {
      throw UsageError("simulate: invalid log-OU volatility parameters");
    }
  }
  if (c.start_price <= 0.0) throw UsageError("simulate: start price must be positive");
}

}  // namespace

SimResult simulate(const SimConfig& config) {
  validate(config);
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> unit_normal(0.0, 1.0);
  std::normal_distribution<double> jump_size(config.jump_mean, config.jump_sd);
  std::uniform_int_distribution<int> jump_position(0, config.n_per_day - 1);

  const int n = config.n_per_day;
  const double dt = 1.0 / static_cast<double>(n);
  const double sqrt_dt = std::sqrt(dt);

  SimResult result;
  result.dataset.market = config.market;
  result.dataset.sessions.reserve(static_cast<std::size_t>(config.days));
  result.truth.reserve(static_cast<std::size_t>(config.days));
  result.prices.reserve(static_cast<std::size_t>(config.days));

  double log_price = std::log(config.start_price);
  double log_sigma = config.log_ou ? std::log(config.log_ou->mean_vol)
                                   : std::log(std::max(config.sigma, 1e-300));
  const double rho = config.log_ou ? config.log_ou->rho : 0.0;
  const double rho_c = std::sqrt(std::max(0.0, 1.0 - rho * rho));

  Date date = config.start_date;
  for (int day = 0; day < config.days; ++day) {
    // jumps for the day: count, positions, then sizes, in a fixed draw order
    int n_jumps = 0;
    if (config.jump_intensity > 0.0) {
      std::poisson_distribution<int> jump_count(config.jump_intensity);
      n_jumps = jump_count(rng);
    }
    std::vector<double> jump_at(static_cast<std::size_t>(n), 0.0);
    DayTruth truth;
    truth.date = date;
    for (int j = 0; j < n_jumps; ++j) {
      const int pos = jump_position(rng);
      double k = jump_size(rng);
      if (config.jump_sign == JumpSign::positive_only) k = std::fabs(k);
      if (config.jump_sign == JumpSign::negative_only) k = -std::fabs(k);
      jump_at[static_cast<std::size_t>(pos)] += k;
      if (k >= 0.0) {
        truth.jump2_plus += k * k;
      } else {
        truth.jump2_minus += k * k;
      }
    }

    IntradaySession session;
    session.date = date;
    session.returns.reserve(static_cast<std::size_t>(n));
    std::vector<double> levels;
    levels.reserve(static_cast<std::size_t>(n) + 1);
    levels.push_back(std::exp(log_price));

    for (int j = 0; j < n; ++j) {
      const double sigma = config.log_ou ? std::exp(log_sigma) : config.sigma;
      const double z = unit_normal(rng);
      double step = config.drift * dt + sigma * sqrt_dt * z +
                    jump_at[static_cast<std::size_t>(j)];
      truth.iv += sigma * sigma * dt;
      log_price += step;
      session.returns.push_back(step);
      levels.push_back(std::exp(log_price));

      if (config.log_ou) {
        const double eta = rho * z + rho_c * unit_normal(rng);
        log_sigma += config.log_ou->persistence *
                         (std::log(config.log_ou->mean_vol) - log_sigma) * dt +
                     config.log_ou->vol_of_vol * sqrt_dt * eta;
      }
    }

    result.dataset.sessions.push_back(std::move(session));
    result.truth.push_back(truth);
    result.prices.push_back(std::move(levels));
    date = next_day(date);
  }
  return result;
}

void write_truth_csv(std::ostream& out, std::span<const DayTruth> truth) {
  out << "# units: iv and squared jumps in squared daily log returns (raw)\n";
  out << "date,iv,jump2_plus,jump2_minus\n";
  for (const auto& t : truth) {
    out << to_string(t.date) << ',' << csvio::format_full(t.iv) << ','
        << csvio::format_full(t.jump2_plus) << ','
        << csvio::format_full(t.jump2_minus) << '\n';
  }
}

void write_ticks_csv(std::ostream& out, const SimResult& result) {
  out << "# units: price in index points, timestamps exchange-local\n";
  out << "timestamp,price\n";
  for (std::size_t d = 0; d < result.prices.size(); ++d) {
    const auto& levels = result.prices[d];
    const Date date = result.dataset.sessions[d].date;
    const int spacing =
        std::max(1, 86400 / (static_cast<int>(levels.size()) + 1));
    for (std::size_t i = 0; i < levels.size(); ++i) {
      const int sec = static_cast<int>(i) * spacing;
      const DateTime ts{date, sec / 3600, (sec / 60) % 60, sec % 60};
      out << to_string(ts) << ',' << csvio::format_full(levels[i]) << '\n';
    }
  }
}

std::vector<DailyMeasures> simulate_har_dgp(const HarDgpConfig& config) {
  const features::ModelSpec& spec = config.spec;
  if (config.coefficients.size() != spec.dimension()) {
    throw UsageError("simulate_har_dgp: expected " + std::to_string(spec.dimension()) +
                     " coefficients for " + spec.id);
  }
  if (config.days < 1) throw UsageError("simulate_har_dgp: days must be positive");

  const std::size_t n_alpha = spec.semivariance_vol ? 6 : 3;
  double alpha_sum = 0.0;
  for (std::size_t i = 0; i < n_alpha; ++i) alpha_sum += config.coefficients[1 + i];
  if (alpha_sum >= 1.0) {
    throw NumericError("simulate_har_dgp: volatility coefficients sum to " +
                       std::to_string(alpha_sum) + " >= 1 (explosive recursion)");
  }

  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> unit_normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  const int seed_days = 22;
  const int burn_in = std::max(config.burn_in, 30);
  const std::size_t total =
      static_cast<std::size_t>(burn_in) + static_cast<std::size_t>(config.days);

  // level histories feeding the rolling windows
  std::vector<double> rv, jump, jump_plus, jump_minus, rsv_plus, rsv_minus,
      abs_ret, ret;
  const double mean_lnrv = config.coefficients[0] / (1.0 - alpha_sum);
  const double rv0 = std::exp(std::clamp(mean_lnrv, -40.0, 10.0));
  for (int i = 0; i < seed_days; ++i) {
    rv.push_back(rv0);
    jump.push_back(0.0);
    jump_plus.push_back(0.0);
    jump_minus.push_back(0.0);
    rsv_plus.push_back(0.5 * rv0);
    rsv_minus.push_back(0.5 * rv0);
    abs_ret.push_back(0.0);
    ret.push_back(0.0);
  }

  auto trailing_mean = [](const std::vector<double>& v, std::size_t lag_end,
                          std::size_t width) {
    return kernels::active().sum(v.data() + lag_end + 1 - width, width) /
           static_cast<double>(width);
  };

  std::vector<DailyMeasures> out;
  Date date = config.start_date;
  for (std::size_t t = static_cast<std::size_t>(seed_days); t < total + seed_days; ++t) {
    const std::size_t s = t - 1;  // lag day index

    std::vector<double> row;
    row.reserve(spec.dimension());
    row.push_back(1.0);
    if (spec.semivariance_vol) {
      row.push_back(std::log(rsv_plus[s]));
      row.push_back(std::log(trailing_mean(rsv_plus, s, 5)));
      row.push_back(std::log(trailing_mean(rsv_plus, s, 22)));
      row.push_back(std::log(rsv_minus[s]));
      row.push_back(std::log(trailing_mean(rsv_minus, s, 5)));
      row.push_back(std::log(trailing_mean(rsv_minus, s, 22)));
    } else {
      row.push_back(std::log(rv[s]));
      row.push_back(std::log(trailing_mean(rv, s, 5)));
      row.push_back(std::log(trailing_mean(rv, s, 22)));
    }
    if (spec.asymmetric_jumps) {
      row.push_back(std::log1p(jump_plus[s]));
      row.push_back(std::log1p(trailing_mean(jump_plus, s, 5)));
      row.push_back(std::log1p(trailing_mean(jump_plus, s, 22)));
      row.push_back(std::log1p(jump_minus[s]));
      row.push_back(std::log1p(trailing_mean(jump_minus, s, 5)));
      row.push_back(std::log1p(trailing_mean(jump_minus, s, 22)));
    } else {
      row.push_back(std::log1p(jump[s]));
      row.push_back(std::log1p(trailing_mean(jump, s, 5)));
      row.push_back(std::log1p(trailing_mean(jump, s, 22)));
    }
    if (spec.leverage) {
      const double abs_d = abs_ret[s];
      const double abs_w = trailing_mean(abs_ret, s, 5);
      const double abs_m = trailing_mean(abs_ret, s, 22);
      row.push_back(abs_d);
      row.push_back(abs_w);
      row.push_back(abs_m);
      row.push_back(ret[s] < 0.0 ? abs_d : 0.0);
      row.push_back(trailing_mean(ret, s, 5) < 0.0 ? abs_w : 0.0);
      row.push_back(trailing_mean(ret, s, 22) < 0.0 ? abs_m : 0.0);
    }

    const double lnrv = kernels::active().dot(config.coefficients.data(), row.data(),
                                              row.size()) +
                        config.noise_sd * unit_normal(rng);
    if (!std::isfinite(lnrv) || std::fabs(lnrv) > 300.0) {
      throw NumericError("simulate_har_dgp: recursion diverged (|ln RV| > 300)");
    }
    const double rv_t = std::exp(lnrv);

    double j_t = 0.0;
    if (uniform(rng) < config.jump_prob) {
      j_t = std::fabs(config.jump_scale * unit_normal(rng));
    }
    j_t = std::min(j_t, 0.99 * rv_t);
    const double bv_t = rv_t - j_t;
    const double share = 0.35 + 0.3 * uniform(rng);
    const double rsvp_t = share * rv_t;
    const double rsvm_t = rv_t - rsvp_t;
    const double ret_t = config.ret_sd * unit_normal(rng);

    rv.push_back(rv_t);
    jump.push_back(j_t);
    jump_plus.push_back(std::max(rsvp_t - 0.5 * bv_t, 0.0));
    jump_minus.push_back(std::max(rsvm_t - 0.5 * bv_t, 0.0));
    rsv_plus.push_back(rsvp_t);
    rsv_minus.push_back(rsvm_t);
    abs_ret.push_back(std::fabs(ret_t));
    ret.push_back(ret_t);

    if (t >= static_cast<std::size_t>(seed_days + burn_in)) {
      DailyMeasures m;
      m.date = date;
      m.rv = rv_t;
      m.bv = bv_t;
      m.rsv_plus = rsvp_t;
      m.rsv_minus = rsvm_t;
      m.ret = ret_t;
      m.n = 0;
      out.push_back(m);
      date = next_day(date);
    }
  }
  return out;
}

}  // namespace rvol::sim
