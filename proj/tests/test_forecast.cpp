#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "rvol/errors.hpp"
#include "rvol/forecast.hpp"
#include "rvol/measures.hpp"
#include "rvol/simulator.hpp"

using namespace rvol;

namespace {

std::vector<DailyMeasures> dgp_measures(int days, std::uint64_t seed) {
  sim::HarDgpConfig cfg;
  cfg.spec = features::model_by_id("HAR-J");
  cfg.coefficients = {-0.9, 0.35, 0.3, 0.2, -20.0, 10.0, 5.0};
  cfg.days = days;
  cfg.seed = seed;
  return sim::simulate_har_dgp(cfg);
}

// hand-rolled window-by-window refit with 2x2 normal equations
std::vector<double> toy_oracle(const linalg::Matrix& x, const std::vector<double>& y,
                               std::size_t window) {
  std::vector<double> preds;
  for (std::size_t o = window - 1; o + 1 < x.rows(); ++o) {
    const std::size_t first = o + 1 - window;
    double sxx = 0, sx = 0, sy = 0, sxy = 0, n = 0;
    for (std::size_t i = first; i <= o; ++i) {
      const double xi = x(i, 1);
      sxx += xi * xi;
      sx += xi;
      sy += y[i];
      sxy += xi * y[i];
      n += 1.0;
    }
    const double det = n * sxx - sx * sx;
    const double b1 = (n * sxy - sx * sy) / det;
    const double b0 = (sy - b1 * sx) / n;
    preds.push_back(b0 + b1 * x(o + 1, 1));
  }
  return preds;
}

}  // namespace

TEST_CASE("window 3 on a 6-row toy set matches the naive refit oracle") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal(0.0, 1.0);
  linalg::Matrix x(6, 2);
  std::vector<double> y(6);
  for (std::size_t i = 0; i < 6; ++i) {
    x(i, 0) = 1.0;
    x(i, 1) = normal(rng);
    y[i] = 0.5 + 0.8 * x(i, 1) + 0.1 * normal(rng);
  }
  const auto preds = forecast::rolling_predict(x, y, 3);
  const auto oracle = toy_oracle(x, y, 3);
  REQUIRE(preds.size() == 3);
  REQUIRE(oracle.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    REQUIRE(preds[i].ok);
    CHECK(preds[i].predicted == doctest::Approx(oracle[i]).epsilon(1e-10));
    CHECK(preds[i].target_row == 3 + i);
  }
}

TEST_CASE("constant target forecasts the constant") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal(0.0, 1.0);
  linalg::Matrix x(20, 2);
  std::vector<double> y(20, -8.25);
  for (std::size_t i = 0; i < 20; ++i) {
    x(i, 0) = 1.0;
    x(i, 1) = normal(rng);
  }
  for (const auto& p : forecast::rolling_predict(x, y, 10)) {
    REQUIRE(p.ok);
    CHECK(p.predicted == doctest::Approx(-8.25).epsilon(1e-10));
  }
}

TEST_CASE("1005 usable rows give exactly 5 forecasts") {
  const auto m = dgp_measures(1028, 41);
  REQUIRE(m.size() == 1028);
  const auto outcome =
      forecast::rolling_forecast(m, features::model_by_id("HAR-J"), 1000);
  CHECK(outcome.records.size() == 5);
  CHECK(outcome.skipped.empty());
}

TEST_CASE("records carry window bounds and the realized target") {
  const auto m = dgp_measures(1050, 43);
  const auto outcome =
      forecast::rolling_forecast(m, features::model_by_id("HAR-J"), 1000);
  const auto rows = features::build_rows(m, features::model_by_id("HAR-J"));
  REQUIRE(outcome.records.size() == rows.dates.size() - 1000);
  for (std::size_t i = 0; i < outcome.records.size(); ++i) {
    const auto& rec = outcome.records[i];
    const std::size_t target_row = 1000 + i;
    CHECK(rec.target == rows.dates[target_row]);
    CHECK(rec.window_end == rows.dates[target_row - 1]);
    CHECK(rec.window_start == rows.dates[target_row - 1000]);
    CHECK(rec.realized == rows.target[target_row]);
    CHECK(rec.model == "HAR-J");
  }
}

TEST_CASE("insufficient rows for the window is an error") {
  const auto m = dgp_measures(500, 47);
  CHECK_THROWS_AS(forecast::rolling_forecast(m, features::model_by_id("HAR-J"), 1000),
                  DataError);
  // window must also exceed the parameter count
  linalg::Matrix x(10, 4);
  std::vector<double> y(10, 0.0);
  CHECK_THROWS_AS(forecast::rolling_predict(x, y, 4), DataError);
}

TEST_CASE("no look-ahead: only the window and the target row matter") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t n = 40;
  linalg::Matrix x(n, 2);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x(i, 0) = 1.0;
    x(i, 1) = normal(rng);
    y[i] = 1.0 - 0.5 * x(i, 1) + 0.2 * normal(rng);
  }
  const std::size_t window = 10;
  const auto base = forecast::rolling_predict(x, y, window);

  // perturb data strictly after record i's target row: record unchanged
  {
    auto y2 = y;
    linalg::Matrix x2 = x;
    for (std::size_t i = 15; i < n; ++i) {
      y2[i] += 100.0;
      x2(i, 1) -= 42.0;
    }
    const auto bumped = forecast::rolling_predict(x2, y2, window);
    // record 0 targets row 10, its window is rows 0..9: untouched
    CHECK(bumped[0].predicted == base[0].predicted);
    // later records change
    CHECK(bumped[7].predicted != base[7].predicted);
  }

  // perturb one day inside the window: the fit (and prediction) changes
  {
    auto y2 = y;
    y2[5] += 3.0;
    const auto bumped = forecast::rolling_predict(x, y2, window);
    CHECK(bumped[0].predicted != base[0].predicted);
  }

  // replays are bit-identical
  const auto again = forecast::rolling_predict(x, y, window, 2);
  for (std::size_t i = 0; i < base.size(); ++i) {
    CHECK(again[i].predicted == base[i].predicted);
  }
}

TEST_CASE("forecast panel keeps every model on the same dates") {
  sim::SimConfig cfg;
  cfg.days = 80;
  cfg.n_per_day = 48;
  cfg.log_ou = sim::LogOuVol{0.01, 4.0, 0.6, -0.4};
  cfg.jump_intensity = 0.3;
  cfg.jump_sd = 0.004;
  cfg.seed = 53;
  const auto result = sim::simulate(cfg);
  const auto m = measures::compute_all(result.dataset);

  const auto& suite = features::model_suite();
  const auto panel = forecast::forecast_panel(m, suite, 30);
  REQUIRE(panel.models.size() == 8);
  const auto& ref = panel.records.at("HAR-J");
  REQUIRE_FALSE(ref.empty());
  for (const auto& model : panel.models) {
    const auto& records = panel.records.at(model);
    REQUIRE(records.size() == ref.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
      CHECK(records[i].target == ref[i].target);
      CHECK(records[i].realized == ref[i].realized);
    }
  }
}
