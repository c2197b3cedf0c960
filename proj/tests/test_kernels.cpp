#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "rvol/errors.hpp"
#include "rvol/kernels.hpp"

using rvol::kernels::Backend;

namespace {

// independent compensated-sum oracle over already-rounded double terms
double compensated_sum(const std::vector<double>& terms) {
  double s = 0.0, c = 0.0;
  for (double v : terms) {
    const double t = s + v;
    if (std::fabs(s) >= std::fabs(v)) {
      c += (s - t) + v;
    } else {
      c += (v - t) + s;
    }
    s = t;
  }
  return s + c;
}

std::vector<double> random_vector(std::size_t n, std::uint64_t seed,
                                  double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = scale * normal(rng);
  return v;
}

double rel_diff(double a, double b) {
  const double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
  return std::fabs(a - b) / scale;
}

}  // namespace

TEST_CASE("scalar reductions match a compensated oracle") {
  const Backend& s = rvol::kernels::scalar_backend();
  for (std::size_t n : {1u, 2u, 7u, 78u, 1000u}) {
    const auto x = random_vector(n, 100 + n, 1e-3);

    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) sq[i] = x[i] * x[i];
    CHECK(rel_diff(s.sum_sq(x.data(), n), compensated_sum(sq)) < 1e-15);
    CHECK(rel_diff(s.sum(x.data(), n), compensated_sum(x)) < 1e-15);

    std::vector<double> cross;
    for (std::size_t i = 1; i < n; ++i) cross.push_back(std::fabs(x[i]) * std::fabs(x[i - 1]));
    if (n >= 2) {
      CHECK(rel_diff(s.sum_abs_lag1(x.data(), n), compensated_sum(cross)) < 1e-15);
    }
  }
}

TEST_CASE("sum_sq_signed splits by sign with zero on the plus side") {
  const Backend& s = rvol::kernels::scalar_backend();
  const std::vector<double> x = {0.01, -0.02, 0.0, 0.01, -0.0};
  const auto split = s.sum_sq_signed(x.data(), x.size());
  // 0.0 and -0.0 both satisfy r >= 0
  CHECK(split.plus == doctest::Approx(1e-4 + 1e-4).epsilon(1e-14));
  CHECK(split.minus == doctest::Approx(4e-4).epsilon(1e-14));
  CHECK(split.plus + split.minus ==
        doctest::Approx(s.sum_sq(x.data(), x.size())).epsilon(1e-14));
}

TEST_CASE("every available backend agrees with the scalar reference") {
  const Backend& ref = rvol::kernels::scalar_backend();
  std::vector<const Backend*> others;
  if (const Backend* avx2 = rvol::kernels::avx2_backend()) others.push_back(avx2);

  for (const Backend* b : others) {
    CAPTURE(b->name);
    for (std::size_t n : {1u, 3u, 4u, 5u, 8u, 17u, 64u, 255u, 1000u}) {
      const auto x = random_vector(n, 7 * n + 1);
      const auto y = random_vector(n, 7 * n + 2);

      CHECK(rel_diff(b->sum(x.data(), n), ref.sum(x.data(), n)) < 1e-14);
      CHECK(rel_diff(b->sum_sq(x.data(), n), ref.sum_sq(x.data(), n)) < 1e-14);
      CHECK(rel_diff(b->sum_abs(x.data(), n), ref.sum_abs(x.data(), n)) < 1e-14);
      if (n >= 2) {
        CHECK(rel_diff(b->sum_abs_lag1(x.data(), n), ref.sum_abs_lag1(x.data(), n)) <
              1e-14);
      }

      const auto split_b = b->sum_sq_signed(x.data(), n);
      const auto split_r = ref.sum_sq_signed(x.data(), n);
      CHECK(rel_diff(split_b.plus, split_r.plus) < 1e-14);
      CHECK(rel_diff(split_b.minus, split_r.minus) < 1e-14);

      // dot: plain accumulation, so allow cancellation-aware tolerance
      double abs_dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) abs_dot += std::fabs(x[i] * y[i]);
      CHECK(std::fabs(b->dot(x.data(), y.data(), n) - ref.dot(x.data(), y.data(), n)) <=
            1e-13 * std::max(abs_dot, 1e-300));

      auto ya = y, yb = y;
      ref.axpy(0.37, x.data(), ya.data(), n);
      b->axpy(0.37, x.data(), yb.data(), n);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::fabs(ya[i] - yb[i]) <= 1e-14 * std::max(std::fabs(ya[i]), 1.0));
      }

      std::vector<double> ma(n), mb(n);
      ref.mul(x.data(), y.data(), ma.data(), n);
      b->mul(x.data(), y.data(), mb.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(ma[i] == mb[i]);

      // realized values are away from zero in the loss kernels
      auto a = random_vector(n, 7 * n + 3);
      for (auto& v : a) v = v - 9.5;
      CHECK(rel_diff(b->sum_sq_diff(x.data(), a.data(), n),
                     ref.sum_sq_diff(x.data(), a.data(), n)) < 1e-13);
      CHECK(rel_diff(b->sum_abs_diff(x.data(), a.data(), n),
                     ref.sum_abs_diff(x.data(), a.data(), n)) < 1e-13);
      CHECK(rel_diff(b->sum_sq_relerr(x.data(), a.data(), n),
                     ref.sum_sq_relerr(x.data(), a.data(), n)) < 1e-13);
      CHECK(rel_diff(b->sum_abs_relerr(x.data(), a.data(), n),
                     ref.sum_abs_relerr(x.data(), a.data(), n)) < 1e-13);
    }
  }
}

TEST_CASE("backend selection") {
  const std::string before(rvol::kernels::active_name());
  const auto names = rvol::kernels::available();
  CHECK(names.size() >= 1);
  rvol::kernels::select("scalar");
  CHECK(rvol::kernels::active_name() == "scalar");
  rvol::kernels::select("auto");
  CHECK_THROWS_AS(rvol::kernels::select("mmx"), rvol::UsageError);
  rvol::kernels::select(before);  // leave the suite on its requested backend
}
