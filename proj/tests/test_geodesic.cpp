#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hyplyap/geodesic.hpp"

using namespace hyplyap;
using namespace hyplyap::geodesic;

TEST_CASE("Gauss map fixed points and a rational step") {
  GaussState s(1);
  s.reset(std::sqrt(2.0) - 1.0);
  DigitEvent e = s.step();
  CHECK(e.digit == 2);
  CHECK(e.letter == Letter::L);
  CHECK(e.roof_time == doctest::Approx(2.0 * std::log(1.0 + std::sqrt(2.0))).epsilon(1e-12));
  CHECK(s.x() == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));

  s.reset((std::sqrt(5.0) - 1.0) / 2.0);
  e = s.step();
  CHECK(e.digit == 1);
  CHECK(e.roof_time == doctest::Approx(2.0 * std::log((1.0 + std::sqrt(5.0)) / 2.0)).epsilon(1e-12));
  CHECK(s.x() == doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0).epsilon(1e-12));

  s.reset(0.3);
  e = s.step();
  CHECK(e.digit == 3);
  CHECK(e.roof_time == doctest::Approx(2.0 * std::log(10.0 / 3.0)).epsilon(1e-12));
  CHECK(s.x() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("letters alternate and restart at L after a refresh") {
  const auto stream = digit_stream(7, 5000, 32);
  Letter expected = Letter::L;
  int since = 0;
  for (const DigitEvent& e : stream) {
    REQUIRE(e.letter == expected);
    ++since;
    REQUIRE(since <= 32);
    if (e.refreshed) {
      expected = Letter::L;
      since = 0;
    } else {
      expected = other(expected);
    }
  }
}

TEST_CASE("streams are deterministic per seed") {
  const auto a = digit_stream(42, 10);
  const auto b = digit_stream(42, 10);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].digit == b[i].digit);
    CHECK(a[i].roof_time == b[i].roof_time);
  }
  const auto c = digit_stream(43, 10);
  bool differ = false;
  for (std::size_t i = 0; i < a.size(); ++i) differ = differ || a[i].roof_time != c[i].roof_time;
  CHECK(differ);
}

TEST_CASE("roof time bounds and exact inversion between refreshes") {
  GaussState s(5, 32);
  for (int i = 0; i < 200000; ++i) {
    const double x_prev = s.x();
    const DigitEvent e = s.step();
    const double d = static_cast<double>(e.digit);
    REQUIRE(e.digit >= 1);
    REQUIRE(e.roof_time >= 2.0 * std::log(d) - 1e-12);
    REQUIRE(e.roof_time < 2.0 * std::log(d + 1.0) + 1e-12);
    if (!e.refreshed) {
      const double rebuilt = 1.0 / (d + s.x());
      REQUIRE(std::abs(rebuilt - x_prev) <= 4.0 * std::numeric_limits<double>::epsilon() * x_prev);
    }
  }
}

TEST_CASE("Gauss-Kuzmin digit frequencies and the mean roof time") {
  const std::size_t count = 1'000'000;
  GaussState s(2024);
  std::vector<std::size_t> hist(6, 0);
  double roof = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const DigitEvent e = s.step();
    if (e.digit < hist.size()) ++hist[e.digit];
    roof += e.roof_time;
  }
  for (std::uint64_t k = 1; k < hist.size(); ++k) {
    const double kd = static_cast<double>(k);
    const double p = std::log2(1.0 + 1.0 / (kd * (kd + 2.0)));
    const double freq = static_cast<double>(hist[k]) / count;
    // 4 sigma of a binomial proportion (digits are weakly correlated)
    CHECK(std::abs(freq - p) < 4.0 * std::sqrt(p * (1.0 - p) / count) * 1.5);
  }
  const double freq1 = static_cast<double>(hist[1]) / count;
  CHECK(freq1 >= 0.413);
  CHECK(freq1 <= 0.418);
  const double mean = roof / count;
  const double levy = std::numbers::pi * std::numbers::pi / (6.0 * std::log(2.0));
  CHECK(mean >= 2.34);
  CHECK(mean <= 2.41);
  CHECK(std::abs(mean - levy) < 0.02);
}
