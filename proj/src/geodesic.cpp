#include "hyplyap/geodesic.hpp"

#include <cmath>

#include "hyplyap/error.hpp"

namespace hyplyap::geodesic {

GaussState::GaussState(std::uint64_t seed, int refresh_period, double guard)
    : rng_(seed), refresh_period_(refresh_period), guard_(guard) {
  if (refresh_period < 1) throw Error(ErrorCode::InvalidParams, "refresh period must be at least 1");
  if (!(guard >= 0.0 && guard < 1.0)) throw Error(ErrorCode::InvalidParams, "guard must lie in [0, 1)");
  x_ = sample_uniform();
}

double GaussState::sample_uniform() {
  // 53 random bits; zero is rejected so that x lies in (0, 1).
  for (;;) {
    const double u = static_cast<double>(rng_() >> 11U) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

void GaussState::reset(double x) {
  if (!(x > 0.0 && x < 1.0)) throw Error(ErrorCode::InvalidParams, "Gauss state must lie in (0, 1)");
  x_ = x;
  letter_ = Letter::L;
  digits_since_refresh_ = 0;
}

DigitEvent GaussState::step() {
  const double inv = 1.0 / x_;
  const double a = std::floor(inv);
  DigitEvent event;
  event.digit = static_cast<std::uint64_t>(a);
  event.letter = letter_;
  event.roof_time = 2.0 * std::log(inv);
  // fl(1/x) - floor(fl(1/x)) is exact.
  x_ = inv - a;
  ++digits_since_refresh_;
  letter_ = other(letter_);

  if (digits_since_refresh_ >= refresh_period_ || x_ < guard_ || x_ <= 0.0 || event.digit > kMaxDigit) {
    x_ = sample_uniform();
    letter_ = Letter::L;
    digits_since_refresh_ = 0;
    event.refreshed = true;
  }
  return event;
}

DigitEvent gauss_step(GaussState& state) { return state.step(); }

std::vector<DigitEvent> digit_stream(std::uint64_t seed, std::size_t count, int refresh_period) {
  if (count < 1) throw Error(ErrorCode::InvalidParams, "digit count must be at least 1");
  GaussState state(seed, refresh_period);
  std::vector<DigitEvent> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(state.step());
  return out;
}

}  // namespace hyplyap::geodesic
