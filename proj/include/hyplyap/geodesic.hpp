#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace hyplyap {

enum class Letter : std::uint8_t { L, R };

inline constexpr Letter other(Letter x) { return x == Letter::L ? Letter::R : Letter::L; }
inline constexpr char to_char(Letter x) { return x == Letter::L ? 'L' : 'R'; }

namespace geodesic {

// One continued-fraction digit of the cutting sequence.
struct DigitEvent {
  std::uint64_t digit = 0;
  Letter letter = Letter::L;
  double roof_time = 0.0;
  // A fresh geodesic starts after this event.
  bool refreshed = false;
};

inline constexpr int kDefaultRefreshPeriod = 32;
inline constexpr double kDefaultGuard = 1e-9;
inline constexpr std::uint64_t kMaxDigit = std::uint64_t{1} << 31;

// Gauss map x -> 1/x - floor(1/x) on a uniformly sampled x, restarted every
// refresh_period digits to bound the loss of precision.
class GaussState {
public:
  explicit GaussState(std::uint64_t seed, int refresh_period = kDefaultRefreshPeriod,
                      double guard = kDefaultGuard);

  DigitEvent step();

  double x() const { return x_; }
  int digits_since_refresh() const { return digits_since_refresh_; }
  int refresh_period() const { return refresh_period_; }
  double guard() const { return guard_; }

  // Restarts the orbit at x in (0,1) with letter phase L.
  void reset(double x);

private:
  double sample_uniform();

  std::mt19937_64 rng_;
  double x_ = 0.5;
  Letter letter_ = Letter::L;
  int digits_since_refresh_ = 0;
  int refresh_period_;
  double guard_;
};

DigitEvent gauss_step(GaussState& state);

std::vector<DigitEvent> digit_stream(std::uint64_t seed, std::size_t count,
                                     int refresh_period = kDefaultRefreshPeriod);

}  // namespace geodesic
}  // namespace hyplyap
