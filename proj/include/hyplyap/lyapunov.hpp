#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyplyap/geodesic.hpp"
#include "hyplyap/monodromy.hpp"

namespace hyplyap::lyapunov {

// Unit of time against which log growth is normalized.
//   FlowTime: roof_time / 2, the geodesic flow on the curvature -4 plane.
//   HyperbolicLength: roof_time.
//   PerDigit: one unit per continued-fraction digit.
enum class TimeNormalization { FlowTime, HyperbolicLength, PerDigit };

std::string to_string(TimeNormalization t);
TimeNormalization parse_time_normalization(const std::string& text);

// Increments of one batch: log growth per frame direction and elapsed time.
struct Window {
  std::vector<double> log_sums;
  double time = 0.0;
  std::uint64_t digits = 0;
};

inline constexpr double kOverflowThreshold = 1e150;
inline constexpr double kEarlyRenormalization = 1e8;

class CocycleAccumulator {
public:
  explicit CocycleAccumulator(int n, int qr_period = 8);

  // frame <- factor * frame; elapsed time += dt.
  void accumulate(const Matrix& factor, double dt, std::uint64_t digits = 1);

  // QR-factors the frame and moves log|diag R| into the log sums.
  void renormalize();

  // Closes the current batch (renormalizing first).
  void close_window();

  int n() const { return n_; }
  int qr_period() const { return qr_period_; }
  const Matrix& frame() const { return frame_; }
  const std::vector<double>& log_sums() const { return log_sums_; }
  double elapsed_time() const { return elapsed_time_; }
  std::uint64_t digits() const { return digits_; }
  const std::vector<Window>& windows() const { return windows_; }
  // Renormalizations in which a direction fell below the rounding floor.
  std::uint64_t floored() const { return floored_; }

private:
  int n_;
  int qr_period_;
  int steps_since_qr_ = 0;
  Matrix frame_;
  std::vector<double> log_sums_;
  double elapsed_time_ = 0.0;
  std::uint64_t digits_ = 0;
  std::vector<double> window_start_sums_;
  double window_start_time_ = 0.0;
  std::uint64_t window_start_digits_ = 0;
  std::vector<Window> windows_;
  std::uint64_t floored_ = 0;
};

struct LyapunovEstimate {
  std::vector<double> exponents;  // descending
  std::vector<double> standard_errors;
  double elapsed_time = 0.0;
  std::uint64_t digits_used = 0;
  double sum_positive = 0.0;
  double sum_positive_stderr = 0.0;
  int windows = 0;
  // Per-window exponents, aligned with the sorted exponents.
  std::vector<std::vector<double>> window_exponents;
  std::vector<double> window_times;

  // Batch-means standard error of the sum of the k largest exponents.
  double top_sum_stderr(int k) const;
  double top_sum(int k) const;
};

// Estimates from the completed windows, grouped into `windows` batches.
// Throws InsufficientData when fewer windows were completed.
LyapunovEstimate finalize(const CocycleAccumulator& acc, int windows);
LyapunovEstimate finalize(int n, const std::vector<Window>& windows, int batches);

struct RunConfig {
  std::uint64_t digits = 1'000'000;
  std::uint64_t seed = 1;
  int refresh_period = geodesic::kDefaultRefreshPeriod;
  int qr_period = 8;
  int windows = 20;
  int workers = 1;
  TimeNormalization time = TimeNormalization::FlowTime;
  // Also runs the dual cocycle and takes the lower half of the spectrum from
  // it. A long parabolic run has a transport whose condition number exceeds
  // 1/eps, which hides the contracting directions from the forward QR.
  bool two_sided = true;
};

// Seed of worker w; worker 0 uses the base seed itself.
std::uint64_t worker_seed(std::uint64_t seed, int worker);

// Geodesic digits -> winding runs -> transport cocycle -> exponents.
LyapunovEstimate estimate(const monodromy::MonodromySet& ms, const RunConfig& cfg);

}  // namespace hyplyap::lyapunov
