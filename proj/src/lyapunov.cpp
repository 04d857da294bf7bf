#include "hyplyap/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <thread>

#include "hyplyap/error.hpp"
#include "hyplyap/winding.hpp"

namespace hyplyap::lyapunov {

std::string to_string(TimeNormalization t) {
  switch (t) {
    case TimeNormalization::FlowTime: return "flow";
    case TimeNormalization::HyperbolicLength: return "length";
    case TimeNormalization::PerDigit: return "digit";
  }
  return "?";
}

TimeNormalization parse_time_normalization(const std::string& text) {
  if (text == "flow") return TimeNormalization::FlowTime;
  if (text == "length") return TimeNormalization::HyperbolicLength;
  if (text == "digit") return TimeNormalization::PerDigit;
  throw Error(ErrorCode::ParseError, "time normalization must be flow, length or digit, got '" + text + "'");
}

CocycleAccumulator::CocycleAccumulator(int n, int qr_period)
    : n_(n),
      qr_period_(qr_period),
      frame_(Matrix::Identity(n, n)),
      log_sums_(static_cast<std::size_t>(n), 0.0),
      window_start_sums_(static_cast<std::size_t>(n), 0.0) {
  if (n < 1) throw Error(ErrorCode::InvalidParams, "cocycle dimension must be at least 1");
  if (qr_period < 1) throw Error(ErrorCode::InvalidParams, "qr period must be at least 1");
}

void CocycleAccumulator::accumulate(const Matrix& factor, double dt, std::uint64_t digits) {
  if (factor.rows() != n_ || factor.cols() != n_) {
    throw Error(ErrorCode::InvalidParams, "factor dimension does not match the cocycle");
  }
  if (!(dt >= 0.0)) throw Error(ErrorCode::InvalidParams, "time increment must be non-negative");
  frame_ = (factor * frame_).eval();
  elapsed_time_ += dt;
  digits_ += digits;
  ++steps_since_qr_;
  const double peak = frame_.cwiseAbs().maxCoeff();
  if (!(peak <= kOverflowThreshold) || !frame_.allFinite()) {
    throw Error(ErrorCode::Overflow, "frame entry exceeds 1e150 before renormalization; lower the qr period");
  }
  if (steps_since_qr_ >= qr_period_ || peak > kEarlyRenormalization) renormalize();
}

void CocycleAccumulator::renormalize() {
  Eigen::HouseholderQR<Matrix> qr(frame_);
  const Matrix& packed = qr.matrixQR();
  if (!packed.allFinite()) throw Error(ErrorCode::Overflow, "non-finite frame during renormalization");
  // A direction squeezed below rounding by one ill-conditioned factor is
  // credited with the rounding floor instead of log 0. Only the contracting
  // half is affected, and two-sided runs take that half from the dual.
  const double floor = std::numeric_limits<double>::epsilon() * packed.diagonal().cwiseAbs().maxCoeff();
  for (int i = 0; i < n_; ++i) {
    double r = std::abs(packed(i, i));
    if (r < floor) {
      r = floor;
      ++floored_;
    }
    log_sums_[static_cast<std::size_t>(i)] += std::log(r);
  }
  frame_ = qr.householderQ() * Matrix::Identity(n_, n_);
  steps_since_qr_ = 0;
}

void CocycleAccumulator::close_window() {
  renormalize();
  Window w;
  w.log_sums.resize(static_cast<std::size_t>(n_));
  for (std::size_t i = 0; i < log_sums_.size(); ++i) w.log_sums[i] = log_sums_[i] - window_start_sums_[i];
  w.time = elapsed_time_ - window_start_time_;
  w.digits = digits_ - window_start_digits_;
  windows_.push_back(std::move(w));
  window_start_sums_ = log_sums_;
  window_start_time_ = elapsed_time_;
  window_start_digits_ = digits_;
}

namespace {

double batch_stderr(const std::vector<double>& values, const std::vector<double>& weights, double mean) {
  const std::size_t b = values.size();
  if (b < 2) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < b; ++i) {
    const double dev = values[i] - mean;
    acc += weights[i] * weights[i] * dev * dev;
  }
  return std::sqrt(acc * static_cast<double>(b) / static_cast<double>(b - 1));
}

}  // namespace

double LyapunovEstimate::top_sum(int k) const {
  double s = 0.0;
  for (int i = 0; i < k && i < static_cast<int>(exponents.size()); ++i) s += exponents[static_cast<std::size_t>(i)];
  return s;
}

double LyapunovEstimate::top_sum_stderr(int k) const {
  const double total = std::accumulate(window_times.begin(), window_times.end(), 0.0);
  std::vector<double> values, weights;
  for (std::size_t b = 0; b < window_exponents.size(); ++b) {
    double s = 0.0;
    for (int i = 0; i < k && i < static_cast<int>(window_exponents[b].size()); ++i) {
      s += window_exponents[b][static_cast<std::size_t>(i)];
    }
    values.push_back(s);
    weights.push_back(window_times[b] / total);
  }
  return batch_stderr(values, weights, top_sum(k));
}

LyapunovEstimate finalize(int n, const std::vector<Window>& windows, int batches) {
  if (batches < 2) throw Error(ErrorCode::InvalidParams, "at least two windows are required");
  if (static_cast<int>(windows.size()) < batches) {
    throw Error(ErrorCode::InsufficientData, "only " + std::to_string(windows.size()) + " of " +
                                                 std::to_string(batches) + " windows completed");
  }
  const auto nn = static_cast<std::size_t>(n);
  const std::size_t total_windows = windows.size();
  const auto nb = static_cast<std::size_t>(batches);

  std::vector<std::vector<double>> batch_sums(nb, std::vector<double>(nn, 0.0));
  std::vector<double> batch_times(nb, 0.0);
  std::uint64_t digits = 0;
  for (std::size_t b = 0; b < nb; ++b) {
    const std::size_t lo = b * total_windows / nb;
    const std::size_t hi = (b + 1) * total_windows / nb;
    for (std::size_t w = lo; w < hi; ++w) {
      if (windows[w].log_sums.size() != nn) throw Error(ErrorCode::InvalidParams, "window dimension mismatch");
      for (std::size_t i = 0; i < nn; ++i) batch_sums[b][i] += windows[w].log_sums[i];
      batch_times[b] += windows[w].time;
      digits += windows[w].digits;
    }
  }
  const double total_time = std::accumulate(batch_times.begin(), batch_times.end(), 0.0);
  if (!(total_time > 0.0)) throw Error(ErrorCode::InsufficientData, "no elapsed time");
  for (double t : batch_times) {
    if (!(t > 0.0)) throw Error(ErrorCode::InsufficientData, "empty window");
  }

  std::vector<double> raw(nn, 0.0);
  for (std::size_t b = 0; b < nb; ++b) {
    for (std::size_t i = 0; i < nn; ++i) raw[i] += batch_sums[b][i];
  }
  for (double& v : raw) v /= total_time;
  std::vector<std::size_t> order(nn);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return raw[a] > raw[b]; });

  LyapunovEstimate est;
  est.elapsed_time = total_time;
  est.digits_used = digits;
  est.windows = batches;
  est.window_times = batch_times;
  est.window_exponents.assign(nb, std::vector<double>(nn, 0.0));
  for (std::size_t b = 0; b < nb; ++b) {
    for (std::size_t i = 0; i < nn; ++i) est.window_exponents[b][i] = batch_sums[b][order[i]] / batch_times[b];
  }
  std::vector<double> weights(nb);
  for (std::size_t b = 0; b < nb; ++b) weights[b] = batch_times[b] / total_time;
  for (std::size_t i = 0; i < nn; ++i) {
    est.exponents.push_back(raw[order[i]]);
    std::vector<double> column(nb);
    for (std::size_t b = 0; b < nb; ++b) column[b] = est.window_exponents[b][i];
    est.standard_errors.push_back(batch_stderr(column, weights, est.exponents.back()));
  }

  std::vector<double> positive_column(nb, 0.0);
  for (std::size_t i = 0; i < nn; ++i) {
    if (est.exponents[i] > 0.0) {
      est.sum_positive += est.exponents[i];
      for (std::size_t b = 0; b < nb; ++b) positive_column[b] += est.window_exponents[b][i];
    }
  }
  est.sum_positive_stderr = batch_stderr(positive_column, weights, est.sum_positive);
  return est;
}

LyapunovEstimate finalize(const CocycleAccumulator& acc, int windows) {
  return finalize(acc.n(), acc.windows(), windows);
}

std::uint64_t worker_seed(std::uint64_t seed, int worker) {
  if (worker == 0) return seed;
  // splitmix64 step on seed + worker
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(worker);
  z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31U);
}

namespace {

std::vector<Window> run_worker(const winding::RunEngine& engine, const RunConfig& cfg, std::uint64_t seed,
                               std::uint64_t digits) {
  geodesic::GaussState gauss(seed, cfg.refresh_period);
  const int n = engine.n();
  CocycleAccumulator acc(n, cfg.qr_period);
  CocycleAccumulator dual(n, cfg.qr_period);
  winding::Coset coset = winding::Coset::Id;
  Matrix scratch(n, n);
  const auto w = static_cast<std::uint64_t>(cfg.windows);
  std::uint64_t next_boundary = digits / w;
  int closed = 0;
  for (std::uint64_t i = 0; i < digits; ++i) {
    const geodesic::DigitEvent ev = gauss.step();
    double dt = 1.0;
    switch (cfg.time) {
      case TimeNormalization::FlowTime: dt = 0.5 * ev.roof_time; break;
      case TimeNormalization::HyperbolicLength: dt = ev.roof_time; break;
      case TimeNormalization::PerDigit: dt = 1.0; break;
    }
    if (cfg.two_sided) dual.accumulate(engine.dual_transport(coset, ev.letter, ev.digit, scratch), dt, 1);
    acc.accumulate(engine.transport(coset, ev.letter, ev.digit, scratch), dt, 1);
    if (i + 1 == next_boundary) {
      acc.close_window();
      if (cfg.two_sided) dual.close_window();
      ++closed;
      next_boundary = static_cast<std::uint64_t>(closed + 1) * digits / w;
    }
  }
  std::vector<Window> windows = acc.windows();
  if (!cfg.two_sided) return windows;
  // Exponent n - 1 - i of the forward cocycle is minus exponent i of the dual.
  const auto nn = static_cast<std::size_t>(n);
  for (std::size_t k = 0; k < windows.size(); ++k) {
    const auto& d = dual.windows()[k].log_sums;
    for (std::size_t i = (nn + 1) / 2; i < nn; ++i) windows[k].log_sums[i] = -d[nn - 1 - i];
  }
  return windows;
}

}  // namespace

LyapunovEstimate estimate(const monodromy::MonodromySet& ms, const RunConfig& cfg) {
  if (cfg.workers < 1) throw Error(ErrorCode::InvalidParams, "workers must be at least 1");
  if (cfg.windows < 2) throw Error(ErrorCode::InvalidParams, "windows must be at least 2");
  const auto workers = static_cast<std::uint64_t>(cfg.workers);
  if (cfg.digits < workers * static_cast<std::uint64_t>(cfg.windows)) {
    throw Error(ErrorCode::InsufficientData, "digit budget smaller than workers * windows");
  }
  const winding::RunEngine engine(ms);

  std::vector<std::vector<Window>> results(workers);
  std::vector<std::exception_ptr> failures(workers);
  auto job = [&](std::size_t w) {
    try {
      const std::uint64_t lo = w * cfg.digits / workers;
      const std::uint64_t hi = (w + 1) * cfg.digits / workers;
      results[w] = run_worker(engine, cfg, worker_seed(cfg.seed, static_cast<int>(w)), hi - lo);
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    job(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(job, w);
    for (auto& t : threads) t.join();
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  std::vector<Window> pooled;
  for (auto& r : results) pooled.insert(pooled.end(), r.begin(), r.end());
  return finalize(engine.n(), pooled, static_cast<int>(pooled.size()));
}

}  // namespace hyplyap::lyapunov
