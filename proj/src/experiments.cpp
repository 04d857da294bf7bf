#include "hyplyap/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

#include "hyplyap/error.hpp"
#include "hyplyap/monodromy.hpp"

namespace hyplyap::experiments {

const std::vector<CYCase>& cy_cases() {
  static const std::vector<CYCase> cases{
      {46, 1, 1.0, 0.97, 1.0 / 12, 5.0 / 12, true},
      {44, 2, 1.0, 0.95, 1.0 / 8, 3.0 / 8, true},
      {52, 4, 4.0 / 3, 1.27, 1.0 / 6, 1.0 / 2, true},
      {50, 5, 6.0 / 5, 1.12, 1.0 / 5, 2.0 / 5, true},
      {56, 8, 3.0 / 2, 1.40, 1.0 / 4, 1.0 / 2, true},
      {60, 12, 5.0 / 3, 1.53, 1.0 / 3, 1.0 / 2, true},
      {64, 16, 2.0, 1.75, 1.0 / 2, 1.0 / 2, true},
      {22, 1, 0.92, 0.75, 1.0 / 6, 1.0 / 6, false},
      {34, 1, 0.83, 0.77, 1.0 / 10, 3.0 / 10, false},
      {32, 2, 0.97, 0.84, 1.0 / 6, 1.0 / 4, false},
      {42, 3, 1.06, 0.96, 1.0 / 6, 1.0 / 3, false},
      {40, 4, 1.30, 1.07, 1.0 / 4, 1.0 / 4, false},
      {48, 6, 1.31, 1.15, 1.0 / 4, 1.0 / 3, false},
      {54, 9, 1.60, 1.34, 1.0 / 3, 1.0 / 3, false},
  };
  return cases;
}

namespace {

using Clock = std::chrono::steady_clock;

lyapunov::RunConfig single_worker(const lyapunov::RunConfig& cfg) {
  lyapunov::RunConfig c = cfg;
  c.workers = 1;
  return c;
}

void fill_estimate(ResultRow& row, const lyapunov::LyapunovEstimate& est, const lyapunov::RunConfig& cfg) {
  row.n = static_cast<int>(est.exponents.size());
  row.lambda = est.exponents;
  row.lambda_stderr = est.standard_errors;
  row.sum_positive = est.sum_positive;
  row.sum_positive_stderr = est.sum_positive_stderr;
  row.digits = est.digits_used;
  row.seed = cfg.seed;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const char* equality_flag(double gap, double stderr_value) {
  return std::abs(gap) <= kFlagSigma * stderr_value ? "good" : "bad";
}

}  // namespace

std::vector<ResultRow> run_jobs(int count, int workers, const std::function<ResultRow(int)>& job) {
  std::vector<ResultRow> rows(static_cast<std::size_t>(std::max(count, 0)));
  if (count <= 0) return rows;
  workers = std::max(1, std::min(workers, count));
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        rows[static_cast<std::size_t>(i)] = job(i);
      } catch (...) {
        failures[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return rows;
}

ResultRow cy_point(double C, double d, const lyapunov::RunConfig& cfg, int point, const char* experiment) {
  const auto start = Clock::now();
  ResultRow row;
  row.experiment = experiment;
  row.point = point;
  row.C = C;
  row.d = d;
  const calabi_yau::Mu mu = calabi_yau::cy_mu(C, d);
  row.mu1 = mu.mu1;
  row.mu2 = mu.mu2;
  row.line3 = 3.0 * mu.mu2 - mu.mu1 - 1.0;
  const auto est = lyapunov::estimate(calabi_yau::monodromy_set(C, d), cfg);
  fill_estimate(row, est, cfg);
  row.sum_positive = est.top_sum(2);
  row.sum_positive_stderr = est.top_sum_stderr(2);
  row.reference = 2.0 * (mu.mu1 + mu.mu2);
  row.gap = row.sum_positive - row.reference;
  row.gap_stderr = row.sum_positive_stderr;
  row.flag = equality_flag(row.gap, row.gap_stderr);
  row.runtime_s = seconds_since(start);
  return row;
}

std::vector<ResultRow> cy_table(const lyapunov::RunConfig& cfg) {
  const auto& cases = cy_cases();
  const lyapunov::RunConfig inner = single_worker(cfg);
  return run_jobs(static_cast<int>(cases.size()), cfg.workers, [&](int i) {
    const CYCase& c = cases[static_cast<std::size_t>(i)];
    return cy_point(c.C, c.d, inner, i, "cy-table");
  });
}

std::vector<std::pair<double, double>> mu_grid(int grid) {
  if (grid < 1) throw Error(ErrorCode::InvalidParams, "grid must be at least 1");
  std::vector<std::pair<double, double>> out;
  for (int i = 1; i <= grid; ++i) {
    for (int j = i; j <= grid; ++j) out.emplace_back(i / (2.0 * grid), j / (2.0 * grid));
  }
  return out;
}

std::vector<ResultRow> scan_mu_plane(const std::vector<std::pair<double, double>>& points,
                                     const lyapunov::RunConfig& cfg) {
  const lyapunov::RunConfig inner = single_worker(cfg);
  return run_jobs(static_cast<int>(points.size()), cfg.workers, [&](int i) {
    const auto [mu1, mu2] = points[static_cast<std::size_t>(i)];
    const calabi_yau::Realization cd = calabi_yau::realize_mu(mu1, mu2);
    ResultRow row = cy_point(cd.C, cd.d, inner, i, "scan-mu");
    return row;
  });
}

HGParams n2_params(double r, double x) {
  try {
    return HGParams::make({r, 2.0 * r}, {0.0, x});
  } catch (const Error& e) {
    throw Error(ErrorCode::ChamberWall, std::string("n = 2 parameters on a wall: ") + e.what());
  }
}

namespace {

hodge::Diagram chamber_diagram(const HGParams& params) {
  try {
    return hodge::analyze(params);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IntegerGamma) throw Error(ErrorCode::ChamberWall, e.what());
    throw;
  }
}

}  // namespace

int n2_zone(double r, double x) {
  const HGParams params = n2_params(r, x);
  const hodge::Diagram d = chamber_diagram(params);
  // Alternating order: every alpha sits at level 1 (weight 0).
  if (d.h[0] == 2) return 3;
  const bool zero_at_x = d.f_beta[1] == 0;
  if (d.gamma_floor == 0) return zero_at_x ? 1 : 4;
  return zero_at_x ? 2 : 5;
}

ResultRow n2_point(double r, double x, const lyapunov::RunConfig& cfg, int point) {
  const auto start = Clock::now();
  const HGParams params = n2_params(r, x);
  const hodge::Diagram diagram = chamber_diagram(params);
  ResultRow row;
  row.experiment = "n2";
  row.point = point;
  row.r = r;
  row.x = x;
  row.zone = n2_zone(r, x);
  row.deg_par = hodge::parabolic_degrees(diagram).deg_par;
  const auto est = lyapunov::estimate(monodromy::build(params), cfg);
  fill_estimate(row, est, cfg);
  row.reference = 2.0 * row.deg_par[0];
  row.gap = est.exponents[0] - row.reference;
  row.gap_stderr = est.standard_errors[0];
  row.flag = equality_flag(row.gap, row.gap_stderr);
  row.runtime_s = seconds_since(start);
  return row;
}

std::vector<ResultRow> n2_scan(const std::vector<double>& rs, const std::vector<double>& xs,
                               const lyapunov::RunConfig& cfg) {
  const lyapunov::RunConfig inner = single_worker(cfg);
  const int count = static_cast<int>(rs.size() * xs.size());
  return run_jobs(count, cfg.workers, [&](int i) {
    const double r = rs[static_cast<std::size_t>(i) / xs.size()];
    const double x = xs[static_cast<std::size_t>(i) % xs.size()];
    try {
      return n2_point(r, x, inner, i);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ChamberWall) throw;
      ResultRow row;
      row.experiment = "n2";
      row.point = i;
      row.r = r;
      row.x = x;
      row.n = 2;
      row.flag = "wall";
      row.seed = inner.seed;
      return row;
    }
  });
}

HGParams weight2_params(double x, double y) {
  if (!(x > 0.0 && y > 0.0) || !(2.0 * x + 2.0 * y < 0.5)) {
    throw Error(ErrorCode::ChamberWall, "weight 2 scan needs x, y > 0 and 2x + 2y < 1/2");
  }
  const double b1 = 2.0 * x + 0.5;
  try {
    return HGParams::make({0.0, x, 2.0 * x}, {b1, b1 + y, b1 + 2.0 * y});
  } catch (const Error& e) {
    throw Error(ErrorCode::ChamberWall, e.what());
  }
}

ResultRow weight2_point(double x, double y, const lyapunov::RunConfig& cfg, int point) {
  const auto start = Clock::now();
  const HGParams params = weight2_params(x, y);
  const hodge::Diagram diagram = chamber_diagram(params);
  ResultRow row;
  row.experiment = "weight2";
  row.point = point;
  row.x = x;
  row.y = y;
  row.deg_par = hodge::parabolic_degrees(diagram).deg_par;
  const auto est = lyapunov::estimate(monodromy::build(params), cfg);
  fill_estimate(row, est, cfg);
  // Levels 1 and 2 carry the positive degree when h = (1, 1, 1).
  row.reference = 2.0 * (row.deg_par[0] + row.deg_par[1]);
  row.gap = est.exponents[0] - row.reference;
  row.gap_stderr = est.standard_errors[0];
  row.flag = equality_flag(row.gap, row.gap_stderr);
  row.runtime_s = seconds_since(start);
  return row;
}

std::vector<ResultRow> weight2_scan(const std::vector<double>& xs, const std::vector<double>& ys,
                                    const lyapunov::RunConfig& cfg) {
  const lyapunov::RunConfig inner = single_worker(cfg);
  const int count = static_cast<int>(xs.size() * ys.size());
  return run_jobs(count, cfg.workers, [&](int i) {
    const double x = xs[static_cast<std::size_t>(i) / ys.size()];
    const double y = ys[static_cast<std::size_t>(i) % ys.size()];
    return weight2_point(x, y, inner, i);
  });
}

ResultRow hypergeometric_point(const HGParams& params, const lyapunov::RunConfig& cfg, int point) {
  const auto start = Clock::now();
  ResultRow row;
  row.experiment = "hypergeometric";
  row.point = point;
  try {
    row.deg_par = hodge::parabolic_degrees(hodge::analyze(params)).deg_par;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::IntegerGamma) throw;
  }
  const auto est = lyapunov::estimate(monodromy::build(params), cfg);
  fill_estimate(row, est, cfg);
  row.runtime_s = seconds_since(start);
  return row;
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1) throw Error(ErrorCode::InvalidParams, "linspace needs at least one point");
  if (count == 1) return {lo};
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(lo + (hi - lo) * i / (count - 1));
  return out;
}

}  // namespace hyplyap::experiments
