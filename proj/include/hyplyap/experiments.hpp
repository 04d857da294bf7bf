#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "hyplyap/calabi_yau.hpp"
#include "hyplyap/hodge.hpp"
#include "hyplyap/lyapunov.hpp"
#include "hyplyap/params.hpp"
#include "hyplyap/result_row.hpp"

namespace hyplyap::experiments {

// One row of the published Calabi-Yau tables.
struct CYCase {
  double C = 0.0;
  double d = 0.0;
  double sum_expected = 0.0;     // lambda_1 + lambda_2
  double lambda1_expected = kNaN; // only listed for the good cases
  double mu1 = 0.0;
  double mu2 = 0.0;
  bool good = true;
};

// The 7 good and 7 bad cases, in table order.
const std::vector<CYCase>& cy_cases();

inline constexpr double kFlagSigma = 3.0;

// Estimate for (T, S) with invariants (C, d); gap = lambda_1 + lambda_2 - 2 (mu1 + mu2).
ResultRow cy_point(double C, double d, const lyapunov::RunConfig& cfg, int point = 0,
                   const char* experiment = "cy");
std::vector<ResultRow> cy_table(const lyapunov::RunConfig& cfg);

// Points (mu1, mu2) = (i, j) / (2 grid) with 1 <= i <= j <= grid.
std::vector<std::pair<double, double>> mu_grid(int grid);
std::vector<ResultRow> scan_mu_plane(const std::vector<std::pair<double, double>>& points,
                                     const lyapunov::RunConfig& cfg);

// alpha = (r, 2r), beta = (0, x).
HGParams n2_params(double r, double x);
// Throws Error(ChamberWall) on ties or integer gamma.
int n2_zone(double r, double x);
ResultRow n2_point(double r, double x, const lyapunov::RunConfig& cfg, int point = 0);
std::vector<ResultRow> n2_scan(const std::vector<double>& rs, const std::vector<double>& xs,
                               const lyapunov::RunConfig& cfg);

// Gaps (x, x, 1/2, y, y) between consecutive markers starting at alpha_1 = 0.
HGParams weight2_params(double x, double y);
ResultRow weight2_point(double x, double y, const lyapunov::RunConfig& cfg, int point = 0);
std::vector<ResultRow> weight2_scan(const std::vector<double>& xs, const std::vector<double>& ys,
                                    const lyapunov::RunConfig& cfg);

// Row for arbitrary hypergeometric parameters; reference = 0.
ResultRow hypergeometric_point(const HGParams& params, const lyapunov::RunConfig& cfg, int point = 0);

std::vector<double> linspace(double lo, double hi, int count);

// Runs jobs 0..count-1 over `workers` threads and returns rows in job order.
std::vector<ResultRow> run_jobs(int count, int workers, const std::function<ResultRow(int)>& job);

}  // namespace hyplyap::experiments
