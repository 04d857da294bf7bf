#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace hyplyap::experiments {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// One line of results.csv. Empty cells are written for NaN values and
// missing exponents or degrees.
struct ResultRow {
  std::string experiment;
  int point = 0;
  double C = kNaN, d = kNaN;
  double mu1 = kNaN, mu2 = kNaN;
  double r = kNaN, x = kNaN, y = kNaN;
  int n = 0;
  std::vector<double> lambda;        // up to 4 written
  std::vector<double> lambda_stderr; // up to 4 written
  double sum_positive = kNaN;
  double sum_positive_stderr = kNaN;
  std::vector<double> deg_par;       // up to 4 written
  double reference = kNaN;
  double gap = kNaN;
  double gap_stderr = kNaN;
  std::string flag;
  int zone = 0;                      // 0 = not applicable
  double line3 = kNaN;               // 3 mu2 - mu1 - 1
  double runtime_s = kNaN;
  std::uint64_t digits = 0;
  std::uint64_t seed = 0;
};

inline constexpr int kMaxColumns = 4;

const std::vector<std::string>& csv_columns();
std::string csv_header();
std::string to_csv(const ResultRow& row);
void write_csv(std::ostream& os, const std::vector<ResultRow>& rows);

}  // namespace hyplyap::experiments
