#include "hyplyap/result_row.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace hyplyap::experiments {

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> columns = [] {
    std::vector<std::string> c{"experiment", "point", "C", "d", "mu1", "mu2", "r", "x", "y", "n"};
    for (int i = 1; i <= kMaxColumns; ++i) c.push_back("lambda_" + std::to_string(i));
    for (int i = 1; i <= kMaxColumns; ++i) c.push_back("stderr_" + std::to_string(i));
    c.insert(c.end(), {"sum_positive", "sum_positive_stderr"});
    for (int i = 1; i <= kMaxColumns; ++i) c.push_back("deg_par_" + std::to_string(i));
    c.insert(c.end(), {"reference", "gap", "gap_stderr", "flag", "zone", "line3", "runtime_s", "digits", "seed"});
    return c;
  }();
  return columns;
}

std::string csv_header() {
  std::string out;
  for (const auto& c : csv_columns()) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

namespace {

void cell(std::ostringstream& os, double v) {
  os << ',';
  if (std::isfinite(v)) os << v;
}

void cells(std::ostringstream& os, const std::vector<double>& v) {
  for (int i = 0; i < kMaxColumns; ++i) {
    cell(os, i < static_cast<int>(v.size()) ? v[static_cast<std::size_t>(i)] : kNaN);
  }
}

}  // namespace

std::string to_csv(const ResultRow& row) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(10);
  os << row.experiment << ',' << row.point;
  cell(os, row.C);
  cell(os, row.d);
  cell(os, row.mu1);
  cell(os, row.mu2);
  cell(os, row.r);
  cell(os, row.x);
  cell(os, row.y);
  os << ',' << row.n;
  cells(os, row.lambda);
  cells(os, row.lambda_stderr);
  cell(os, row.sum_positive);
  cell(os, row.sum_positive_stderr);
  cells(os, row.deg_par);
  cell(os, row.reference);
  cell(os, row.gap);
  cell(os, row.gap_stderr);
  os << ',' << row.flag << ',';
  if (row.zone != 0) os << row.zone;
  cell(os, row.line3);
  cell(os, row.runtime_s);
  os << ',' << row.digits << ',' << row.seed;
  return os.str();
}

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << csv_header() << '\n';
  for (const auto& r : rows) os << to_csv(r) << '\n';
}

}  // namespace hyplyap::experiments
