#include "hyplyap/params.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>

#include "hyplyap/error.hpp"

namespace hyplyap {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::int64_t parse_integer(std::string_view s, std::string_view whole) {
  std::int64_t value = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError, "not a rational number: '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

double parse_real(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty number");

  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    std::int64_t num = parse_integer(trim(s.substr(0, slash)), s);
    std::int64_t den = parse_integer(trim(s.substr(slash + 1)), s);
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(s) + "'");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
  }

  std::string_view body = s;
  if (body.front() == '+') body.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec != std::errc() || ptr != body.data() + body.size()) {
    throw Error(ErrorCode::ParseError, "not a number: '" + std::string(s) + "'");
  }
  return value;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item =
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (!trim(item).empty()) out.push_back(parse_real(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double reduce_mod1(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;
  return r;
}

double circle_distance(double x, double y) {
  const double d = reduce_mod1(x - y);
  return std::min(d, 1.0 - d);
}

HGParams HGParams::make(std::vector<double> alpha, std::vector<double> beta) {
  if (alpha.empty()) throw Error(ErrorCode::InvalidParams, "rank n must be at least 1");
  if (alpha.size() != beta.size()) {
    throw Error(ErrorCode::InvalidParams, "alpha and beta must have the same length");
  }
  for (double v : alpha) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidParams, "non-finite alpha");
  }
  for (double v : beta) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidParams, "non-finite beta");
  }
  HGParams p;
  p.n = static_cast<int>(alpha.size());
  p.alpha.reserve(alpha.size());
  p.beta.reserve(beta.size());
  for (double v : alpha) p.alpha.push_back(reduce_mod1(v));
  for (double v : beta) p.beta.push_back(reduce_mod1(v));
  if (p.min_separation() <= kDistinctTolerance) {
    throw Error(ErrorCode::InvalidParams, "parameters must be pairwise distinct mod 1: " + to_string(p));
  }
  return p;
}

HGParams HGParams::translated(double delta) const {
  std::vector<double> a = alpha;
  std::vector<double> b = beta;
  for (double& v : a) v += delta;
  for (double& v : b) v += delta;
  return make(std::move(a), std::move(b));
}

double HGParams::min_separation() const {
  std::vector<double> all = alpha;
  all.insert(all.end(), beta.begin(), beta.end());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      best = std::min(best, circle_distance(all[i], all[j]));
    }
  }
  return best;
}

std::string to_string(const HGParams& params) {
  std::ostringstream os;
  os.precision(17);
  os << "alpha=(";
  for (std::size_t i = 0; i < params.alpha.size(); ++i) os << (i ? ", " : "") << params.alpha[i];
  os << ") beta=(";
  for (std::size_t i = 0; i < params.beta.size(); ++i) os << (i ? ", " : "") << params.beta[i];
  os << ")";
  return os.str();
}

}  // namespace hyplyap
