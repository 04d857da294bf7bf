#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hyplyap {

// Parses "0.25", "-3", "1e-3" or an exact rational "5/12". Rationals are
// reduced in integer arithmetic before the single rounding to double.
double parse_real(std::string_view text);

// Comma separated list of parse_real values ("0, 1/3, 2/3").
std::vector<double> parse_real_list(std::string_view text);

// Representative of x mod 1 in [0, 1).
double reduce_mod1(double x);

// Distance between x and y on R/Z, in [0, 1/2].
double circle_distance(double x, double y);

// Parameters alpha_1..alpha_n, beta_1..beta_n of the hypergeometric equation,
// stored reduced mod 1. All 2n reduced values are pairwise distinct.
struct HGParams {
  int n = 0;
  std::vector<double> alpha;
  std::vector<double> beta;

  // Minimal circular separation accepted between two parameters.
  static constexpr double kDistinctTolerance = 1e-12;

  // Reduces mod 1 and validates; throws Error(InvalidParams).
  static HGParams make(std::vector<double> alpha, std::vector<double> beta);

  // The same parameters shifted by delta (mod 1).
  HGParams translated(double delta) const;

  // Smallest circular distance between any two of the 2n parameters.
  double min_separation() const;
};

std::string to_string(const HGParams& params);

}  // namespace hyplyap
