#include "hyplyap/calabi_yau.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_int.hpp>

#include "hyplyap/error.hpp"

namespace hyplyap::calabi_yau {

using Rational = boost::multiprecision::cpp_rational;

Matrix t_matrix() {
  Matrix t = Matrix::Zero(4, 4);
  t << 1.0, 0.0, 0.0, 0.0,
       1.0, 1.0, 0.0, 0.0,
       0.5, 1.0, 1.0, 0.0,
       1.0 / 6.0, 0.5, 1.0, 1.0;
  return t;
}

Matrix s_matrix(double C, double d) {
  Matrix s = Matrix::Identity(4, 4);
  s(0, 1) = -C / 12.0;
  s(0, 3) = -d;
  return s;
}

monodromy::MonodromySet monodromy_set(double C, double d) {
  return monodromy::from_explicit(t_matrix(), s_matrix(C, d));
}

namespace {

// a = C/12 + d/6 - 4, b = -C/6 + 2d/3 + 6, exactly.
std::pair<Rational, Rational> exact_coefficients(double C, double d) {
  const Rational c(C);
  const Rational dd(d);
  const Rational a = c / 12 + dd / 6 - 4;
  const Rational b = -c / 6 + dd * 2 / 3 + 6;
  return {a, b};
}

constexpr double kSnapTolerance = 1e-12;

double fold(double s) {
  // s = 2 cos(2 pi mu) with mu in [0, 1/2]
  const double half = std::clamp(s / 2.0, -1.0, 1.0);
  return std::acos(half) / (2.0 * std::numbers::pi);
}

}  // namespace

std::pair<double, double> char_poly(double C, double d) {
  const auto [a, b] = exact_coefficients(C, d);
  return {static_cast<double>(a), static_cast<double>(b)};
}

Mu cy_mu(double C, double d) {
  if (!std::isfinite(C) || !std::isfinite(d)) throw Error(ErrorCode::InvalidParams, "non-finite (C, d)");
  // With s = t + 1/t the palindromic quartic becomes s^2 + a s + (b - 2) = 0.
  const auto [a, b] = exact_coefficients(C, d);
  Rational disc = a * a - 4 * (b - 2);
  const double disc_d = static_cast<double>(disc);
  // (C, d) given as doubles cannot resolve a double root below ~1e-12, so
  // such discriminants are snapped to zero.
  if (std::abs(disc_d) < kSnapTolerance) {
    disc = 0;
  } else if (disc < 0) {
    throw Error(ErrorCode::NonUnimodular, "complex s: eigenvalues off the unit circle");
  }
  const double root = std::sqrt(static_cast<double>(disc));
  const double ad = static_cast<double>(a);
  double s1 = (-ad - root) / 2.0;
  double s2 = (-ad + root) / 2.0;
  // Recompute the smaller-magnitude root from the product to avoid
  // cancellation. A snapped double root keeps -a / 2 for both.
  if (disc != 0) {
    const double prod = static_cast<double>(b - 2);
    if (std::abs(s1) >= std::abs(s2)) s2 = prod / s1;
    else s1 = prod / s2;
  }

  for (double* s : {&s1, &s2}) {
    if (std::abs(std::abs(*s) - 2.0) < kSnapTolerance) *s = std::copysign(2.0, *s);
  }
  for (double s : {s1, s2}) {
    if (std::abs(s) > 2.0) {
      // real t with t + 1/t = s; |t| deviates from 1
      const double t = (std::abs(s) + std::sqrt(s * s - 4.0)) / 2.0;
      if (t - 1.0 > kUnimodularTolerance) {
        throw Error(ErrorCode::NonUnimodular, "eigenvalue of modulus " + std::to_string(t));
      }
    }
  }
  Mu mu{fold(s1), fold(s2)};
  if (mu.mu1 > mu.mu2) std::swap(mu.mu1, mu.mu2);
  return mu;
}

Realization realize_mu(double mu1, double mu2) {
  if (!(mu1 > 0.0 && mu1 <= mu2 && mu2 <= 0.5)) {
    throw Error(ErrorCode::NoRealization, "need 0 < mu1 <= mu2 <= 1/2");
  }
  const double s1 = 2.0 * std::cos(2.0 * std::numbers::pi * mu1);
  const double s2 = 2.0 * std::cos(2.0 * std::numbers::pi * mu2);
  const double a = -(s1 + s2);
  const double b = s1 * s2 + 2.0;
  Realization r;
  r.d = 2.0 * a + b + 2.0;
  r.C = 12.0 * (a + 4.0 - r.d / 6.0);
  Mu back;
  try {
    back = cy_mu(r.C, r.d);
  } catch (const Error& e) {
    throw Error(ErrorCode::NoRealization, std::string("round trip failed: ") + e.what());
  }
  if (std::abs(back.mu1 - mu1) > 1e-9 || std::abs(back.mu2 - mu2) > 1e-9) {
    throw Error(ErrorCode::NoRealization, "round trip misses the target spectrum by more than 1e-9");
  }
  return r;
}

}  // namespace hyplyap::calabi_yau
