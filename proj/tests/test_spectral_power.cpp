#include <doctest.h>

#include <cmath>
#include <random>

#include "hyplyap/calabi_yau.hpp"
#include "hyplyap/spectral_power.hpp"

using namespace hyplyap;
using namespace hyplyap::spectral;

namespace {

double binomial(std::uint64_t k, int j) {
  double out = 1.0;
  for (int i = 0; i < j; ++i) out = out * static_cast<double>(k - static_cast<std::uint64_t>(i)) / (i + 1);
  return out;
}

// (lambda I + N)^k = sum_j C(k, j) lambda^{k-j} N^j with N nilpotent.
Matrix binomial_power(const Matrix& nilpotent, Complex lambda, std::uint64_t k) {
  const auto n = nilpotent.rows();
  Matrix out = Matrix::Zero(n, n);
  Matrix npow = Matrix::Identity(n, n);
  for (int j = 0; j < n && static_cast<std::uint64_t>(j) <= k; ++j) {
    out += binomial(k, j) * std::pow(lambda, static_cast<double>(k - static_cast<std::uint64_t>(j))) * npow;
    npow = (npow * nilpotent).eval();
  }
  return out;
}

Matrix plain_power(const Matrix& a, std::uint64_t k) {
  Matrix out = Matrix::Identity(a.rows(), a.cols());
  for (std::uint64_t i = 0; i < k; ++i) out = (out * a).eval();
  return out;
}

double rel_error(const Matrix& got, const Matrix& expected) {
  return (got - expected).norm() / std::max(1.0, expected.norm());
}

}  // namespace

TEST_CASE("divided differences of t^k") {
  // t^k[z, z] = k z^{k-1}; t^k[a, b] = (a^k - b^k) / (a - b)
  const Complex z = std::polar(1.0, 0.7);
  const auto dd = power_divided_differences({z, z}, 9);
  CHECK(std::abs(dd[0] - std::pow(z, 9)) < 1e-12);
  CHECK(std::abs(dd[1] - 9.0 * std::pow(z, 8)) < 1e-12);
  const Complex a = std::polar(1.0, 0.3), b = std::polar(1.0, 1.9);
  const auto dd2 = power_divided_differences({a, b}, 7);
  CHECK(std::abs(dd2[1] - (std::pow(a, 7) - std::pow(b, 7)) / (a - b)) < 1e-12);
}

TEST_CASE("hermite_power reproduces Jordan block powers exactly") {
  const int n = 4;
  Matrix nil = Matrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) nil(i, i + 1) = 1.0;
  const Complex lambda = std::polar(1.0, 2.0 * 3.141592653589793 / 5.0);
  const Matrix j = lambda * Matrix::Identity(n, n) + nil;
  for (std::uint64_t k : {0ULL, 1ULL, 2ULL, 7ULL, 33ULL, 1000ULL, 123457ULL}) {
    const Matrix got = hermite_power(j, Spectrum(n, lambda), k);
    CHECK(rel_error(got, binomial_power(nil, lambda, k)) < 1e-10);
  }
}

TEST_CASE("hermite_power on the unipotent Calabi-Yau T") {
  const Matrix t = calabi_yau::t_matrix();
  const Matrix nil = t - Matrix::Identity(4, 4);
  for (std::uint64_t k : {3ULL, 100ULL, 99991ULL, (1ULL << 31)}) {
    const Matrix got = hermite_power(t, Spectrum(4, Complex(1.0, 0.0)), k);
    CHECK(rel_error(got, binomial_power(nil, 1.0, k)) < 1e-12);
  }
}

TEST_CASE("hermite_power matches repeated multiplication for semisimple matrices") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 6.283185307179586);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 4;
    Matrix p(n, n);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) p(i, k) = Complex(g(rng), g(rng));
    }
    Spectrum nodes;
    Vector diag(n);
    for (int i = 0; i < n; ++i) {
      nodes.push_back(std::polar(1.0, u(rng)));
      diag(i) = nodes.back();
    }
    const Matrix a = p * diag.asDiagonal() * p.inverse();
    for (std::uint64_t k : {5ULL, 40ULL, 300ULL}) {
      CHECK(rel_error(hermite_power(a, nodes, k), plain_power(a, k)) < 1e-8);
    }
  }
}

TEST_CASE("unit_clusters groups a perturbed repeated eigenvalue") {
  const Spectrum nodes = unit_clusters(calabi_yau::t_matrix());
  REQUIRE(nodes.size() == 4);
  for (const Complex& z : nodes) CHECK(std::abs(z - 1.0) < 1e-12);
}

TEST_CASE("PowerTable uses the cache below its size and interpolation above") {
  const Matrix t = calabi_yau::t_matrix();
  const PowerTable table(t, Spectrum(4, Complex(1.0, 0.0)), 8);
  CHECK(table.cached() == 8);
  CHECK(rel_error(table.power(5), plain_power(t, 5)) < 1e-14);
  CHECK(rel_error(table.power(50), plain_power(t, 50)) < 1e-12);
}

TEST_CASE("minimal_nodes finds the minimal polynomial") {
  const Matrix t = calabi_yau::t_matrix();
  CHECK(minimal_nodes(t, Spectrum(4, Complex(1.0, 0.0))).size() == 4);
  const Matrix s = calabi_yau::s_matrix(46, 1);
  CHECK(minimal_nodes(s, Spectrum(4, Complex(1.0, 0.0))).size() == 2);
  Matrix d = Matrix::Identity(3, 3);
  const Complex lambda = std::polar(1.0, 1.0);
  d(2, 2) = lambda;
  const Spectrum reduced = minimal_nodes(d, {1.0, 1.0, lambda});
  REQUIRE(reduced.size() == 2);
  CHECK(std::abs(reduced[1] - lambda) < 1e-15);
  // a wrong spectrum is returned unchanged
  CHECK(minimal_nodes(d, {1.0, 1.0, 1.0}).size() == 3);
}

TEST_CASE("high powers of a transvection stay unimodular") {
  const Matrix s = calabi_yau::s_matrix(8.87539, 0.145898);
  const PowerTable table(s, Spectrum(4, Complex(1.0, 0.0)));
  const Matrix p = table.power(1'000'000);
  CHECK(std::abs(p.determinant() - 1.0) < 1e-9);
  const Matrix nil = s - Matrix::Identity(4, 4);
  CHECK(rel_error(p, Matrix::Identity(4, 4) + 1e6 * nil) < 1e-9);
}
