#include "hyplyap/spectral_power.hpp"

#include <cmath>

#include "hyplyap/error.hpp"

namespace hyplyap::spectral {

Spectrum unit_clusters(const Matrix& a, double tol) {
  Spectrum pending = monodromy::eigenvalues(a);
  Spectrum out;
  out.reserve(pending.size());
  while (!pending.empty()) {
    const Complex seed = pending.front();
    Spectrum group;
    Spectrum rest;
    for (const Complex& z : pending) {
      (std::abs(z - seed) < tol ? group : rest).push_back(z);
    }
    Complex mean(0.0, 0.0);
    for (const Complex& z : group) mean += z;
    mean /= static_cast<double>(group.size());
    const double modulus = std::abs(mean);
    const Complex projected = modulus > 0.0 ? mean / modulus : mean;
    out.insert(out.end(), group.size(), projected);
    pending = std::move(rest);
  }
  return out;
}

std::vector<Complex> power_divided_differences(const Spectrum& nodes, std::uint64_t k) {
  // Opitz: f(Z) for the bidiagonal Z = diag(z) + superdiagonal ones has first
  // row f[z_0], f[z_0, z_1], ...; Z^k by binary powering.
  const auto m = static_cast<Eigen::Index>(nodes.size());
  if (m == 0) return {};
  Matrix z = Matrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    z(i, i) = nodes[static_cast<std::size_t>(i)];
    if (i + 1 < m) z(i, i + 1) = 1.0;
  }
  Matrix result = Matrix::Identity(m, m);
  Matrix base = z;
  while (k > 0) {
    if (k & 1U) result = (result * base).eval().triangularView<Eigen::Upper>();
    k >>= 1U;
    if (k > 0) base = (base * base).eval().triangularView<Eigen::Upper>();
  }
  const Eigen::RowVectorXcd row = result.row(0);
  return std::vector<Complex>(row.data(), row.data() + row.size());
}

Matrix hermite_power(const Matrix& a, const Spectrum& nodes, std::uint64_t k) {
  const auto n = a.rows();
  const auto m = static_cast<Eigen::Index>(nodes.size());
  if (a.cols() != n || m > n || (n > 0 && m == 0)) {
    throw Error(ErrorCode::InvalidParams, "hermite_power needs a square matrix and at most one node per eigenvalue");
  }
  if (n == 0) return a;
  const std::vector<Complex> dd = power_divided_differences(nodes, k);
  // Newton form evaluated by Horner's rule.
  const Matrix identity = Matrix::Identity(n, n);
  Matrix r = dd[static_cast<std::size_t>(m - 1)] * identity;
  for (Eigen::Index j = m - 2; j >= 0; --j) {
    const auto js = static_cast<std::size_t>(j);
    Matrix shifted = a;
    shifted.diagonal().array() -= nodes[js];
    r = (shifted * r).eval();
    r.diagonal().array() += dd[js];
  }
  return r;
}

namespace {

double annihilator_residual(const Matrix& a, const std::vector<Complex>& values, const std::vector<int>& mult) {
  const auto n = a.rows();
  const double norm = a.norm();
  Matrix prod = Matrix::Identity(n, n);
  double scale = 1.0;
  for (std::size_t c = 0; c < values.size(); ++c) {
    Matrix shifted = a;
    shifted.diagonal().array() -= values[c];
    for (int j = 0; j < mult[c]; ++j) {
      prod = (prod * shifted).eval();
      scale *= norm + std::abs(values[c]);
    }
  }
  return prod.norm() / scale;
}

}  // namespace

Spectrum minimal_nodes(const Matrix& a, const Spectrum& nodes, double tol) {
  std::vector<Complex> values;
  std::vector<int> mult;
  for (const Complex& z : nodes) {
    std::size_t c = 0;
    while (c < values.size() && std::abs(values[c] - z) > 1e-12) ++c;
    if (c == values.size()) {
      values.push_back(z);
      mult.push_back(0);
    }
    ++mult[c];
  }
  if (annihilator_residual(a, values, mult) > tol) return nodes;
  for (std::size_t c = 0; c < values.size(); ++c) {
    while (mult[c] > 1) {
      --mult[c];
      if (annihilator_residual(a, values, mult) > tol) {
        ++mult[c];
        break;
      }
    }
  }
  Spectrum out;
  for (std::size_t c = 0; c < values.size(); ++c) out.insert(out.end(), static_cast<std::size_t>(mult[c]), values[c]);
  return out;
}

PowerTable::PowerTable(Matrix a, Spectrum nodes, int cached) : nodes_(minimal_nodes(a, nodes)) {
  if (cached < 1) cached = 1;
  const auto n = a.rows();
  powers_.reserve(static_cast<std::size_t>(cached) + 1);
  powers_.push_back(Matrix::Identity(n, n));
  powers_.push_back(std::move(a));
  for (int j = 2; j <= cached; ++j) powers_.push_back(powers_[1] * powers_.back());
}

Matrix PowerTable::power(std::uint64_t k) const {
  if (k < powers_.size()) return powers_[static_cast<std::size_t>(k)];
  return hermite_power(powers_[1], nodes_, k);
}

}  // namespace hyplyap::spectral
