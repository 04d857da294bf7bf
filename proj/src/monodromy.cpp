#include "hyplyap/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hyplyap/error.hpp"

namespace hyplyap::monodromy {

Complex unit(double t) {
  const double angle = 2.0 * std::numbers::pi * t;
  return {std::cos(angle), std::sin(angle)};
}

Complex det_diag_plus_rank_one(const Vector& d, const Vector& x) {
  // prod(d) + sum_i x_i prod_{j != i} d_j, via prefix and suffix products so
  // that vanishing d_i need no special case.
  const Eigen::Index n = d.size();
  if (x.size() != n) throw Error(ErrorCode::InvalidParams, "d and x must have the same length");
  std::vector<Complex> suffix(static_cast<std::size_t>(n) + 1, Complex(1.0, 0.0));
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    suffix[static_cast<std::size_t>(i)] = suffix[static_cast<std::size_t>(i) + 1] * d(i);
  }
  Complex prefix(1.0, 0.0);
  Complex sum(0.0, 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    sum += x(i) * prefix * suffix[static_cast<std::size_t>(i) + 1];
    prefix *= d(i);
  }
  return prefix + sum;
}

namespace {

double max_modulus_defect(const Spectrum& values) {
  double worst = 0.0;
  for (const Complex& z : values) worst = std::max(worst, std::abs(std::abs(z) - 1.0));
  return worst;
}

double inf_norm(const Matrix& a) {
  return a.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace

Spectrum eigenvalues(const Matrix& a) {
  Eigen::ComplexEigenSolver<Matrix> solver(a, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::SingularMatrix, "eigenvalue iteration did not converge");
  }
  const Vector& ev = solver.eigenvalues();
  return Spectrum(ev.data(), ev.data() + ev.size());
}

MonodromySet build(const HGParams& params) {
  const int n = params.n;
  if (n < 1 || static_cast<int>(params.alpha.size()) != n || static_cast<int>(params.beta.size()) != n) {
    throw Error(ErrorCode::InvalidParams, "inconsistent parameter lists");
  }
  if (params.min_separation() <= HGParams::kDistinctTolerance) {
    throw Error(ErrorCode::InvalidParams, "parameters must be pairwise distinct mod 1");
  }

  Vector a(n), b(n);
  for (int i = 0; i < n; ++i) {
    a(i) = unit(params.alpha[static_cast<std::size_t>(i)]);
    b(i) = unit(params.beta[static_cast<std::size_t>(i)]);
  }

  Matrix N(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) N(i, j) = 1.0 / (b(j) - a(i));
  }

  const Matrix Nt = N.transpose();
  Eigen::PartialPivLU<Matrix> lu(Nt);
  const double rcond = lu.rcond();
  const double condition = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!(condition <= kMaxCondition)) {
    throw Error(ErrorCode::SingularSystem,
                "condition estimate " + std::to_string(condition) + " exceeds 1e12 for " + to_string(params));
  }
  const Vector w = lu.solve(Vector::Ones(n));

  MonodromySet ms;
  ms.n = n;
  ms.m0 = a.asDiagonal();
  const Vector m0_inv_ones = a.cwiseInverse();
  ms.m1 = Matrix::Identity(n, n) + m0_inv_ones * w.transpose();
  const Matrix m0m1 = ms.m0 * ms.m1;
  Eigen::PartialPivLU<Matrix> lu01(m0m1);
  ms.minf = lu01.inverse();
  ms.trace = ConstructionTrace{N, w, condition};

  // det(M1) = e^{2 pi i (sum beta - sum alpha)}; the other n - 1 eigenvalues are 1.
  double gamma = 0.0;
  for (int i = 0; i < n; ++i) {
    gamma += params.beta[static_cast<std::size_t>(i)] - params.alpha[static_cast<std::size_t>(i)];
  }
  ExactSpectra spectra;
  for (int i = 0; i < n; ++i) {
    spectra.m0.push_back(a(i));
    spectra.minf.push_back(std::conj(b(i)));
  }
  spectra.m1.assign(static_cast<std::size_t>(n - 1), Complex(1.0, 0.0));
  spectra.m1.push_back(unit(gamma));
  ms.spectra = std::move(spectra);
  ms.modulus_defect = 0.0;
  return ms;
}

MonodromySet from_explicit(const Matrix& m0, const Matrix& m1) {
  if (m0.rows() != m0.cols() || m1.rows() != m1.cols() || m0.rows() != m1.rows() || m0.rows() == 0) {
    throw Error(ErrorCode::InvalidParams, "m0 and m1 must be square matrices of equal size");
  }
  const Matrix m0m1 = m0 * m1;
  Eigen::PartialPivLU<Matrix> lu(m0m1);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14)) throw Error(ErrorCode::SingularMatrix, "m0 * m1 is not invertible");

  MonodromySet ms;
  ms.n = static_cast<int>(m0.rows());
  ms.m0 = m0;
  ms.m1 = m1;
  ms.minf = lu.inverse();
  ms.modulus_defect = std::max(max_modulus_defect(eigenvalues(ms.m0)), max_modulus_defect(eigenvalues(ms.minf)));
  return ms;
}

double relation_residual(const MonodromySet& ms) {
  return inf_norm(ms.minf * ms.m0 * ms.m1 - Matrix::Identity(ms.n, ms.n));
}

int numerical_rank(const Matrix& a, double tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  const double scale = std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol * scale) ++rank;
  }
  return rank;
}

double hausdorff_distance(const Spectrum& a, const Spectrum& b) {
  if (a.empty() || b.empty()) {
    return a.empty() && b.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  }
  auto directed = [](const Spectrum& from, const Spectrum& to) {
    double worst = 0.0;
    for (const Complex& z : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const Complex& u : to) best = std::min(best, std::abs(z - u));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

VerifyReport verify(const MonodromySet& ms, const HGParams& params) {
  if (ms.n != params.n) throw Error(ErrorCode::InvalidParams, "dimension mismatch between monodromy and parameters");
  VerifyReport report;
  const double condition = ms.trace ? ms.trace->condition_estimate : 1.0;

  report.relation.value = relation_residual(ms);
  report.relation.tolerance = kRelationTolerance * std::max(1.0, condition);
  report.relation.pass = report.relation.value <= report.relation.tolerance;

  Spectrum expected_m0, expected_minf;
  for (double v : params.alpha) expected_m0.push_back(unit(v));
  for (double v : params.beta) expected_minf.push_back(unit(-v));

  report.m0_spectrum.value = hausdorff_distance(eigenvalues(ms.m0), expected_m0);
  report.m0_spectrum.tolerance = kEigenTolerance;
  report.m0_spectrum.pass = report.m0_spectrum.value <= kEigenTolerance;

  report.minf_spectrum.value = hausdorff_distance(eigenvalues(ms.minf), expected_minf);
  report.minf_spectrum.tolerance = kEigenTolerance;
  report.minf_spectrum.pass = report.minf_spectrum.value <= kEigenTolerance;

  report.m1_rank = numerical_rank(ms.m1 - Matrix::Identity(ms.n, ms.n));
  report.rank_pass = report.m1_rank == 1;
  return report;
}

}  // namespace hyplyap::monodromy
