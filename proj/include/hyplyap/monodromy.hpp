#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "hyplyap/params.hpp"

namespace hyplyap {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Spectrum = std::vector<Complex>;

namespace monodromy {

// Data of the generic construction: N_ij = 1/(e(beta_j) - e(alpha_i)) and the
// solution w of w^T N = 1^T.
struct ConstructionTrace {
  Matrix N;
  Vector w;
  double condition_estimate = 1.0;
};

// Eigenvalues (with multiplicity) known in closed form from the parameters.
struct ExactSpectra {
  Spectrum m0;
  Spectrum m1;
  Spectrum minf;
};

// (M0, M1, Minf) with Minf * M0 * M1 = Id.
struct MonodromySet {
  int n = 0;
  Matrix m0;
  Matrix m1;
  Matrix minf;
  std::optional<ConstructionTrace> trace;
  std::optional<ExactSpectra> spectra;
  // Largest | |lambda| - 1 | over eigenvalues of m0 and minf; reported by
  // from_explicit, not enforced.
  double modulus_defect = 0.0;
};

inline constexpr double kRelationTolerance = 1e-9;
inline constexpr double kRankTolerance = 1e-8;
inline constexpr double kEigenTolerance = 1e-7;
inline constexpr double kModulusTolerance = 1e-8;
inline constexpr double kMaxCondition = 1e12;

// e^{2 pi i t}
Complex unit(double t);

// det(diag(d) + 1 x^T), exact also when some d_i vanish.
Complex det_diag_plus_rank_one(const Vector& d, const Vector& x);

// Throws Error(SingularSystem) when N is numerically singular.
MonodromySet build(const HGParams& params);

// Throws Error(SingularMatrix) when m0 * m1 is not invertible.
MonodromySet from_explicit(const Matrix& m0, const Matrix& m1);

// ||Minf M0 M1 - Id||_inf
double relation_residual(const MonodromySet& ms);

// Number of singular values above tol * max(1, sigma_max).
int numerical_rank(const Matrix& a, double tol = kRankTolerance);

// Hausdorff distance between two finite subsets of the complex plane.
double hausdorff_distance(const Spectrum& a, const Spectrum& b);

Spectrum eigenvalues(const Matrix& a);

struct Check {
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyReport {
  Check relation;
  Check m0_spectrum;
  Check minf_spectrum;
  int m1_rank = 0;
  bool rank_pass = false;

  bool all_pass() const {
    return relation.pass && m0_spectrum.pass && minf_spectrum.pass && rank_pass;
  }
};

VerifyReport verify(const MonodromySet& ms, const HGParams& params);

}  // namespace monodromy
}  // namespace hyplyap
