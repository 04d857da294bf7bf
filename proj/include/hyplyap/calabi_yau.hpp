#pragma once

#include <utility>

#include "hyplyap/monodromy.hpp"

namespace hyplyap::calabi_yau {

// Unipotent T (maximal Jordan block) and the symplectic transvection S for
// the invariants (C, d).
Matrix t_matrix();
Matrix s_matrix(double C, double d);

// from_explicit(T, S).
monodromy::MonodromySet monodromy_set(double C, double d);

// Coefficients of the reciprocal characteristic polynomial
// t^4 + a t^3 + b t^2 + a t + 1 of (TS)^{-1}.
std::pair<double, double> char_poly(double C, double d);

struct Mu {
  double mu1 = 0.0;
  double mu2 = 0.0;
};

inline constexpr double kUnimodularTolerance = 1e-6;

// Eigenvalue arguments / 2 pi of (TS)^{-1}, folded to (0, 1/2] and sorted.
// Computed from the characteristic polynomial in exact rational arithmetic.
// Throws Error(NonUnimodular) when an eigenvalue leaves the unit circle.
Mu cy_mu(double C, double d);

struct Realization {
  double C = 0.0;
  double d = 0.0;
};

// Real (C, d) whose (TS)^{-1} has spectrum exp(+-2 pi i mu1), exp(+-2 pi i mu2).
// Throws Error(NoRealization) when the round trip through cy_mu misses by
// more than 1e-9 or the request is outside 0 < mu1 <= mu2 <= 1/2.
Realization realize_mu(double mu1, double mu2);

}  // namespace hyplyap::calabi_yau
