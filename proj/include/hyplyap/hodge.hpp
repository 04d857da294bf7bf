#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyplyap/params.hpp"

namespace hyplyap::hodge {

enum class Kind : std::uint8_t { Alpha, Beta };

struct Marker {
  double value = 0.0;  // representative in [alpha_star, alpha_star + 1)
  Kind kind = Kind::Alpha;
  int f = 0;
  int appearance = 0;  // 1..n within its kind, in cyclic order from alpha_star
  int index = 0;       // position in the input list
};

// Intertwining diagram of the cyclically ordered markers.
struct Diagram {
  int n = 0;
  std::vector<Marker> entries;  // cyclic order starting at alpha_star
  double alpha_star = 0.0;
  std::vector<int> h;  // h[i - 1] = h_i, i = 1..n
  double gamma = 0.0;
  int gamma_floor = 0;
  double gamma_frac = 0.0;
  int p = 0;  // sum of h_i over even i
  int q = 0;  // sum of h_i over odd i
  std::vector<int> f_alpha;  // by input index
  std::vector<int> f_beta;   // by input index
};

inline constexpr double kIntegerGammaTolerance = 1e-12;

// Throws Error(IntegerGamma) on the walls where gamma is an integer.
Diagram analyze(const HGParams& params);

enum class Singularity : std::uint8_t { Zero, One, Infinity };
std::string to_string(Singularity s);

// Dimension nu of the graded piece of level `level` on the eigenspace of the
// local monodromy at `singularity` with jump `jump` in [0, 1).
struct LocalEntry {
  Singularity singularity = Singularity::Zero;
  double jump = 0.0;
  int level = 0;
  int nu = 0;
};

struct LocalInvariants {
  int n = 0;
  std::vector<LocalEntry> entries;  // sorted by (singularity, level, jump)
  std::vector<int> totals;          // totals[p - 1] = h^p

  // Sum of nu at a singularity and level.
  int level_total(Singularity s, int level) const;
};

// Same entries up to tol on the jumps.
bool equivalent(const LocalInvariants& a, const LocalInvariants& b, double tol = 1e-9);

LocalInvariants local_invariants(const Diagram& d);

struct DegreeReport {
  std::vector<int> delta;       // delta[p - 1] = delta^p <= 0
  std::vector<double> deg_par;  // deg_par[p - 1]
};

DegreeReport parabolic_degrees(const Diagram& d);

// Local invariants recomputed by removing (alpha, beta) pairs one at a time
// and lifting the levels of the smaller problem, without using the walk f.
LocalInvariants ds_recursion_oracle(const HGParams& params);

// |p - q|: the number of exponents forced to vanish.
int signature_zeros(const Diagram& d);

}  // namespace hyplyap::hodge
