#pragma once

#include <cstdint>
#include <vector>

#include "hyplyap/monodromy.hpp"

namespace hyplyap::spectral {

// Numerical eigenvalues grouped into clusters of diameter ~tol; every member
// of a cluster is replaced by the cluster mean projected to the unit circle.
// Intended for quasi-unipotent matrices whose repeated eigenvalues scatter
// by eps^(1/m) in floating point.
Spectrum unit_clusters(const Matrix& a, double tol = 1e-3);

// Divided differences t^k[z_0], t^k[z_0, z_1], ..., t^k[z_0..z_{m-1}].
std::vector<Complex> power_divided_differences(const Spectrum& nodes, std::uint64_t k);

// A^k evaluated as the Hermite interpolant of t^k on the given nodes (the
// roots of a polynomial annihilating A, with multiplicity). Exact when the
// nodes are the exact spectrum, and stable for non-semisimple A with a
// slightly perturbed one.
Matrix hermite_power(const Matrix& a, const Spectrum& nodes, std::uint64_t k);

// Lowers the multiplicity of repeated nodes while prod (A - z_i) stays
// below tol relative to its scale, giving the roots of the minimal
// polynomial. High powers then avoid amplifying rounding in nilpotent parts
// that vanish exactly, such as (S - 1)^2 for a transvection S.
Spectrum minimal_nodes(const Matrix& a, const Spectrum& nodes, double tol = 1e-9);

// A together with its spectrum and a cache of low powers.
class PowerTable {
public:
  PowerTable() = default;
  PowerTable(Matrix a, Spectrum nodes, int cached = 32);

  const Matrix& base() const { return powers_[1]; }
  const Spectrum& nodes() const { return nodes_; }
  int cached() const { return static_cast<int>(powers_.size()) - 1; }

  Matrix power(std::uint64_t k) const;
  const Matrix& cached_power(int k) const { return powers_[static_cast<std::size_t>(k)]; }

private:
  Spectrum nodes_;
  std::vector<Matrix> powers_;
};

}  // namespace hyplyap::spectral
