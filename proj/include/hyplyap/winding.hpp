#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyplyap/geodesic.hpp"
#include "hyplyap/monodromy.hpp"
#include "hyplyap/spectral_power.hpp"

namespace hyplyap::winding {

// Exact 2x2 integer matrix [[a, b], [c, d]].
struct IntMat2 {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  friend IntMat2 operator*(const IntMat2& p, const IntMat2& q) {
    return {p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d, p.c * q.a + p.d * q.c, p.c * q.b + p.d * q.d};
  }
  friend bool operator==(const IntMat2&, const IntMat2&) = default;

  IntMat2 operator-() const { return {-a, -b, -c, -d}; }
  std::int64_t det() const { return a * d - b * c; }
  // Inverse of a determinant-one matrix.
  IntMat2 inverse() const { return {d, -b, -c, a}; }
};

// Free generators of Gamma(2)/{+-1}: x = [[1,2],[0,1]] fixes the cusp at
// infinity, y = [[1,0],[2,1]] fixes the cusp 0.
enum class Gen : std::uint8_t { X, Y };

struct Syllable {
  Gen gen = Gen::X;
  std::int64_t exp = 0;
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

using Gamma2Word = std::vector<Syllable>;

// Right cosets of Gamma(2) in SL(2,Z), with transversal {Id, L, R, LR, RL, LRL}.
enum class Coset : std::uint8_t { Id, L, R, LR, RL, LRL };
inline constexpr int kCosetCount = 6;

// Cusps of the thrice-punctured sphere: A at infinity, B at 0, C at 1.
enum class Cusp : std::uint8_t { A, B, C };

IntMat2 letter_matrix(Letter x);
IntMat2 generator_matrix(Gen g);
IntMat2 transversal(Coset c);
Coset coset_of(const IntMat2& m);
std::string to_string(Coset c);
char to_char(Cusp c);

// Appends with free reduction (merging equal generators, dropping zeros).
void append(Gamma2Word& word, Syllable s);
Gamma2Word concat(const Gamma2Word& u, const Gamma2Word& v);
Gamma2Word inverse(const Gamma2Word& w);
Gamma2Word cyclic_reduce(Gamma2Word w);
bool is_reduced(const Gamma2Word& w);
std::string to_string(const Gamma2Word& w);

// Exact evaluation in int64; callers keep words short.
IntMat2 to_matrix(const Gamma2Word& w);

// Writes g in Gamma(2) as +-(reduced word). Throws TableInconsistent when
// g is not congruent to the identity mod 2 or has determinant != 1.
Gamma2Word decompose(const IntMat2& g);

struct StepEntry {
  Gamma2Word gamma;
  Coset next = Coset::Id;
};

// c * X = gamma * next for each of the 12 pairs (c, X).
class StepTable {
public:
  const StepEntry& at(Coset c, Letter x) const {
    return entries_[static_cast<std::size_t>(c) * 2 + static_cast<std::size_t>(x)];
  }

private:
  friend StepTable build_step_table();
  std::array<StepEntry, 12> entries_{};
};

// Builds and verifies the table by exact integer multiplication.
StepTable build_step_table();
const StepTable& step_table();

struct StepResult {
  Gamma2Word gamma;
  Coset next = Coset::Id;
};

StepResult step(Coset c, Letter x);

struct WindingEvent {
  Cusp cusp = Cusp::A;
  std::int64_t turns = 0;
  std::optional<Letter> residual;
};

// Cusp and signed full turns of a run of m letters x starting at coset c.
WindingEvent classify_run(Coset c, Letter x, std::uint64_t m);

// Coset reached after a run of m letters x from c.
Coset run_next(Coset c, Letter x, std::uint64_t m);

// rho(x) = Minf^{-1}, rho(y) = M0, with the spectra of rho(x), rho(y) and
// rho(x y^{-1}) when they are known exactly.
struct Representation {
  Matrix x, y, x_inv, y_inv;
  std::optional<std::array<Spectrum, 3>> spectra;
};

Representation representation(const monodromy::MonodromySet& ms);

Matrix evaluate(const Representation& rho, const Gamma2Word& w);

// Precomputed rho images of the step table, of the squares c X^2 c^{-1} and
// of their inverses, so that a run costs O(log m).
class RunEngine {
public:
  explicit RunEngine(const Representation& rho, int cached = 32);
  explicit RunEngine(const monodromy::MonodromySet& ms, int cached = 32)
      : RunEngine(representation(ms), cached) {}

  int n() const { return n_; }

  // rho(gamma_run) for the run of m letters x from c.
  Matrix run_matrix(Coset c, Letter x, std::uint64_t m) const;

  // rho(gamma_run)^{-1}, the parallel transport along the run; advances c.
  // Returns a cached matrix or writes into scratch.
  const Matrix& transport(Coset& c, Letter x, std::uint64_t m, Matrix& scratch) const;

  // rho(gamma_run)^H, the transport of the dual cocycle (inverse adjoint).
  // Its singular values are the reciprocals of those of transport().
  const Matrix& dual_transport(Coset c, Letter x, std::uint64_t m, Matrix& scratch) const;

  const Spectrum& square_nodes(Coset c, Letter x) const { return at(c, x).square.nodes(); }

private:
  struct Entry {
    Coset next = Coset::Id;
    Matrix step;
    Matrix step_inv;
    spectral::PowerTable square;
    spectral::PowerTable square_inv;
    // transport_small[m] = rho(gamma_run)^{-1} for m <= 2 * cached + 1.
    std::vector<Matrix> transport_small;
    std::vector<Matrix> dual_small;
  };
  const Entry& at(Coset c, Letter x) const {
    return entries_[static_cast<std::size_t>(c) * 2 + static_cast<std::size_t>(x)];
  }

  int n_ = 0;
  std::array<Entry, 12> entries_;
};

struct RunResult {
  Matrix matrix;
  WindingEvent event;
  Coset next = Coset::Id;
};

RunResult run_to_monodromy(Coset c, Letter x, std::uint64_t m, const RunEngine& engine);

// Diagnostic view: labels (left, right, opposite) of the current Farey
// triangle and its colour.
struct TriangleState {
  std::array<Cusp, 3> labels{Cusp::A, Cusp::B, Cusp::C};
  bool blue = false;
  friend bool operator==(const TriangleState&, const TriangleState&) = default;
};

TriangleState triangle_step(const TriangleState& t, Letter x);

// The triangle whose labels agree with the coset automaton at c.
TriangleState matched_triangle(Coset c);

// Mod 2 class of an integer vector: (odd, even) -> A, (even, odd) -> B,
// (odd, odd) -> C.
Cusp cusp_class(std::int64_t p, std::int64_t q);

}  // namespace hyplyap::winding
