#include "hyplyap/winding.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "hyplyap/error.hpp"

namespace hyplyap::winding {

IntMat2 letter_matrix(Letter x) {
  return x == Letter::L ? IntMat2{1, 0, 1, 1} : IntMat2{1, 1, 0, 1};
}

IntMat2 generator_matrix(Gen g) {
  return g == Gen::X ? IntMat2{1, 2, 0, 1} : IntMat2{1, 0, 2, 1};
}

IntMat2 transversal(Coset c) {
  const IntMat2 l = letter_matrix(Letter::L);
  const IntMat2 r = letter_matrix(Letter::R);
  switch (c) {
    case Coset::Id: return {};
    case Coset::L: return l;
    case Coset::R: return r;
    case Coset::LR: return l * r;
    case Coset::RL: return r * l;
    case Coset::LRL: return l * r * l;
  }
  return {};
}

namespace {

int mod2(std::int64_t v) { return static_cast<int>(((v % 2) + 2) % 2); }

int residue_key(const IntMat2& m) {
  return mod2(m.a) * 8 + mod2(m.b) * 4 + mod2(m.c) * 2 + mod2(m.d);
}

}  // namespace

Coset coset_of(const IntMat2& m) {
  const int key = residue_key(m);
  for (int i = 0; i < kCosetCount; ++i) {
    const auto c = static_cast<Coset>(i);
    if (residue_key(transversal(c)) == key) return c;
  }
  throw Error(ErrorCode::TableInconsistent, "matrix is not invertible mod 2");
}

std::string to_string(Coset c) {
  switch (c) {
    case Coset::Id: return "Id";
    case Coset::L: return "L";
    case Coset::R: return "R";
    case Coset::LR: return "LR";
    case Coset::RL: return "RL";
    case Coset::LRL: return "LRL";
  }
  return "?";
}

char to_char(Cusp c) {
  switch (c) {
    case Cusp::A: return 'A';
    case Cusp::B: return 'B';
    case Cusp::C: return 'C';
  }
  return '?';
}

void append(Gamma2Word& word, Syllable s) {
  if (s.exp == 0) return;
  if (!word.empty() && word.back().gen == s.gen) {
    word.back().exp += s.exp;
    if (word.back().exp == 0) word.pop_back();
    return;
  }
  word.push_back(s);
}

Gamma2Word concat(const Gamma2Word& u, const Gamma2Word& v) {
  Gamma2Word out = u;
  for (const Syllable& s : v) append(out, s);
  return out;
}

Gamma2Word inverse(const Gamma2Word& w) {
  Gamma2Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, -it->exp});
  return out;
}

Gamma2Word cyclic_reduce(Gamma2Word w) {
  while (w.size() >= 2 && w.front().gen == w.back().gen) {
    w.front().exp += w.back().exp;
    w.pop_back();
    if (w.front().exp == 0) w.erase(w.begin());
  }
  return w;
}

bool is_reduced(const Gamma2Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].exp == 0) return false;
    if (i > 0 && w[i].gen == w[i - 1].gen) return false;
  }
  return true;
}

std::string to_string(const Gamma2Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << (w[i].gen == Gen::X ? 'x' : 'y');
    if (w[i].exp != 1) os << '^' << w[i].exp;
  }
  return os.str();
}

IntMat2 to_matrix(const Gamma2Word& w) {
  IntMat2 out;
  for (const Syllable& s : w) {
    const IntMat2 g = s.exp > 0 ? generator_matrix(s.gen) : generator_matrix(s.gen).inverse();
    for (std::int64_t k = 0; k < std::llabs(s.exp); ++k) out = out * g;
  }
  return out;
}

Gamma2Word decompose(const IntMat2& g) {
  if (g.det() != 1 || residue_key(g) != residue_key(IntMat2{})) {
    throw Error(ErrorCode::TableInconsistent, "matrix is not in Gamma(2)");
  }
  // Left-multiply by powers of x or y, Euclid style on the first column, until
  // it becomes (+-1, 0); then g = (ops)^{-1} * (+-x^j).
  IntMat2 m = g;
  Gamma2Word ops;
  while (m.c != 0) {
    if (std::llabs(m.a) > std::llabs(m.c)) {
      const auto k = -static_cast<std::int64_t>(std::llround(static_cast<long double>(m.a) / (2.0L * m.c)));
      m = IntMat2{1, 2 * k, 0, 1} * m;
      ops.push_back({Gen::X, k});
    } else {
      const auto k = -static_cast<std::int64_t>(std::llround(static_cast<long double>(m.c) / (2.0L * m.a)));
      m = IntMat2{1, 0, 2 * k, 1} * m;
      ops.push_back({Gen::Y, k});
    }
  }
  const std::int64_t sign = m.a;
  const std::int64_t j = (m.b * sign) / 2;
  Gamma2Word word;
  for (const Syllable& s : ops) append(word, {s.gen, -s.exp});
  append(word, {Gen::X, j});
  return word;
}

StepTable build_step_table() {
  StepTable table;
  for (int i = 0; i < kCosetCount; ++i) {
    const auto c = static_cast<Coset>(i);
    for (Letter x : {Letter::L, Letter::R}) {
      const IntMat2 product = transversal(c) * letter_matrix(x);
      const Coset next = coset_of(product);
      const IntMat2 gamma = product * transversal(next).inverse();
      StepEntry entry{decompose(gamma), next};
      const IntMat2 check = to_matrix(entry.gamma) * transversal(next);
      if (!(check == product || -check == product) || !is_reduced(entry.gamma)) {
        throw Error(ErrorCode::TableInconsistent, "step table entry fails exact reconstruction");
      }
      table.entries_[static_cast<std::size_t>(i) * 2 + static_cast<std::size_t>(x)] = std::move(entry);
    }
  }
  return table;
}

const StepTable& step_table() {
  static const StepTable table = build_step_table();
  return table;
}

StepResult step(Coset c, Letter x) {
  const StepEntry& e = step_table().at(c, x);
  return {e.gamma, e.next};
}

Cusp cusp_class(std::int64_t p, std::int64_t q) {
  if (mod2(q) == 0) return Cusp::A;
  if (mod2(p) == 0) return Cusp::B;
  return Cusp::C;
}

WindingEvent classify_run(Coset c, Letter x, std::uint64_t m) {
  if (m < 1) throw Error(ErrorCode::InvalidParams, "run length must be at least 1");
  // L^2 fixes 0 = (0:1), R^2 fixes infinity = (1:0).
  const IntMat2 t = transversal(c);
  const std::int64_t vp = x == Letter::L ? 0 : 1;
  const std::int64_t vq = x == Letter::L ? 1 : 0;
  WindingEvent event;
  event.cusp = cusp_class(t.a * vp + t.b * vq, t.c * vp + t.d * vq);
  const auto half = static_cast<std::int64_t>(m / 2);
  event.turns = x == Letter::L ? half : -half;
  if (m % 2 == 1) event.residual = x;
  return event;
}

Coset run_next(Coset c, Letter x, std::uint64_t m) {
  return m % 2 == 1 ? step_table().at(c, x).next : c;
}

Representation representation(const monodromy::MonodromySet& ms) {
  Representation rho;
  rho.x = ms.m0 * ms.m1;
  rho.x_inv = ms.minf;
  rho.y = ms.m0;
  rho.y_inv = ms.m0.partialPivLu().inverse();
  if (ms.spectra) {
    std::array<Spectrum, 3> s;
    for (const Complex& z : ms.spectra->minf) s[0].push_back(1.0 / z);
    s[1] = ms.spectra->m0;
    s[2] = ms.spectra->m1;
    rho.spectra = std::move(s);
  }
  return rho;
}

namespace {

Matrix int_power(const Matrix& base, std::uint64_t k) {
  Matrix result = Matrix::Identity(base.rows(), base.cols());
  Matrix b = base;
  while (k > 0) {
    if (k & 1U) result = (result * b).eval();
    k >>= 1U;
    if (k > 0) b = (b * b).eval();
  }
  return result;
}

Spectrum inverted(const Spectrum& s) {
  Spectrum out;
  out.reserve(s.size());
  for (const Complex& z : s) out.push_back(1.0 / z);
  return out;
}

// Exact spectrum of rho(w) for a parabolic w conjugate to x^{+-1}, y^{+-1}
// or (x y^{-1})^{+-1}.
Spectrum parabolic_spectrum(const Gamma2Word& w, const std::array<Spectrum, 3>& s) {
  const Gamma2Word core = cyclic_reduce(w);
  if (core.size() == 1 && std::llabs(core[0].exp) == 1) {
    const Spectrum& base = core[0].gen == Gen::X ? s[0] : s[1];
    return core[0].exp > 0 ? base : inverted(base);
  }
  if (core.size() == 2 && std::llabs(core[0].exp) == 1 && core[0].exp == -core[1].exp) {
    const std::int64_t x_exp = core[0].gen == Gen::X ? core[0].exp : core[1].exp;
    return x_exp > 0 ? s[2] : inverted(s[2]);
  }
  throw Error(ErrorCode::TableInconsistent, "square word " + to_string(w) + " is not a cusp loop");
}

}  // namespace

Matrix evaluate(const Representation& rho, const Gamma2Word& w) {
  const auto n = rho.x.rows();
  Matrix out = Matrix::Identity(n, n);
  for (const Syllable& s : w) {
    const Matrix& base = s.gen == Gen::X ? (s.exp > 0 ? rho.x : rho.x_inv) : (s.exp > 0 ? rho.y : rho.y_inv);
    out = (out * int_power(base, static_cast<std::uint64_t>(std::llabs(s.exp)))).eval();
  }
  return out;
}

RunEngine::RunEngine(const Representation& rho, int cached) : n_(static_cast<int>(rho.x.rows())) {
  if (cached < 1) cached = 1;
  const StepTable& table = step_table();
  for (int i = 0; i < kCosetCount; ++i) {
    const auto c = static_cast<Coset>(i);
    for (Letter x : {Letter::L, Letter::R}) {
      const StepEntry& first = table.at(c, x);
      const StepEntry& second = table.at(first.next, x);
      if (second.next != c) throw Error(ErrorCode::TableInconsistent, "a double step must return to its coset");
      const Gamma2Word square = concat(first.gamma, second.gamma);

      Entry e;
      e.next = first.next;
      e.step = evaluate(rho, first.gamma);
      e.step_inv = evaluate(rho, inverse(first.gamma));
      Matrix sq = evaluate(rho, square);
      Matrix sq_inv = evaluate(rho, inverse(square));
      Spectrum nodes = rho.spectra ? parabolic_spectrum(square, *rho.spectra) : spectral::unit_clusters(sq);
      Spectrum nodes_inv = rho.spectra ? inverted(nodes) : spectral::unit_clusters(sq_inv);
      e.square = spectral::PowerTable(std::move(sq), std::move(nodes), cached);
      e.square_inv = spectral::PowerTable(std::move(sq_inv), std::move(nodes_inv), cached);

      const int small = 2 * cached + 1;
      e.transport_small.reserve(static_cast<std::size_t>(small) + 1);
      e.dual_small.reserve(static_cast<std::size_t>(small) + 1);
      for (int m = 0; m <= small; ++m) {
        const Matrix& sq_part = e.square_inv.cached_power(m / 2);
        e.transport_small.push_back(m % 2 == 1 ? Matrix(e.step_inv * sq_part) : sq_part);
        const Matrix& sq_run = e.square.cached_power(m / 2);
        e.dual_small.push_back(m % 2 == 1 ? Matrix((sq_run * e.step).adjoint()) : Matrix(sq_run.adjoint()));
      }
      entries_[static_cast<std::size_t>(i) * 2 + static_cast<std::size_t>(x)] = std::move(e);
    }
  }
}

Matrix RunEngine::run_matrix(Coset c, Letter x, std::uint64_t m) const {
  // gamma_run = (c X^2 c^{-1})^{floor(m/2)} * gamma_step(c, X) when m is odd.
  const Entry& e = at(c, x);
  Matrix out = e.square.power(m / 2);
  if (m % 2 == 1) out = (out * e.step).eval();
  return out;
}

const Matrix& RunEngine::transport(Coset& c, Letter x, std::uint64_t m, Matrix& scratch) const {
  const Entry& e = at(c, x);
  if (m % 2 == 1) c = e.next;
  if (m < e.transport_small.size()) return e.transport_small[static_cast<std::size_t>(m)];
  scratch = e.square_inv.power(m / 2);
  if (m % 2 == 1) scratch = (e.step_inv * scratch).eval();
  return scratch;
}

const Matrix& RunEngine::dual_transport(Coset c, Letter x, std::uint64_t m, Matrix& scratch) const {
  const Entry& e = at(c, x);
  if (m < e.dual_small.size()) return e.dual_small[static_cast<std::size_t>(m)];
  scratch = run_matrix(c, x, m).adjoint();
  return scratch;
}

RunResult run_to_monodromy(Coset c, Letter x, std::uint64_t m, const RunEngine& engine) {
  if (m < 1) throw Error(ErrorCode::InvalidParams, "run length must be at least 1");
  RunResult result;
  result.matrix = engine.run_matrix(c, x, m);
  result.event = classify_run(c, x, m);
  result.next = run_next(c, x, m);
  return result;
}

TriangleState triangle_step(const TriangleState& t, Letter x) {
  TriangleState out;
  const auto& [left, right, opposite] = t.labels;
  out.labels = x == Letter::L ? std::array<Cusp, 3>{left, opposite, right}
                              : std::array<Cusp, 3>{opposite, right, left};
  out.blue = !t.blue;
  return out;
}

TriangleState matched_triangle(Coset c) {
  const IntMat2 t = transversal(c);
  TriangleState out;
  out.labels = {cusp_class(t.b, t.d), cusp_class(t.a, t.c), cusp_class(t.a + t.b, t.c + t.d)};
  out.blue = false;
  return out;
}

}  // namespace hyplyap::winding
