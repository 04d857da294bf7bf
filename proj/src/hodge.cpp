#include "hyplyap/hodge.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <tuple>

#include "hyplyap/error.hpp"

namespace hyplyap::hodge {

namespace {

bool is_integer(double v) { return std::abs(v - std::round(v)) < kIntegerGammaTolerance; }

double forward_gap(double from, double to) { return reduce_mod1(to - from); }

struct Raw {
  double value;
  Kind kind;
  int index;
};

}  // namespace

Diagram analyze(const HGParams& params) {
  const int n = params.n;
  if (n < 1 || params.min_separation() <= HGParams::kDistinctTolerance) {
    throw Error(ErrorCode::InvalidParams, "parameters must be pairwise distinct mod 1");
  }
  std::vector<Raw> raw;
  for (int i = 0; i < n; ++i) raw.push_back({params.alpha[static_cast<std::size_t>(i)], Kind::Alpha, i});
  for (int i = 0; i < n; ++i) raw.push_back({params.beta[static_cast<std::size_t>(i)], Kind::Beta, i});
  std::sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) { return a.value < b.value; });

  const int m = 2 * n;
  std::vector<int> walk(static_cast<std::size_t>(m));
  int v = 0;
  for (int k = 0; k < m; ++k) {
    v += raw[static_cast<std::size_t>(k)].kind == Kind::Alpha ? 1 : -1;
    walk[static_cast<std::size_t>(k)] = v;
  }
  const int low = *std::min_element(walk.begin(), walk.end());
  for (int& w : walk) w -= low;

  // Candidate starts: the alpha right after each zero of the walk. Among
  // several, take the one preceded by the largest circular gap, so that the
  // choice is invariant under rotation of all parameters.
  int start = -1;
  double best_gap = -1.0;
  for (int k = 0; k < m; ++k) {
    if (walk[static_cast<std::size_t>(k)] != 0) continue;
    const int s = (k + 1) % m;
    const double gap = forward_gap(raw[static_cast<std::size_t>(k)].value, raw[static_cast<std::size_t>(s)].value);
    const bool better = start < 0 || gap > best_gap + 1e-15 ||
                        (std::abs(gap - best_gap) <= 1e-15 &&
                         raw[static_cast<std::size_t>(s)].value < raw[static_cast<std::size_t>(start)].value);
    if (better) {
      start = s;
      best_gap = gap;
    }
  }

  Diagram d;
  d.n = n;
  d.alpha_star = raw[static_cast<std::size_t>(start)].value;
  d.f_alpha.assign(static_cast<std::size_t>(n), 0);
  d.f_beta.assign(static_cast<std::size_t>(n), 0);
  int alpha_count = 0, beta_count = 0;
  double sum_alpha = 0.0, sum_beta = 0.0;
  for (int t = 0; t < m; ++t) {
    const auto k = static_cast<std::size_t>((start + t) % m);
    Marker mk;
    mk.kind = raw[k].kind;
    mk.index = raw[k].index;
    mk.value = raw[k].value >= d.alpha_star ? raw[k].value : raw[k].value + 1.0;
    mk.f = walk[k];
    if (mk.kind == Kind::Alpha) {
      mk.appearance = ++alpha_count;
      sum_alpha += mk.value;
      d.f_alpha[static_cast<std::size_t>(mk.index)] = mk.f;
    } else {
      mk.appearance = ++beta_count;
      sum_beta += mk.value;
      d.f_beta[static_cast<std::size_t>(mk.index)] = mk.f;
    }
    d.entries.push_back(mk);
  }

  d.gamma = sum_beta - sum_alpha;
  if (is_integer(d.gamma)) {
    throw Error(ErrorCode::IntegerGamma, "gamma = " + std::to_string(d.gamma) + " is an integer for " + to_string(params));
  }
  d.gamma_floor = static_cast<int>(std::floor(d.gamma));
  d.gamma_frac = d.gamma - d.gamma_floor;

  d.h.assign(static_cast<std::size_t>(n), 0);
  std::vector<int> beta_counts(static_cast<std::size_t>(n), 0);
  for (const Marker& mk : d.entries) {
    if (mk.kind == Kind::Alpha) {
      if (mk.f < 1 || mk.f > n) throw Error(ErrorCode::InvalidParams, "walk value out of range");
      ++d.h[static_cast<std::size_t>(mk.f - 1)];
    } else {
      if (mk.f < 0 || mk.f >= n) throw Error(ErrorCode::InvalidParams, "walk value out of range");
      ++beta_counts[static_cast<std::size_t>(mk.f)];
    }
  }
  if (d.h != beta_counts) throw Error(ErrorCode::InvalidParams, "double count of the walk failed");
  for (int i = 1; i <= n; ++i) (i % 2 == 0 ? d.p : d.q) += d.h[static_cast<std::size_t>(i - 1)];
  return d;
}

std::string to_string(Singularity s) {
  switch (s) {
    case Singularity::Zero: return "0";
    case Singularity::One: return "1";
    case Singularity::Infinity: return "inf";
  }
  return "?";
}

int LocalInvariants::level_total(Singularity s, int level) const {
  int total = 0;
  for (const LocalEntry& e : entries) {
    if (e.singularity == s && e.level == level) total += e.nu;
  }
  return total;
}

namespace {

void canonicalize(LocalInvariants& li) {
  std::vector<LocalEntry> kept;
  for (const LocalEntry& e : li.entries) {
    if (e.nu != 0) kept.push_back(e);
  }
  std::sort(kept.begin(), kept.end(), [](const LocalEntry& a, const LocalEntry& b) {
    return std::tie(a.singularity, a.level, a.jump) < std::tie(b.singularity, b.level, b.jump);
  });
  li.entries = std::move(kept);
}

// Assembles the invariants from levels of the alpha, beta and gamma jumps;
// the unipotent part at 1 fills the remaining dimension of each level.
LocalInvariants assemble(int n, const std::vector<double>& alpha, const std::vector<int>& alpha_level,
                         const std::vector<double>& beta, const std::vector<int>& beta_level, double gamma_frac,
                         int gamma_level) {
  LocalInvariants li;
  li.n = n;
  li.totals.assign(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    li.entries.push_back({Singularity::Zero, reduce_mod1(alpha[i]), alpha_level[i], 1});
    if (alpha_level[i] >= 1 && alpha_level[i] <= n) ++li.totals[static_cast<std::size_t>(alpha_level[i] - 1)];
  }
  for (std::size_t i = 0; i < beta.size(); ++i) {
    li.entries.push_back({Singularity::Infinity, reduce_mod1(-beta[i]), beta_level[i], 1});
  }
  li.entries.push_back({Singularity::One, gamma_frac, gamma_level, 1});
  for (int p = 1; p <= n; ++p) {
    const int rest = li.totals[static_cast<std::size_t>(p - 1)] - (p == gamma_level ? 1 : 0);
    if (rest != 0) li.entries.push_back({Singularity::One, 0.0, p, rest});
  }
  canonicalize(li);
  return li;
}

}  // namespace

bool equivalent(const LocalInvariants& a, const LocalInvariants& b, double tol) {
  if (a.n != b.n || a.totals != b.totals || a.entries.size() != b.entries.size()) return false;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    const LocalEntry& x = a.entries[i];
    const LocalEntry& y = b.entries[i];
    if (x.singularity != y.singularity || x.level != y.level || x.nu != y.nu) return false;
    if (circle_distance(x.jump, y.jump) > tol) return false;
  }
  return true;
}

LocalInvariants local_invariants(const Diagram& d) {
  std::vector<double> alpha, beta;
  std::vector<int> alpha_level, beta_level;
  for (const Marker& mk : d.entries) {
    if (mk.kind == Kind::Alpha) {
      alpha.push_back(mk.value);
      alpha_level.push_back(mk.f);
    } else {
      beta.push_back(mk.value);
      beta_level.push_back(mk.f + 1);
    }
  }
  return assemble(d.n, alpha, alpha_level, beta, beta_level, d.gamma_frac, d.gamma_floor + 1);
}

DegreeReport parabolic_degrees(const Diagram& d) {
  const auto n = static_cast<std::size_t>(d.n);
  DegreeReport r;
  r.delta.assign(n, 0);
  r.deg_par.assign(n, 0.0);
  for (const Marker& mk : d.entries) {
    if (mk.kind == Kind::Alpha) {
      r.deg_par[static_cast<std::size_t>(mk.f - 1)] += mk.value;
    } else {
      const auto level = static_cast<std::size_t>(mk.f);  // p - 1 = f(beta)
      r.deg_par[level] += 1.0 - mk.value;
      if (mk.appearance <= d.n - d.gamma_floor) --r.delta[level];
    }
  }
  for (std::size_t p = 0; p < n; ++p) r.deg_par[p] += r.delta[p];
  r.deg_par[static_cast<std::size_t>(d.gamma_floor)] += d.gamma_frac;
  return r;
}

int signature_zeros(const Diagram& d) { return std::abs(d.p - d.q); }

namespace {

// Levels known up to a common shift.
struct Levels {
  std::vector<int> alpha;
  std::vector<int> beta;
  int gamma = 0;
};

bool in_open_arc(double t, double from, double to) {
  const double pos = forward_gap(from, to);
  const double x = forward_gap(from, t);
  return x > 0.0 && x < pos;
}

std::optional<Levels> recurse(const std::vector<double>& alpha, const std::vector<double>& beta);

// Levels of the full problem from the problem without (alpha_k, beta_j).
std::optional<Levels> lift(const std::vector<double>& alpha, const std::vector<double>& beta, std::size_t k,
                           std::size_t j) {
  std::vector<double> sub_alpha, sub_beta;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (i != k) sub_alpha.push_back(alpha[i]);
    if (i != j) sub_beta.push_back(beta[i]);
  }
  const std::optional<Levels> sub = recurse(sub_alpha, sub_beta);
  if (!sub) return std::nullopt;

  const double a = alpha[k];
  const double b = beta[j];
  double sum = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) sum += beta[i] - alpha[i];
  const double gamma_frac = reduce_mod1(sum);

  Levels out;
  out.alpha.assign(alpha.size(), 0);
  out.beta.assign(beta.size(), 0);
  std::size_t s = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (i == k) continue;
    out.alpha[i] = sub->alpha[s++] + (in_open_arc(alpha[i], a, b) ? 1 : 0);
  }
  s = 0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (i == j) continue;
    out.beta[i] = sub->beta[s++] + (in_open_arc(beta[i], a, b) ? 1 : 0);
  }
  out.gamma = sub->gamma + (gamma_frac < forward_gap(a, b) ? 1 : 0);
  return out;
}

std::optional<Levels> recurse(const std::vector<double>& alpha, const std::vector<double>& beta) {
  const std::size_t n = alpha.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += beta[i] - alpha[i];
  if (is_integer(sum)) return std::nullopt;
  if (n == 1) return Levels{{1}, {1}, 1};

  // Two removals with disjoint pairs determine every level; they are aligned
  // through the level of the jump at 1 and must agree on shared markers.
  std::vector<std::tuple<std::size_t, std::size_t, Levels>> found;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      bool disjoint = true;
      for (const auto& [k0, j0, lv] : found) {
        if (k0 == k || j0 == j) disjoint = false;
      }
      if (!disjoint) continue;
      std::optional<Levels> lv = lift(alpha, beta, k, j);
      if (!lv) continue;
      found.emplace_back(k, j, std::move(*lv));
      if (found.size() == 2) break;
    }
    if (found.size() == 2) break;
  }
  if (found.size() < 2) return std::nullopt;

  const auto& [k1, j1, first] = found[0];
  const auto& [k2, j2, second] = found[1];
  const int shift = first.gamma - second.gamma;
  Levels out = first;
  out.alpha[k1] = second.alpha[k1] + shift;
  out.beta[j1] = second.beta[j1] + shift;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != k1 && i != k2 && first.alpha[i] != second.alpha[i] + shift) {
      throw Error(ErrorCode::TableInconsistent, "recursion branches disagree at 0");
    }
    if (i != j1 && i != j2 && first.beta[i] != second.beta[i] + shift) {
      throw Error(ErrorCode::TableInconsistent, "recursion branches disagree at infinity");
    }
  }
  return out;
}

}  // namespace

LocalInvariants ds_recursion_oracle(const HGParams& params) {
  std::optional<Levels> lv = recurse(params.alpha, params.beta);
  if (!lv) {
    throw Error(ErrorCode::IntegerGamma, "no recursion path avoids integer gamma for " + to_string(params));
  }
  const int low = *std::min_element(lv->beta.begin(), lv->beta.end());
  const int shift = 1 - low;
  for (int& v : lv->alpha) v += shift;
  for (int& v : lv->beta) v += shift;
  lv->gamma += shift;
  double sum = 0.0;
  for (int i = 0; i < params.n; ++i) {
    sum += params.beta[static_cast<std::size_t>(i)] - params.alpha[static_cast<std::size_t>(i)];
  }
  return assemble(params.n, params.alpha, lv->alpha, params.beta, lv->beta, reduce_mod1(sum), lv->gamma);
}

}  // namespace hyplyap::hodge
