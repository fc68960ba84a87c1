#pragma once

// Shared test utilities: small builders, seeded generators, and the
// independent feasibility/merge oracles used to cross-check the refinement
// decision procedure. Nothing here touches the simplex path.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "hyperflow/refine.hpp"

namespace hftest {

using namespace hyperflow;

inline Rat q(long n, long d = 1) { return rat_of(n, d); }

// {true @ p, false @ 1-p} over booleans
inline Dist bdist(const Rat& p_true) {
  Dist::Map m;
  if (p_true > 0) m[Value(true)] = p_true;
  if (p_true < 1) m[Value(false)] = Rat(1) - p_true;
  return Dist::from_entries(m);
}

inline Dist dist_of(std::vector<std::pair<Value, Rat>> entries) {
  Dist::Map m;
  for (auto& [v, p] : entries) m[v] += p;
  return Dist::from_entries(m);
}

inline Hyper hyper_of(std::vector<std::pair<Dist, Rat>> inners,
                      const Value& vis = Value::tuple({})) {
  Hyper h;
  for (auto& [d, w] : inners) h.add(vis, d, w);
  return h;
}

// ---------------------------------------------------------------------------
// Independent exact feasibility: Gaussian elimination of the equalities
// followed by Fourier-Motzkin on the residual inequalities. Decides the
// same transport systems as the simplex route with none of its code.

struct OracleRow {
  std::vector<Rat> a;  // coefficients, one per variable
  Rat b;
  bool eq;
};

namespace detail {

// normalize an inequality sum(a x) <= b so duplicates collapse
inline std::vector<Rat> norm_key(std::vector<Rat> a, Rat b) {
  Rat scale = 0;
  for (const auto& c : a)
    if (c != 0 && (scale == 0 || abs(c) > scale)) scale = abs(c);
  if (scale == 0) scale = b == 0 ? Rat(1) : abs(b);
  if (scale == 0) scale = 1;
  for (auto& c : a) c /= scale;
  a.push_back(b / scale);
  return a;
}

}  // namespace detail

// Decides { x : rows hold, x >= 0 } nonempty.
inline bool oracle_feasible(size_t nvars, std::vector<OracleRow> rows) {
  // x >= 0 as -x_i <= 0
  for (size_t i = 0; i < nvars; ++i) {
    OracleRow r{std::vector<Rat>(nvars, Rat(0)), Rat(0), false};
    r.a[i] = -1;
    rows.push_back(std::move(r));
  }

  // Gaussian elimination of the equalities
  std::vector<OracleRow> eqs, ineqs;
  for (auto& r : rows) (r.eq ? eqs : ineqs).push_back(std::move(r));

  std::vector<std::pair<size_t, size_t>> pivots;  // (eq row, column)
  for (size_t col = 0, row = 0; col < nvars && row < eqs.size(); ++col) {
    size_t p = row;
    while (p < eqs.size() && eqs[p].a[col] == 0) ++p;
    if (p == eqs.size()) continue;
    std::swap(eqs[row], eqs[p]);
    for (size_t r2 = 0; r2 < eqs.size(); ++r2) {
      if (r2 == row || eqs[r2].a[col] == 0) continue;
      Rat f = eqs[r2].a[col] / eqs[row].a[col];
      for (size_t c = 0; c < nvars; ++c) eqs[r2].a[c] -= f * eqs[row].a[c];
      eqs[r2].b -= f * eqs[row].b;
    }
    pivots.emplace_back(row, col);
    ++row;
  }
  for (const auto& e : eqs) {
    bool zero = std::all_of(e.a.begin(), e.a.end(), [](const Rat& c) { return c == 0; });
    if (zero && e.b != 0) return false;
  }

  // substitute pivot variables into the inequalities
  for (auto& r : ineqs) {
    for (auto [erow, col] : pivots) {
      if (r.a[col] == 0) continue;
      Rat f = r.a[col] / eqs[erow].a[col];
      for (size_t c = 0; c < nvars; ++c) r.a[c] -= f * eqs[erow].a[c];
      r.b -= f * eqs[erow].b;
    }
  }

  // Fourier-Motzkin over the remaining (free) variables
  std::set<size_t> pivot_cols;
  for (auto [_, col] : pivots) pivot_cols.insert(col);
  for (size_t col = 0; col < nvars; ++col) {
    if (pivot_cols.count(col)) continue;
    std::vector<OracleRow> pos, neg, zero;
    for (auto& r : ineqs) {
      if (r.a[col] > 0)
        pos.push_back(std::move(r));
      else if (r.a[col] < 0)
        neg.push_back(std::move(r));
      else
        zero.push_back(std::move(r));
    }
    std::set<std::vector<Rat>> seen;
    std::vector<OracleRow> next;
    auto push = [&](OracleRow r) {
      auto key = detail::norm_key(r.a, r.b);
      if (seen.insert(std::move(key)).second) next.push_back(std::move(r));
    };
    for (auto& r : zero) push(std::move(r));
    for (const auto& p : pos)
      for (const auto& n : neg) {
        OracleRow r{std::vector<Rat>(nvars, Rat(0)), Rat(0), false};
        Rat fp = p.a[col], fn = -n.a[col];
        for (size_t c = 0; c < nvars; ++c) r.a[c] = p.a[c] * fn + n.a[c] * fp;
        r.b = p.b * fn + n.b * fp;
        push(std::move(r));
      }
    ineqs = std::move(next);
  }

  for (const auto& r : ineqs)
    if (r.b < 0) return false;
  return true;
}

// Entropy refinement decided through the oracle; the transport system is
// built here, independently of the library's builder.
inline bool oracle_entropy_refines(const Hyper& s, const Hyper& i) {
  // group entries per visible value; every class must balance on its own
  std::map<Value, std::vector<std::pair<Dist, Rat>>> src, tgt;
  for (const auto& [k, w] : s.entries()) src[k.first].emplace_back(k.second, w);
  for (const auto& [k, w] : i.entries()) tgt[k.first].emplace_back(k.second, w);

  std::set<Value> vis;
  for (const auto& [v, _] : src) vis.insert(v);
  for (const auto& [v, _] : tgt) vis.insert(v);

  for (const auto& v : vis) {
    auto& a = src[v];
    auto& b = tgt[v];
    if (a.empty() != b.empty()) return false;
    if (a.empty()) continue;

    std::set<Value> hidden;
    for (const auto& [d, _] : a)
      for (const auto& [h, __] : d.entries()) hidden.insert(h);
    for (const auto& [d, _] : b)
      for (const auto& [h, __] : d.entries()) hidden.insert(h);

    const size_t ns = a.size(), nt = b.size();
    std::vector<OracleRow> rows;
    auto var = [&](size_t x, size_t y) { return x * nt + y; };
    for (size_t x = 0; x < ns; ++x) {
      OracleRow r{std::vector<Rat>(ns * nt, Rat(0)), a[x].second, true};
      for (size_t y = 0; y < nt; ++y) r.a[var(x, y)] = 1;
      rows.push_back(std::move(r));
    }
    for (size_t y = 0; y < nt; ++y)
      for (const auto& h : hidden) {
        OracleRow r{std::vector<Rat>(ns * nt, Rat(0)), b[y].second * b[y].first.at(h), true};
        for (size_t x = 0; x < ns; ++x) r.a[var(x, y)] = a[x].first.at(h);
        rows.push_back(std::move(r));
      }
    if (!oracle_feasible(ns * nt, std::move(rows))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Merge machinery (the three-step construction: scale, add, normalize).

inline Hyper::Key entry_at(const Hyper& h, size_t idx) {
  auto it = h.entries().begin();
  std::advance(it, idx);
  return it->first;
}

inline Rat weight_at(const Hyper& h, size_t idx) {
  auto it = h.entries().begin();
  std::advance(it, idx);
  return it->second;
}

// Moves mass u of entry ei and mass w of entry ej into their weighted
// average, keeping the remainders (a pre-split merge when u or w is
// partial). Requires matching visible values.
inline Hyper partial_merge(const Hyper& h, size_t ei, size_t ej, const Rat& u, const Rat& w) {
  auto ki = entry_at(h, ei);
  auto kj = entry_at(h, ej);
  Rat wi = weight_at(h, ei), wj = weight_at(h, ej);
  if (ki.first != kj.first) throw std::invalid_argument("merge across visible values");
  if (u <= 0 || w <= 0 || u > wi || w > wj) throw std::invalid_argument("bad merge portions");

  Dist::Map merged;
  for (const auto& [x, p] : ki.second.entries()) merged[x] += u * p;
  for (const auto& [x, p] : kj.second.entries()) merged[x] += w * p;
  for (auto& [_, p] : merged) p /= (u + w);

  Hyper out;
  size_t idx = 0;
  for (const auto& [k, wt] : h.entries()) {
    Rat keep = wt;
    if (idx == ei) keep -= u;
    if (idx == ej) keep -= w;
    if (keep > 0) out.add(k.first, k.second, keep);
    ++idx;
  }
  out.add(ki.first, Dist::from_entries(merged), u + w);
  return out;
}

inline Hyper full_merge(const Hyper& h, size_t ei, size_t ej) {
  return partial_merge(h, ei, ej, weight_at(h, ei), weight_at(h, ej));
}

// True when b is reachable from a by at most `depth` full two-inner merges.
inline bool reachable_by_full_merges(const Hyper& a, const Hyper& b, int depth) {
  if (a == b) return true;
  if (depth == 0) return false;
  size_t n = a.support_size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      if (entry_at(a, i).first != entry_at(a, j).first) continue;
      if (reachable_by_full_merges(full_merge(a, i, j), b, depth - 1)) return true;
    }
  return false;
}

// ---------------------------------------------------------------------------
// Seeded generators (raw engine draws only; deterministic everywhere).

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(unsigned long seed) : rng(seed) {}

  long pick(long n) { return static_cast<long>(rng() % static_cast<unsigned long>(n)); }

  // rational in (0, 1] with denominator at most max_den
  Rat prob(long max_den) {
    long d = 1 + pick(max_den);
    long n = 1 + pick(d);
    return rat_of(n, d);
  }

  // full distribution over the given values, all weights with one
  // denominator d <= max_den
  Dist full_dist(const std::vector<Value>& values, long max_den) {
    long d = 1 + pick(max_den);
    std::vector<long> cuts{0, d};
    for (size_t i = 0; i + 1 < values.size(); ++i) cuts.push_back(pick(d + 1));
    std::sort(cuts.begin(), cuts.end());
    Dist::Map m;
    for (size_t i = 0; i < values.size(); ++i) {
      long w = cuts[i + 1] - cuts[i];
      if (w > 0) m[values[i]] += rat_of(w, d);
    }
    return Dist::from_entries(m);
  }

  // full hyper over booleans with up to max_inners inners
  Hyper small_hyper(size_t max_inners, long max_den) {
    size_t n = 1 + static_cast<size_t>(pick(static_cast<long>(max_inners)));
    std::vector<Value> bools{Value(false), Value(true)};
    long d = 1 + pick(max_den);
    std::vector<long> cuts{0, d};
    for (size_t i = 0; i + 1 < n; ++i) cuts.push_back(pick(d + 1));
    std::sort(cuts.begin(), cuts.end());
    Hyper h;
    for (size_t i = 0; i < n; ++i) {
      long w = cuts[i + 1] - cuts[i];
      if (w > 0) h.add(Value::tuple({}), full_dist(bools, max_den), rat_of(w, d));
    }
    if (h.empty()) h.add(Value::tuple({}), full_dist(bools, max_den), Rat(1));
    return h;
  }

  // applies up to `steps` random partial merges (pre-splits included)
  Hyper randomly_merged(const Hyper& start, int steps) {
    Hyper h = start;
    for (int s = 0; s < steps; ++s) {
      if (h.support_size() < 2) break;
      size_t n = h.support_size();
      size_t i = static_cast<size_t>(pick(static_cast<long>(n)));
      size_t j = static_cast<size_t>(pick(static_cast<long>(n - 1)));
      if (j >= i) ++j;
      if (entry_at(h, i).first != entry_at(h, j).first) continue;
      Rat wi = weight_at(h, i), wj = weight_at(h, j);
      long cut_i = 1 + pick(3), cut_j = 1 + pick(3);
      h = partial_merge(h, i, j, wi / cut_i, wj / cut_j);
    }
    return h;
  }
};

}  // namespace hftest
