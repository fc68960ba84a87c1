#include "hyperflow/refine.hpp"

#include <set>

#include "hyperflow/simplex.hpp"

namespace hyperflow {

std::vector<Witness::Entry> Witness::entries_of(const Hyper& h) {
  std::vector<Entry> out;
  out.reserve(h.support_size());
  for (const auto& [k, w] : h.entries()) out.push_back(Entry{k.first, k.second, w});
  return out;
}

Witness Witness::identity(const Hyper& h) {
  Witness w;
  w.source = entries_of(h);
  w.target = w.source;
  for (size_t i = 0; i < w.source.size(); ++i) w.transport[{i, i}] = w.source[i].wgt;
  return w;
}

void Witness::validate() const {
  std::vector<Rat> row_sums(source.size(), Rat(0));
  // column accumulation over hidden values, including slack
  std::vector<Dist::Map> col(target.size());

  for (const auto& [ij, m] : transport) {
    auto [i, j] = ij;
    if (i >= source.size() || j >= target.size())
      throw std::logic_error("witness transport index out of range");
    if (m < 0) throw std::logic_error("negative transport mass");
    if (m == 0) continue;
    if (source[i].vis != target[j].vis)
      throw std::logic_error("witness moves mass across distinct visible values");
    row_sums[i] += m;
    for (const auto& [h, p] : source[i].inner.entries()) col[j][h] += m * p;
  }
  for (size_t i = 0; i < source.size(); ++i)
    if (row_sums[i] != source[i].wgt)
      throw std::logic_error("witness row sum differs from source weight");

  for (const auto& [j, add] : slack) {
    if (j >= target.size()) throw std::logic_error("witness slack index out of range");
    for (const auto& [h, p] : add.entries()) {
      if (p < 0) throw std::logic_error("negative witness slack");
      col[j][h] += p;
    }
  }
  for (size_t j = 0; j < target.size(); ++j) {
    Dist::Map want;
    for (const auto& [h, p] : target[j].inner.entries()) want[h] = target[j].wgt * p;
    // drop exact zeros accumulated on either side
    for (auto it = col[j].begin(); it != col[j].end();)
      it = (it->second == 0) ? col[j].erase(it) : std::next(it);
    if (col[j] != want)
      throw std::logic_error("witness column does not reproduce target entry");
  }
}

Rat gauge(const Dist& d) {
  Rat t = 0;
  for (const auto& [_, p] : d.entries()) t += p * p;
  return t;
}

Rat gauge(const Hyper& h) {
  Rat t = 0;
  for (const auto& [k, w] : h.entries()) t += w * gauge(k.second);
  return t;
}

namespace {

struct VisClass {
  std::vector<size_t> src;  // indices into the source entry list
  std::vector<size_t> tgt;
};

// Entries grouped by visible value; indices refer to the flat entry lists.
std::map<Value, VisClass> classes_of(const std::vector<Witness::Entry>& s,
                                     const std::vector<Witness::Entry>& t) {
  std::map<Value, VisClass> out;
  for (size_t i = 0; i < s.size(); ++i) out[s[i].vis].src.push_back(i);
  for (size_t j = 0; j < t.size(); ++j) out[t[j].vis].tgt.push_back(j);
  return out;
}

// Shared core of the two deciders. Entropy refinement uses per-column
// equalities; secure refinement relaxes them to <= and reports the slack.
std::optional<Witness> decide(const Hyper& s, const Hyper& i, bool allow_slack) {
  if (s == i) return Witness::identity(s);

  Witness w;
  w.source = Witness::entries_of(s);
  w.target = Witness::entries_of(i);

  auto classes = classes_of(w.source, w.target);
  for (auto& [vis, cls] : classes) {
    // Cheap necessary conditions before the LP. Entropy refinement
    // preserves the visible marginal and the per-class hidden marginal;
    // the secure form may only add mass.
    Rat src_mass = 0, tgt_mass = 0;
    Dist::Map src_marg, tgt_marg;
    for (size_t i1 : cls.src) {
      src_mass += w.source[i1].wgt;
      for (const auto& [h, p] : w.source[i1].inner.entries())
        src_marg[h] += w.source[i1].wgt * p;
    }
    for (size_t j : cls.tgt) {
      tgt_mass += w.target[j].wgt;
      for (const auto& [h, p] : w.target[j].inner.entries())
        tgt_marg[h] += w.target[j].wgt * p;
    }
    if (allow_slack) {
      if (src_mass > tgt_mass) return std::nullopt;
      for (const auto& [h, p] : src_marg)
        if (p > (tgt_marg.count(h) ? tgt_marg[h] : Rat(0))) return std::nullopt;
    } else {
      if (src_mass != tgt_mass) return std::nullopt;
      if (Dist::from_entries(src_marg) != Dist::from_entries(tgt_marg)) return std::nullopt;
    }
    if (cls.src.empty()) {
      // nothing to transport; the whole class is slack
      if (allow_slack)
        for (size_t j : cls.tgt)
          w.slack[j] = w.target[j].inner.scaled(w.target[j].wgt);
      continue;
    }

    // hidden values mentioned anywhere in this class
    std::set<Value> hidden;
    for (size_t i1 : cls.src)
      for (const auto& [h, _] : w.source[i1].inner.entries()) hidden.insert(h);
    for (size_t j : cls.tgt)
      for (const auto& [h, _] : w.target[j].inner.entries()) hidden.insert(h);

    const size_t ns = cls.src.size(), nt = cls.tgt.size();
    LinearSystem sys;
    sys.nvars = ns * nt;
    auto var = [&](size_t a, size_t b) { return a * nt + b; };

    for (size_t a = 0; a < ns; ++a) {
      auto& row = sys.add_row(true);
      for (size_t b = 0; b < nt; ++b) row.coeff[var(a, b)] = 1;
      row.rhs = w.source[cls.src[a]].wgt;
    }
    for (size_t b = 0; b < nt; ++b) {
      const auto& tgt = w.target[cls.tgt[b]];
      for (const auto& h : hidden) {
        auto& row = sys.add_row(!allow_slack);
        for (size_t a = 0; a < ns; ++a)
          row.coeff[var(a, b)] = w.source[cls.src[a]].inner.at(h);
        row.rhs = tgt.wgt * tgt.inner.at(h);
      }
    }

    auto x = find_feasible(sys);
    if (!x) return std::nullopt;

    Dist::Map col_slack;
    for (size_t b = 0; b < nt; ++b) {
      Dist::Map moved;
      for (size_t a = 0; a < ns; ++a) {
        const Rat& m = (*x)[var(a, b)];
        if (m == 0) continue;
        w.transport[{cls.src[a], cls.tgt[b]}] = m;
        for (const auto& [h, p] : w.source[cls.src[a]].inner.entries())
          moved[h] += m * p;
      }
      if (allow_slack) {
        const auto& tgt = w.target[cls.tgt[b]];
        Dist::Map add;
        for (const auto& h : hidden) {
          Rat want = tgt.wgt * tgt.inner.at(h);
          Rat got = moved.count(h) ? moved[h] : Rat(0);
          if (got > want) return std::nullopt;  // cannot happen on a feasible x
          if (got < want) add[h] = want - got;
        }
        if (!add.empty()) w.slack[cls.tgt[b]] = Dist::from_entries(add);
      }
    }
  }

  w.validate();
  return w;
}

}  // namespace

std::optional<Witness> entropy_refines(const Hyper& s, const Hyper& i) {
  return decide(s, i, /*allow_slack=*/false);
}

std::optional<Witness> secure_refines(const Hyper& s, const Hyper& i) {
  return decide(s, i, /*allow_slack=*/true);
}

Witness compose_witness(const Witness& w1, const Witness& w2) {
  if (!w1.pure_entropy() || !w2.pure_entropy())
    throw std::invalid_argument("compose_witness requires pure entropy witnesses");
  auto same = [](const Witness::Entry& a, const Witness::Entry& b) {
    return a.vis == b.vis && a.inner == b.inner && a.wgt == b.wgt;
  };
  if (w1.target.size() != w2.source.size())
    throw std::invalid_argument("witness middle hypers differ");
  for (size_t j = 0; j < w1.target.size(); ++j)
    if (!same(w1.target[j], w2.source[j]))
      throw std::invalid_argument("witness middle hypers differ");

  Witness out;
  out.source = w1.source;
  out.target = w2.target;
  for (const auto& [ij, m1] : w1.transport) {
    auto [i, j] = ij;
    const Rat& b = w1.target[j].wgt;
    if (b == 0) continue;
    for (const auto& [jk, m2] : w2.transport) {
      if (jk.first != j) continue;
      Rat m = m1 * m2 / b;
      if (m != 0) out.transport[{i, jk.second}] += m;
    }
  }
  out.validate();
  return out;
}

}  // namespace hyperflow
