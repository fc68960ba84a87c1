#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperflow/value.hpp"

namespace hyperflow {

/// A finite-support subdistribution over keys of type K: exact rational
/// weights, total weight at most one, zero entries never stored, keys held
/// in their canonical order. Structural equality therefore coincides with
/// mathematical equality. Full distributions (weight exactly one) are the
/// inners of hypers; the missing weight of a partial distribution is the
/// probability of nontermination.
template <typename K>
class DistT {
 public:
  using Map = std::map<K, Rat>;

  DistT() = default;

  static DistT point(const K& x) {
    DistT d;
    d.m_[x] = 1;
    return d;
  }

  static DistT uniform(const std::vector<K>& xs) {
    if (xs.empty()) throw std::invalid_argument("empty uniform");
    DistT d;
    // duplicates collapse first: a uniform choice is over the *set*
    Map seen;
    for (const auto& x : xs) seen[x] = 0;
    Rat share = rat_of(1, static_cast<long>(seen.size()));
    for (auto& [x, _] : seen) d.m_[x] = share;
    return d;
  }

  // Drops zeros; rejects negative weights and weight > 1.
  static DistT from_entries(const Map& entries) {
    DistT d;
    Rat total = 0;
    for (const auto& [k, w] : entries) {
      if (w < 0) throw std::invalid_argument("negative weight in distribution");
      if (w == 0) continue;
      d.m_[k] = w;
      total += w;
    }
    if (total > 1) throw std::invalid_argument("distribution weight exceeds one");
    return d;
  }

  const Map& entries() const { return m_; }
  bool empty() const { return m_.empty(); }
  size_t support_size() const { return m_.size(); }

  Rat weight() const {
    Rat t = 0;
    for (const auto& [_, w] : m_) t += w;
    return t;
  }
  bool full() const { return weight() == 1; }

  Rat at(const K& x) const {
    auto it = m_.find(x);
    return it == m_.end() ? Rat(0) : it->second;
  }

  DistT scaled(const Rat& c) const {
    if (c < 0) throw std::invalid_argument("negative scale");
    DistT d;
    if (c == 0) return d;
    for (const auto& [k, w] : m_) d.m_[k] = w * c;
    return d;
  }

  // Pointwise sum; the result must still be a subdistribution.
  DistT plus(const DistT& o) const {
    Map sum = m_;
    for (const auto& [k, w] : o.m_) sum[k] += w;
    return from_entries(sum);
  }

  DistT normalized() const {
    Rat w = weight();
    if (w == 0) throw std::invalid_argument("normalizing the empty distribution");
    DistT d;
    for (const auto& [k, p] : m_) d.m_[k] = p / w;
    return d;
  }

  friend bool operator==(const DistT& a, const DistT& b) { return a.m_ == b.m_; }
  friend bool operator!=(const DistT& a, const DistT& b) { return a.m_ != b.m_; }
  friend bool operator<(const DistT& a, const DistT& b) { return a.m_ < b.m_; }

 private:
  Map m_;
};

using Dist = DistT<Value>;

/// Push-forward of d through f; weight is preserved exactly.
template <typename K, typename F>
auto map_dist(F&& f, const DistT<K>& d) -> DistT<std::decay_t<decltype(f(std::declval<const K&>()))>> {
  using K2 = std::decay_t<decltype(f(std::declval<const K&>()))>;
  typename DistT<K2>::Map out;
  for (const auto& [k, w] : d.entries()) out[f(k)] += w;
  return DistT<K2>::from_entries(out);
}

/// Monad multiplication: averages a distribution of distributions.
template <typename K>
DistT<K> avg(const DistT<DistT<K>>& dd) {
  typename DistT<K>::Map out;
  for (const auto& [inner, w] : dd.entries())
    for (const auto& [k, p] : inner.entries()) out[k] += w * p;
  return DistT<K>::from_entries(out);
}

/// Expected value of a nonnegative weight function over d's support.
template <typename K, typename W>
Rat expected(const DistT<K>& d, W&& weight_fn) {
  Rat total = 0;
  for (const auto& [k, w] : d.entries()) {
    Rat r = weight_fn(k);
    if (r < 0) throw std::invalid_argument("negative weight function value");
    total += w * r;
  }
  return total;
}

/// The general comprehension: reweight d by r, push forward through e,
/// normalize. Conditioning on an event of measure zero is an error here;
/// the semantics layer maps the analogous assertion case to weight loss.
template <typename K, typename R, typename E>
auto comprehend(const DistT<K>& d, R&& r, E&& e) -> DistT<std::decay_t<decltype(e(std::declval<const K&>()))>> {
  using K2 = std::decay_t<decltype(e(std::declval<const K&>()))>;
  typename DistT<K2>::Map out;
  Rat denom = 0;
  for (const auto& [k, w] : d.entries()) {
    Rat rw = r(k);
    if (rw < 0) throw std::invalid_argument("negative weight function value");
    if (rw == 0) continue;
    out[e(k)] += w * rw;
    denom += w * rw;
  }
  if (denom == 0) throw std::domain_error("conditioning on measure-zero event");
  typename DistT<K2>::Map scaled;
  for (auto& [k, w] : out) scaled[k] = w / denom;
  return DistT<K2>::from_entries(scaled);
}

inline Rat bool_weight(bool b) { return Rat(b ? 1 : 0); }

std::string dist_str(const Dist& d);

}  // namespace hyperflow
