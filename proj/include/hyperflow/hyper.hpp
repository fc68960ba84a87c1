#pragma once

#include <map>
#include <string>
#include <utility>

#include "hyperflow/dist.hpp"

namespace hyperflow {

/// An inner distribution: the posterior over hidden state attached to one
/// observable outcome. Always full (weight exactly one).
using Inner = Dist;

/// A (possibly partial) hyperdistribution: exact rational weights on pairs
/// (visible state, hidden posterior). The missing weight is the probability
/// of nontermination. Construction merges equal keys and keeps them in
/// canonical order, so equal hypers are structurally equal.
class Hyper {
 public:
  using Key = std::pair<Value, Inner>;
  using Map = std::map<Key, Rat>;

  Hyper() = default;

  static Hyper single(const Value& vis, const Inner& inner, const Rat& w = Rat(1)) {
    Hyper h;
    h.add(vis, inner, w);
    return h;
  }

  // Merges with any existing equal key. Inner must be full, w nonnegative.
  void add(const Value& vis, const Inner& inner, const Rat& w);

  const Map& entries() const { return m_; }
  bool empty() const { return m_.empty(); }
  size_t support_size() const { return m_.size(); }

  Rat weight() const {
    Rat t = 0;
    for (const auto& [_, w] : m_) t += w;
    return t;
  }
  Rat deficit() const { return Rat(1) - weight(); }

  Rat at(const Value& vis, const Inner& inner) const {
    auto it = m_.find({vis, inner});
    return it == m_.end() ? Rat(0) : it->second;
  }

  Hyper scaled(const Rat& c) const;
  Hyper plus(const Hyper& o) const;

  /// Left marginal: the distribution of visible states.
  Dist vis_marginal() const;

  /// Flattens to the joint subdistribution over (visible, hidden) pairs.
  Dist to_joint() const;

  /// Per visible value, the weighted average of the attached inners
  /// (the a-priori hidden distribution carried by that visible value).
  std::map<Value, Dist> hidden_by_vis() const;

  friend bool operator==(const Hyper& a, const Hyper& b) { return a.m_ == b.m_; }
  friend bool operator!=(const Hyper& a, const Hyper& b) { return a.m_ != b.m_; }

  std::string str() const;

 private:
  Map m_;
};

/// The pointwise termination order: a.s <= b.s for every key.
bool terminates_leq(const Hyper& a, const Hyper& b);

/// Pointwise supremum of two hypers (used by the termination-chain tests).
Hyper hyper_sup(const Hyper& a, const Hyper& b);

/// Partitions a joint subdistribution over (visible, hidden) pairs by the
/// visible component: each class contributes (v, normalized conditional)
/// with the class's marginal weight.
Hyper rv(const Dist& joint);

}  // namespace hyperflow
