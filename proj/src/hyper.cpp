#include "hyperflow/hyper.hpp"

#include <sstream>

namespace hyperflow {

void Hyper::add(const Value& vis, const Inner& inner, const Rat& w) {
  if (w < 0) throw std::invalid_argument("negative hyper weight");
  if (w == 0) return;
  if (!inner.full()) throw std::invalid_argument("hyper inner must have weight one");
  m_[{vis, inner}] += w;
  if (weight() > 1) throw std::invalid_argument("hyper weight exceeds one");
}

Hyper Hyper::scaled(const Rat& c) const {
  if (c < 0) throw std::invalid_argument("negative scale");
  Hyper h;
  if (c == 0) return h;
  for (const auto& [k, w] : m_) h.m_[k] = w * c;
  return h;
}

Hyper Hyper::plus(const Hyper& o) const {
  Hyper h = *this;
  for (const auto& [k, w] : o.m_) {
    if (w == 0) continue;
    h.m_[k] += w;
  }
  if (h.weight() > 1) throw std::invalid_argument("hyper weight exceeds one");
  return h;
}

Dist Hyper::vis_marginal() const {
  Dist::Map out;
  for (const auto& [k, w] : m_) out[k.first] += w;
  return Dist::from_entries(out);
}

Dist Hyper::to_joint() const {
  Dist::Map out;
  for (const auto& [k, w] : m_)
    for (const auto& [h, p] : k.second.entries())
      out[Value::tuple({k.first, h})] += w * p;
  return Dist::from_entries(out);
}

std::map<Value, Dist> Hyper::hidden_by_vis() const {
  std::map<Value, Dist::Map> acc;
  for (const auto& [k, w] : m_)
    for (const auto& [h, p] : k.second.entries()) acc[k.first][h] += w * p;
  std::map<Value, Dist> out;
  for (auto& [v, m] : acc) out.emplace(v, Dist::from_entries(m));
  return out;
}

std::string Hyper::str() const {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& [k, w] : m_) {
    if (!first) out << ", ";
    first = false;
    out << "(" << k.first.str() << ", " << dist_str(k.second) << ") @ " << rat_str(w);
  }
  out << "}";
  return out.str();
}

bool terminates_leq(const Hyper& a, const Hyper& b) {
  for (const auto& [k, w] : a.entries())
    if (w > b.at(k.first, k.second)) return false;
  return true;
}

Hyper hyper_sup(const Hyper& a, const Hyper& b) {
  Hyper h = a;
  for (const auto& [k, w] : b.entries()) {
    Rat cur = h.at(k.first, k.second);
    if (w > cur) h.add(k.first, k.second, w - cur);
  }
  return h;
}

Hyper rv(const Dist& joint) {
  // keys must be (visible, hidden) pairs
  std::map<Value, Dist::Map> classes;
  std::map<Value, Rat> mass;
  for (const auto& [pair, w] : joint.entries()) {
    if (!pair.is_tuple() || pair.as_tuple().size() != 2)
      throw std::invalid_argument("rv expects a joint over (visible, hidden) pairs");
    const Value& v = pair.as_tuple()[0];
    const Value& h = pair.as_tuple()[1];
    classes[v][h] += w;
    mass[v] += w;
  }
  Hyper out;
  for (auto& [v, cond] : classes) {
    Dist::Map norm;
    for (auto& [h, w] : cond) norm[h] = w / mass[v];
    out.add(v, Dist::from_entries(norm), mass[v]);
  }
  return out;
}

}  // namespace hyperflow
