#include "hyperflow/analysis.hpp"

#include <cmath>

namespace hyperflow {

double shannon(const Dist& d) {
  if (!d.full()) throw std::invalid_argument("entropy of a partial distribution");
  double h = 0;
  for (const auto& [_, p] : d.entries()) {
    double x = rat_double(p);
    if (x > 0) h -= x * std::log(x);
  }
  return h;
}

double cond_shannon(const Hyper& h) {
  if (h.weight() != 1) throw std::invalid_argument("conditional entropy of a partial hyper");
  double total = 0;
  for (const auto& [k, w] : h.entries()) total += rat_double(w) * shannon(k.second);
  return total;
}

Rat bayes_risk(const Dist& d) {
  if (!d.full()) throw std::invalid_argument("Bayes risk of a partial distribution");
  Rat best = 0;
  for (const auto& [_, p] : d.entries())
    if (p > best) best = p;
  return Rat(1) - best;
}

Rat cond_bayes_risk(const Hyper& h) {
  if (h.weight() != 1) throw std::invalid_argument("Bayes risk of a partial hyper");
  Rat total = 0;
  for (const auto& [k, w] : h.entries()) total += w * bayes_risk(k.second);
  return total;
}

LeakReport leak_report(const SpaceDecl& space, const StmtPtr& program, const InitState& prior,
                       const EvalOptions& opts) {
  Hyper out = denote(space, program, prior, opts);

  LeakReport rep;
  rep.deficit = out.deficit();
  rep.prior_shannon = shannon(prior.inner);
  rep.prior_bayes_risk = bayes_risk(prior.inner);
  rep.gauge_before = gauge(prior.inner);
  rep.gauge_after = gauge(out);
  if (rep.deficit == 0) {
    rep.posterior_shannon = cond_shannon(out);
    rep.posterior_bayes_risk = cond_bayes_risk(out);
  }
  for (const auto& [k, w] : out.entries())
    rep.per_inner.push_back(
        {k.first, k.second, w, shannon(k.second), bayes_risk(k.second)});
  return rep;
}

}  // namespace hyperflow
