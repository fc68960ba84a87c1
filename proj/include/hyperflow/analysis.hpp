#pragma once

#include <optional>

#include "hyperflow/refine.hpp"
#include "hyperflow/semantics.hpp"

namespace hyperflow {

/// Natural-log Shannon entropy of a full distribution; 0 ln 0 = 0.
/// The only floating-point quantity in the library; exact surrogates
/// (gauge, Bayes risk) carry the strict verdicts.
double shannon(const Dist& d);

/// Weighted entropy of the inners of a full hyper.
double cond_shannon(const Hyper& h);

/// One minus the best single guess.
Rat bayes_risk(const Dist& d);
Rat cond_bayes_risk(const Hyper& h);

struct LeakReport {
  Rat deficit;  // nontermination mass of the output hyper

  double prior_shannon = 0;
  std::optional<double> posterior_shannon;  // absent when the output is partial
  Rat prior_bayes_risk;
  std::optional<Rat> posterior_bayes_risk;
  Rat gauge_before;
  Rat gauge_after;

  struct InnerLine {
    Value vis;
    Dist inner;
    Rat weight;
    double shannon;
    Rat bayes_risk;
  };
  std::vector<InnerLine> per_inner;
};

/// Before/after leakage measures for one program run.
LeakReport leak_report(const SpaceDecl& space, const StmtPtr& program, const InitState& prior,
                       const EvalOptions& opts = {});

}  // namespace hyperflow
