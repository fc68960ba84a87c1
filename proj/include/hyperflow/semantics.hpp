#pragma once

#include <functional>
#include <optional>

#include "hyperflow/hyper.hpp"
#include "hyperflow/lang.hpp"

namespace hyperflow {

/// An initial state: a concrete visible tuple plus a full prior over the
/// hidden tuple space.
struct InitState {
  Value vis;   // tuple over the visible variables
  Dist inner;  // full distribution over hidden tuples

  bool operator==(const InitState& o) const { return vis == o.vis && inner == o.inner; }
  bool operator<(const InitState& o) const {
    if (vis != o.vis) return vis < o.vis;
    return inner < o.inner;
  }
  std::string str() const { return "(" + vis.str() + ", " + dist_str(inner) + ")"; }
};

struct EvalOptions {
  bool implicit_uniform_locals = false;

  // Loop evaluation. The exact mode first explores the reachable state
  // graph of the loop; when it closes, the least fixed point is computed
  // by an exact rational linear solve. Iteration to tol/max_k remains as
  // the fallback (and as the only mode when IterateOnly is selected).
  enum class LoopMode { ExactThenIterate, IterateOnly };
  LoopMode loop_mode = LoopMode::ExactThenIterate;
  Rat loop_tol = rat_of(1, 1000000000);
  long loop_max_k = 1000000;
  size_t loop_closure_limit = 512;
};

struct LoopReport {
  enum class Status { Exact, TolConverged, MaxIterations };
  Hyper approximant;
  long iterations = 0;
  Rat deficit;
  Status status = Status::MaxIterations;
};

/// Evaluates a program from an initial state to its output hyper.
/// Runtime expression errors propagate with the offending state attached;
/// loop nontermination is weight deficit, never an exception.
Hyper denote(const SpaceDecl& space, const StmtPtr& program, const InitState& s,
             const EvalOptions& opts = {});

using ProgramFn = std::function<Hyper(const InitState&)>;

/// Applies a program function to every entry of a hyper and reassembles
/// with the original weights (avg after map).
Hyper kleisli_apply(const Hyper& h, const ProgramFn& f);

/// Kleisli composition of two hyper-producing functions.
ProgramFn kleisli_seq(ProgramFn first, ProgramFn second);

/// The k-th loop approximant from the empty program, with its deficit.
LoopReport loop_approximant(const SpaceDecl& space, const StmtPtr& body, const ExprPtr& p,
                            const InitState& s, long k, const EvalOptions& opts = {});

/// The loop's least fixed point under the termination order (exact when the
/// reachable state graph closes, otherwise iterated to tol/max_k).
LoopReport loop_fixpoint(const SpaceDecl& space, const StmtPtr& body, const ExprPtr& p,
                         const InitState& s, const EvalOptions& opts = {});

struct LoopEquivResult {
  struct PerPrior {
    InitState prior;
    bool equal;
  };
  std::vector<PerPrior> priors;
  bool all_equal = true;
  bool termination_certified = false;  // constant continue-probability < 1
  std::optional<Rat> guard_constant;
};

/// Checks the straight-line fixed-point equation (body; w) [p] skip = w at
/// each prior, with a termination certificate for constant guards < 1.
LoopEquivResult check_loop_equiv(const SpaceDecl& space, const StmtPtr& body, const ExprPtr& p,
                                 const StmtPtr& w, const std::vector<InitState>& priors,
                                 const EvalOptions& opts = {});

/// Extends every key of a hyper with freshly declared locals. With implicit
/// uniform initialization a visible local splits the entry per value (equal
/// posteriors); a hidden local takes the independent product. Otherwise
/// locals start at their domain's first element, to be overwritten by the
/// program before use.
Hyper scope_push(const std::vector<VarDecl>& decls, const Hyper& h, bool implicit_uniform);

/// Deletes the local visible coordinates from keys (the outer split is
/// retained, merging only keys that become equal) and marginalizes the
/// local hidden coordinates out of every inner.
Hyper scope_pop(const std::vector<VarDecl>& decls, const Hyper& h);

/// Throws unless every scope local is surely assigned before any use.
void check_locals_initialized(const std::vector<VarDecl>& decls, const StmtPtr& body);

// state-space helpers -------------------------------------------------------

/// All tuples over the given variables' domains, in lexicographic order.
std::vector<Value> enumerate_tuples(const std::vector<VarDecl>& vars);

Value default_vis_state(const SpaceDecl& space);
Dist uniform_hidden_prior(const SpaceDecl& space);
Dist point_hidden_prior(const SpaceDecl& space, const Value& hid_tuple);

InitState make_init(const SpaceDecl& space, const Dist& hidden_prior);
InitState make_init(const SpaceDecl& space, const Dist& hidden_prior, const Value& vis);

}  // namespace hyperflow
