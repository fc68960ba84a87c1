#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperflow/analysis.hpp"

namespace hyperflow {

/// How the per-prior sweep runs. Serial is the reference implementation;
/// the OpenMP path must produce an identical verdict (results are keyed by
/// prior index, never appended in completion order).
enum class Parallelism { Serial, OpenMP };

/// Deterministic family of initial states for program-level checking (the
/// orders quantify over all initial states; this samples them): every point
/// prior, the uniform prior, and K seeded pseudo-random full-support
/// rational priors; crossed with every visible state while that stays small.
struct PriorSuite {
  std::vector<InitState> priors;

  static PriorSuite make(const SpaceDecl& space, unsigned long seed = 0, size_t num_random = 16,
                         size_t vis_cross_limit = 8);
};

enum class Relation { Equiv, Refine, EntropyRefine };

struct PriorResult {
  bool holds = false;
  std::optional<Witness> witness;
  std::string note;
};

struct Verdict {
  Relation relation;
  bool holds = true;
  std::vector<PriorResult> results;  // one per suite prior, in order
  std::optional<size_t> counterexample;

  const InitState* counterexample_prior(const PriorSuite& suite) const {
    return counterexample ? &suite.priors[*counterexample] : nullptr;
  }
};

Verdict check_equiv(const SpaceDecl& space, const StmtPtr& p1, const StmtPtr& p2,
                    const PriorSuite& suite, const EvalOptions& opts = {},
                    Parallelism par = Parallelism::Serial);

/// relation Refine decides secure refinement spec ⊑ impl per prior;
/// EntropyRefine decides ⪯ instead.
Verdict check_refine(const SpaceDecl& space, const StmtPtr& spec, const StmtPtr& impl,
                     const PriorSuite& suite, Relation relation = Relation::Refine,
                     const EvalOptions& opts = {}, Parallelism par = Parallelism::Serial);

// ---------------------------------------------------------------------------
// Law catalog

struct LawInstance {
  std::string name;       // catalog identifier, unique
  std::string tag;        // display tag for the law family
  Relation relation = Relation::Equiv;
  bool strict = false;    // refinement laws that must fail in reverse
  std::string space;      // declaration text
  std::string left;       // program text
  std::string right;
  bool scalable_space = false;  // hidden int range may be overridden
};

struct LawResult {
  std::string name;
  std::string tag;
  bool pass = false;
  bool reverse_checked = false;
  bool reverse_failed = false;  // expected true for strict laws
  std::string detail;
};

/// The bundled catalog (same content as share/laws.json).
const std::string& builtin_laws_json();
std::vector<LawInstance> parse_laws_json(const std::string& text);

struct CatalogOptions {
  unsigned long seed = 0;
  size_t num_random = 16;
  std::optional<long> hid_int_max;  // override for scalable spaces
  EvalOptions eval;
  Parallelism par = Parallelism::Serial;
};

std::vector<LawResult> run_catalog(const std::vector<LawInstance>& laws,
                                   const CatalogOptions& opts = {});

}  // namespace hyperflow
