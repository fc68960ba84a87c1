#include "hyperflow/lawcheck.hpp"

#include <random>
#include <regex>

#include <json.hpp>

namespace hyperflow {

PriorSuite PriorSuite::make(const SpaceDecl& space, unsigned long seed, size_t num_random,
                            size_t vis_cross_limit) {
  auto hidden_states = enumerate_tuples(space.hidden());
  std::vector<Dist> hidden_priors;
  for (const auto& h : hidden_states) hidden_priors.push_back(Dist::point(h));
  hidden_priors.push_back(Dist::uniform(hidden_states));

  // Raw engine draws only: the distribution adaptors are not pinned down by
  // the standard, the engine is.
  std::mt19937_64 rng(seed);
  for (size_t i = 0; i < num_random; ++i) {
    Dist::Map m;
    Rat total = 0;
    for (const auto& h : hidden_states) {
      long num = static_cast<long>(rng() % 16) + 1;  // full support
      m[h] = Rat(num);
      total += num;
    }
    for (auto& [_, w] : m) w /= total;
    hidden_priors.push_back(Dist::from_entries(m));
  }

  std::vector<Value> vis_states = enumerate_tuples(space.visible());
  if (vis_states.size() > vis_cross_limit) vis_states = {default_vis_state(space)};

  PriorSuite suite;
  for (const auto& v : vis_states)
    for (const auto& d : hidden_priors) suite.priors.push_back(InitState{v, d});
  return suite;
}

namespace {

// Keyed sweep shared by both checkers: results land at their prior's index
// whichever path runs.
template <typename F>
std::vector<PriorResult> sweep(const PriorSuite& suite, Parallelism par, F&& one) {
  std::vector<PriorResult> results(suite.priors.size());
  const long n = static_cast<long>(suite.priors.size());
  if (par == Parallelism::OpenMP) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long i = 0; i < n; ++i) results[i] = one(suite.priors[i]);
  } else {
    for (long i = 0; i < n; ++i) results[i] = one(suite.priors[i]);
  }
  return results;
}

Verdict assemble(Relation rel, std::vector<PriorResult> results) {
  Verdict v;
  v.relation = rel;
  v.results = std::move(results);
  for (size_t i = 0; i < v.results.size(); ++i) {
    if (!v.results[i].holds) {
      v.holds = false;
      v.counterexample = i;
      break;
    }
  }
  return v;
}

}  // namespace

Verdict check_equiv(const SpaceDecl& space, const StmtPtr& p1, const StmtPtr& p2,
                    const PriorSuite& suite, const EvalOptions& opts, Parallelism par) {
  auto results = sweep(suite, par, [&](const InitState& s) {
    PriorResult r;
    Hyper a = denote(space, p1, s, opts);
    Hyper b = denote(space, p2, s, opts);
    r.holds = a == b;
    if (!r.holds) r.note = "hypers differ: " + a.str() + " vs " + b.str();
    return r;
  });
  return assemble(Relation::Equiv, std::move(results));
}

Verdict check_refine(const SpaceDecl& space, const StmtPtr& spec, const StmtPtr& impl,
                     const PriorSuite& suite, Relation relation, const EvalOptions& opts,
                     Parallelism par) {
  auto results = sweep(suite, par, [&](const InitState& s) {
    PriorResult r;
    Hyper a = denote(space, spec, s, opts);
    Hyper b = denote(space, impl, s, opts);
    auto w = relation == Relation::EntropyRefine ? entropy_refines(a, b) : secure_refines(a, b);
    r.holds = w.has_value();
    if (r.holds)
      r.witness = std::move(*w);
    else
      r.note = "no transport: " + a.str() + " vs " + b.str();
    return r;
  });
  return assemble(relation, std::move(results));
}

// ---------------------------------------------------------------------------
// Law catalog

std::vector<LawInstance> parse_laws_json(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  std::vector<LawInstance> out;
  for (const auto& j : doc.at("laws")) {
    LawInstance law;
    law.name = j.at("name").get<std::string>();
    law.tag = j.at("tag").get<std::string>();
    std::string rel = j.at("relation").get<std::string>();
    if (rel == "equiv")
      law.relation = Relation::Equiv;
    else if (rel == "refine")
      law.relation = Relation::Refine;
    else if (rel == "entropy")
      law.relation = Relation::EntropyRefine;
    else
      throw std::invalid_argument("unknown relation '" + rel + "' in law " + law.name);
    law.strict = j.value("strict", false);
    law.space = j.at("space").get<std::string>();
    law.left = j.at("left").get<std::string>();
    law.right = j.at("right").get<std::string>();
    law.scalable_space = j.value("scalable_space", false);
    out.push_back(std::move(law));
  }
  return out;
}

std::vector<LawResult> run_catalog(const std::vector<LawInstance>& laws,
                                   const CatalogOptions& opts) {
  std::vector<LawResult> out;
  for (const auto& law : laws) {
    LawResult res;
    res.name = law.name;
    res.tag = law.tag;
    try {
      std::string space_text = law.space;
      if (law.scalable_space && opts.hid_int_max) {
        space_text = std::regex_replace(space_text, std::regex("\\{0\\.\\.[0-9]+\\}"),
                                        "{0.." + std::to_string(*opts.hid_int_max) + "}");
      }
      ParsedProgram left = parse_program(space_text + " " + law.left);
      StmtPtr right = parse_stmt_in(left.space, law.right);
      PriorSuite suite = PriorSuite::make(left.space, opts.seed, opts.num_random);

      Verdict fwd = law.relation == Relation::Equiv
                        ? check_equiv(left.space, left.body, right, suite, opts.eval, opts.par)
                        : check_refine(left.space, left.body, right, suite, law.relation,
                                       opts.eval, opts.par);
      res.pass = fwd.holds;
      if (!fwd.holds && fwd.counterexample)
        res.detail = "failed at prior " + suite.priors[*fwd.counterexample].str() + ": " +
                     fwd.results[*fwd.counterexample].note;

      if (law.strict) {
        res.reverse_checked = true;
        Verdict rev = law.relation == Relation::Equiv
                          ? check_equiv(left.space, right, left.body, suite, opts.eval, opts.par)
                          : check_refine(left.space, right, left.body, suite, law.relation,
                                         opts.eval, opts.par);
        res.reverse_failed = !rev.holds;
        if (rev.holds) {
          res.pass = false;
          res.detail = "reverse direction unexpectedly holds";
        }
      }
    } catch (const std::exception& e) {
      res.pass = false;
      res.detail = e.what();
    }
    out.push_back(std::move(res));
  }
  return out;
}

}  // namespace hyperflow
