#include "hyperflow/json_io.hpp"

#include <cstdio>

namespace hyperflow {

namespace {

std::string float_str(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace

Json value_json(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Bool: return Json(v.as_bool());
    case Value::Kind::Int: return Json(v.as_int());
    case Value::Kind::Sym: return Json(v.as_sym());
    case Value::Kind::Rational: return Json(rat_str(v.as_rational()));
    case Value::Kind::Tuple: {
      Json arr = Json::array();
      for (const auto& e : v.as_tuple()) arr.push_back(value_json(e));
      return arr;
    }
  }
  return Json();
}

Json dist_json(const Dist& d) {
  Json arr = Json::array();
  for (const auto& [v, p] : d.entries()) {
    Json e;
    e["value"] = value_json(v);
    e["prob"] = rat_str(p);
    arr.push_back(std::move(e));
  }
  return arr;
}

Json hyper_json(const Hyper& h) {
  Json j;
  j["weight"] = rat_str(h.weight());
  j["deficit"] = rat_str(h.deficit());
  Json entries = Json::array();
  for (const auto& [k, w] : h.entries()) {
    Json e;
    e["vis"] = value_json(k.first);
    e["prob"] = rat_str(w);
    e["inner"] = dist_json(k.second);
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

Json witness_json(const Witness& w) {
  auto entry_list = [](const std::vector<Witness::Entry>& es) {
    Json arr = Json::array();
    for (const auto& e : es) {
      Json j;
      j["vis"] = value_json(e.vis);
      j["prob"] = rat_str(e.wgt);
      j["inner"] = dist_json(e.inner);
      arr.push_back(std::move(j));
    }
    return arr;
  };
  Json j;
  j["pure_entropy"] = w.pure_entropy();
  j["source"] = entry_list(w.source);
  j["target"] = entry_list(w.target);
  Json moves = Json::array();
  for (const auto& [ij, m] : w.transport) {
    Json e;
    e["from"] = ij.first;
    e["to"] = ij.second;
    e["mass"] = rat_str(m);
    moves.push_back(std::move(e));
  }
  j["transport"] = std::move(moves);
  if (!w.slack.empty()) {
    Json slack = Json::array();
    for (const auto& [col, add] : w.slack) {
      Json e;
      e["to"] = col;
      e["added"] = dist_json(add);
      slack.push_back(std::move(e));
    }
    j["termination_mass"] = std::move(slack);
  }
  return j;
}

Json verdict_json(const Verdict& v, const PriorSuite& suite, bool include_witnesses) {
  Json j;
  switch (v.relation) {
    case Relation::Equiv: j["relation"] = "equiv"; break;
    case Relation::Refine: j["relation"] = "refine"; break;
    case Relation::EntropyRefine: j["relation"] = "entropy-refine"; break;
  }
  j["holds"] = v.holds;
  j["priors_checked"] = v.results.size();
  Json results = Json::array();
  for (size_t i = 0; i < v.results.size(); ++i) {
    Json e;
    e["vis"] = value_json(suite.priors[i].vis);
    e["prior"] = dist_json(suite.priors[i].inner);
    e["holds"] = v.results[i].holds;
    if (!v.results[i].note.empty()) e["note"] = v.results[i].note;
    if (include_witnesses && v.results[i].witness)
      e["witness"] = witness_json(*v.results[i].witness);
    results.push_back(std::move(e));
  }
  j["results"] = std::move(results);
  if (v.counterexample) {
    Json c;
    c["index"] = *v.counterexample;
    c["vis"] = value_json(suite.priors[*v.counterexample].vis);
    c["prior"] = dist_json(suite.priors[*v.counterexample].inner);
    c["note"] = v.results[*v.counterexample].note;
    j["counterexample"] = std::move(c);
  }
  return j;
}

Json leak_report_json(const LeakReport& r, bool bits) {
  const double scale = bits ? 1.4426950408889634 : 1.0;  // 1/ln 2
  Json j;
  j["entropy_unit"] = bits ? "bits" : "nats";
  j["deficit"] = rat_str(r.deficit);
  j["prior_shannon_float"] = float_str(r.prior_shannon * scale);
  if (r.posterior_shannon)
    j["posterior_shannon_float"] = float_str(*r.posterior_shannon * scale);
  j["prior_bayes_risk"] = rat_str(r.prior_bayes_risk);
  if (r.posterior_bayes_risk)
    j["posterior_bayes_risk"] = rat_str(*r.posterior_bayes_risk);
  j["gauge_before"] = rat_str(r.gauge_before);
  j["gauge_after"] = rat_str(r.gauge_after);
  Json inners = Json::array();
  for (const auto& line : r.per_inner) {
    Json e;
    e["vis"] = value_json(line.vis);
    e["prob"] = rat_str(line.weight);
    e["inner"] = dist_json(line.inner);
    e["shannon_float"] = float_str(line.shannon * scale);
    e["bayes_risk"] = rat_str(line.bayes_risk);
    inners.push_back(std::move(e));
  }
  j["per_inner"] = std::move(inners);
  return j;
}

Json loop_report_json(const LoopReport& r) {
  Json j;
  switch (r.status) {
    case LoopReport::Status::Exact: j["status"] = "exact"; break;
    case LoopReport::Status::TolConverged: j["status"] = "converged"; break;
    case LoopReport::Status::MaxIterations: j["status"] = "nonconverged"; break;
  }
  j["iterations"] = r.iterations;
  j["deficit"] = rat_str(r.deficit);
  j["hyper"] = hyper_json(r.approximant);
  return j;
}

Json law_results_json(const std::vector<LawResult>& results) {
  Json arr = Json::array();
  for (const auto& r : results) {
    Json e;
    e["name"] = r.name;
    e["tag"] = r.tag;
    e["pass"] = r.pass;
    if (r.reverse_checked) e["reverse_failed"] = r.reverse_failed;
    if (!r.detail.empty()) e["detail"] = r.detail;
    arr.push_back(std::move(e));
  }
  Json j;
  j["laws"] = std::move(arr);
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  j["all_pass"] = all;
  return j;
}

Dist parse_prior_json(const SpaceDecl& space, const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  if (!doc.is_object()) throw runtime_error("prior file must be a JSON object");
  Dist::Map m;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    Value key = parse_value(it.key());
    size_t n_hid = space.hidden().size();
    if (!key.is_tuple() && n_hid == 1) key = Value::tuple({key});
    m[key] += parse_rat(it.value().get<std::string>());
  }
  Dist d = Dist::from_entries(m);
  if (!d.full()) throw runtime_error("prior weights must sum to one");
  // make_init revalidates against the declared space
  return d;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace hyperflow
