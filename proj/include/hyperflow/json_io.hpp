#pragma once

#include <json.hpp>

#include "hyperflow/lawcheck.hpp"

namespace hyperflow {

/// Canonical JSON renderings: field order fixed, map keys already canonical,
/// rationals as "num" / "num/den" strings, entropies as *_float fields.
/// Identical inputs produce byte-identical output.
using Json = nlohmann::ordered_json;

Json value_json(const Value& v);
Json dist_json(const Dist& d);
Json hyper_json(const Hyper& h);
Json witness_json(const Witness& w);
Json verdict_json(const Verdict& v, const PriorSuite& suite, bool include_witnesses);
Json leak_report_json(const LeakReport& r, bool bits);
Json loop_report_json(const LoopReport& r);
Json law_results_json(const std::vector<LawResult>& results);

/// Prior file format: a JSON object mapping hidden-state literals to
/// rational weight strings; must sum to one.
Dist parse_prior_json(const SpaceDecl& space, const std::string& text);

std::string dump_json(const Json& j);

}  // namespace hyperflow
