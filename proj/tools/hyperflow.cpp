// hyperflow: evaluate programs to hyperdistributions, compare them under the
// refinement orders, measure leakage, iterate loops, run the law catalog.
//
// Exit codes: 0 success / relation holds, 1 relation fails, 2 usage, parse
// or runtime error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hyperflow/json_io.hpp"

namespace hf = hyperflow;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw hf::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct PriorOpt {
  std::string spec = "uniform";

  hf::InitState resolve(const hf::SpaceDecl& space) const {
    if (spec == "uniform")
      return hf::make_init(space, hf::uniform_hidden_prior(space));
    if (spec.rfind("point=", 0) == 0) {
      hf::Value v = hf::parse_value(spec.substr(6));
      if (!v.is_tuple() && space.hidden().size() == 1) v = hf::Value::tuple({v});
      return hf::make_init(space, hf::point_hidden_prior(space, v));
    }
    if (spec.rfind("file=", 0) == 0) {
      hf::Dist d = hf::parse_prior_json(space, read_file(spec.substr(5)));
      return hf::make_init(space, d);
    }
    throw hf::runtime_error("bad --prior: expected uniform, point=<value> or file=<path>");
  }
};

void emit(const hf::Json& j, const std::string& format, const std::string& text_form) {
  if (format == "text")
    std::cout << text_form << "\n";
  else
    std::cout << hf::dump_json(j);
}

int run(int argc, char** argv) {
  CLI::App app{"hyperdistribution semantics, refinement and leakage toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string format = "json";
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

  hf::EvalOptions eval_opts;
  bool implicit_locals = false;
  app.add_flag("--implicit-uniform-locals", implicit_locals,
               "initialize scope locals uniformly instead of requiring explicit assignment");

  std::string tol_text;
  long max_k = -1;
  auto* tol_opt = app.add_option("--tol", tol_text, "loop iteration tolerance (rational)");
  auto* maxk_opt = app.add_option("--max-k", max_k, "loop iteration bound");

  unsigned long seed = 0;
  size_t num_random = 16;
  bool parallel = false;
  app.add_option("--seed", seed, "prior suite seed");
  app.add_option("--random", num_random, "number of random priors in the suite");
  app.add_flag("--parallel", parallel, "sweep priors with OpenMP");

  PriorOpt prior;
  std::string file_a, file_b, relation = "refine";
  bool explain = false, bits = false;
  std::string laws_file;
  long hid_max = -1;

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a program to its output hyper");
  eval_cmd->add_option("file", file_a, "program file")->required();
  eval_cmd->add_option("--prior", prior.spec, "uniform | point=<value> | file=<path>");

  auto* compare_cmd = app.add_subcommand("compare", "compare two programs over a prior suite");
  compare_cmd->add_option("spec", file_a, "specification program")->required();
  compare_cmd->add_option("impl", file_b, "implementation program")->required();
  compare_cmd->add_option("--relation", relation, "refine | equiv | entropy")
      ->check(CLI::IsMember({"refine", "equiv", "entropy"}));
  compare_cmd->add_flag("--explain", explain, "include refinement witnesses in the output");

  auto* entropy_cmd = app.add_subcommand("entropy", "leakage report for one program run");
  entropy_cmd->add_option("file", file_a, "program file")->required();
  entropy_cmd->add_option("--prior", prior.spec, "uniform | point=<value> | file=<path>");
  entropy_cmd->add_flag("--bits", bits, "display entropies in bits instead of nats");

  auto* loop_cmd = app.add_subcommand("loop", "fixed-point report for a top-level loop");
  loop_cmd->add_option("file", file_a, "program file (a single while loop)")->required();
  loop_cmd->add_option("--prior", prior.spec, "uniform | point=<value> | file=<path>");

  auto* laws_cmd = app.add_subcommand("laws", "run the bundled law catalog");
  laws_cmd->add_option("--laws-file", laws_file, "alternative catalog JSON");
  laws_cmd->add_option("--hid-max", hid_max, "override the hidden integer range of scalable laws");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  eval_opts.implicit_uniform_locals = implicit_locals;
  if (!tol_text.empty()) {
    eval_opts.loop_tol = hf::parse_rat(tol_text);
    if (eval_opts.loop_tol <= 0) throw hf::runtime_error("--tol must be positive");
  }
  if (max_k >= 0) eval_opts.loop_max_k = max_k;
  // an explicit iteration budget asks for the approximant, not the limit
  if ((tol_opt->count() || maxk_opt->count()) && !compare_cmd->parsed())
    eval_opts.loop_mode = hf::EvalOptions::LoopMode::IterateOnly;

  hf::Parallelism par = parallel ? hf::Parallelism::OpenMP : hf::Parallelism::Serial;

  if (eval_cmd->parsed()) {
    hf::ParsedProgram prog = hf::parse_program(read_file(file_a));
    hf::InitState s = prior.resolve(prog.space);
    hf::Hyper out = hf::denote(prog.space, prog.body, s, eval_opts);
    emit(hf::hyper_json(out), format,
         "weight " + hf::rat_str(out.weight()) + "  " + out.str());
    return 0;
  }

  if (compare_cmd->parsed()) {
    hf::ParsedProgram spec = hf::parse_program(read_file(file_a));
    hf::ParsedProgram impl = hf::parse_program(read_file(file_b));
    if (!(spec.space == impl.space))
      throw hf::runtime_error("programs declare different spaces");
    hf::PriorSuite suite = hf::PriorSuite::make(spec.space, seed, num_random);
    hf::Verdict v;
    if (relation == "equiv")
      v = hf::check_equiv(spec.space, spec.body, impl.body, suite, eval_opts, par);
    else
      v = hf::check_refine(spec.space, spec.body, impl.body, suite,
                           relation == "entropy" ? hf::Relation::EntropyRefine
                                                 : hf::Relation::Refine,
                           eval_opts, par);
    std::string text = std::string(v.holds ? "holds" : "fails") + " on " +
                       std::to_string(v.results.size()) + " priors";
    if (!v.holds && v.counterexample)
      text += "; counterexample prior " + suite.priors[*v.counterexample].str();
    emit(hf::verdict_json(v, suite, explain), format, text);
    return v.holds ? 0 : 1;
  }

  if (entropy_cmd->parsed()) {
    hf::ParsedProgram prog = hf::parse_program(read_file(file_a));
    hf::InitState s = prior.resolve(prog.space);
    hf::LeakReport rep = hf::leak_report(prog.space, prog.body, s, eval_opts);
    std::ostringstream text;
    text << "prior risk " << hf::rat_str(rep.prior_bayes_risk);
    if (rep.posterior_bayes_risk)
      text << ", posterior risk " << hf::rat_str(*rep.posterior_bayes_risk);
    else
      text << ", deficit " << hf::rat_str(rep.deficit);
    emit(hf::leak_report_json(rep, bits), format, text.str());
    return 0;
  }

  if (loop_cmd->parsed()) {
    hf::ParsedProgram prog = hf::parse_program(read_file(file_a));
    if (prog.body->kind != hf::Stmt::Kind::While)
      throw hf::runtime_error("loop expects a file whose program is a single while loop");
    hf::InitState s = prior.resolve(prog.space);
    hf::LoopReport rep = hf::loop_fixpoint(prog.space, prog.body->kids[0], prog.body->expr, s,
                                           eval_opts);
    emit(hf::loop_report_json(rep), format,
         "deficit " + hf::rat_str(rep.deficit) + " after " + std::to_string(rep.iterations) +
             " iterations");
    return 0;
  }

  if (laws_cmd->parsed()) {
    std::string text = laws_file.empty() ? hf::builtin_laws_json() : read_file(laws_file);
    auto laws = hf::parse_laws_json(text);
    hf::CatalogOptions copts;
    copts.seed = seed;
    copts.num_random = num_random;
    copts.eval = eval_opts;
    copts.par = par;
    if (hid_max >= 0) copts.hid_int_max = hid_max;
    auto results = hf::run_catalog(laws, copts);
    bool all = true;
    std::ostringstream text_out;
    for (const auto& r : results) {
      all = all && r.pass;
      text_out << (r.pass ? "pass" : "FAIL") << "  " << r.tag << "  " << r.name;
      if (!r.detail.empty()) text_out << "  -- " << r.detail;
      text_out << "\n";
    }
    emit(hf::law_results_json(results), format, text_out.str());
    return all ? 0 : 1;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
