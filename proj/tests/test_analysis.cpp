#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "hyperflow/analysis.hpp"

using namespace hyperflow;
using hftest::bdist;
using hftest::dist_of;
using hftest::hyper_of;
using hftest::q;

namespace {

constexpr double kTol = 1e-12;

Value VI(long i) { return Value(i); }
Value VT(std::vector<Value> t) { return Value::tuple(std::move(t)); }

Dist hid_uniform_ints(long lo, long hi) {
  std::vector<Value> vs;
  for (long i = lo; i <= hi; ++i) vs.push_back(VT({VI(i)}));
  return Dist::uniform(vs);
}

}  // namespace

TEST_CASE("shannon entropy") {
  CHECK(shannon(Dist::point(VI(3))) == 0.0);
  for (long n : {2L, 3L, 5L, 8L}) {
    std::vector<Value> vs;
    for (long i = 0; i < n; ++i) vs.push_back(VI(i));
    CHECK(std::abs(shannon(Dist::uniform(vs)) - std::log(double(n))) < kTol);
  }
  double expect = -(1.0 / 3) * std::log(1.0 / 3) - (2.0 / 3) * std::log(2.0 / 3);
  CHECK(std::abs(shannon(bdist(q(1, 3))) - expect) < kTol);
  CHECK_THROWS(shannon(Dist::from_entries({{VI(0), q(1, 2)}})));
}

TEST_CASE("conditional entropy of a hyper") {
  Dist d = bdist(q(1, 3));
  CHECK(cond_shannon(hyper_of({{d, q(1)}})) == shannon(d));

  // the quarter-matrix revelation: the point inner contributes zero
  Hyper h = hyper_of({{Dist::point(Value(true)), q(1, 8)}, {bdist(q(3, 7)), q(7, 8)}});
  CHECK(std::abs(cond_shannon(h) - (7.0 / 8) * shannon(bdist(q(3, 7)))) < kTol);

  CHECK_THROWS(cond_shannon(hyper_of({{d, q(1, 2)}})));

  // revelations only decrease entropy
  auto p = parse_program("hid h:{0..3}; reveal h mod 2");
  for (const auto& prior : {hid_uniform_ints(0, 3),
                            dist_of({{VT({VI(0)}), q(1, 2)},
                                     {VT({VI(1)}), q(1, 4)},
                                     {VT({VI(2)}), q(1, 4)}})}) {
    InitState s = make_init(p.space, prior);
    CHECK(cond_shannon(denote(p.space, p.body, s)) <= shannon(prior) + kTol);
  }
}

TEST_CASE("bayes risk") {
  CHECK(bayes_risk(Dist::uniform({VI(0), VI(1), VI(2)})) == q(2, 3));
  CHECK(bayes_risk(Dist::point(VI(0))) == 0);
  CHECK(cond_bayes_risk(hyper_of({{Dist::point(VI(1)), q(1)}})) == 0);

  // single-guess attack at N=1, P=3: risk drops from 2/3 to 1/3
  auto p = parse_program(
      "hid p:{p1,p2,p3}; [[ vis g:{p1,p2,p3}; g :in uniform{p1, p2, p3}; reveal g = p ]]");
  InitState s = make_init(p.space, uniform_hidden_prior(p.space));
  CHECK(bayes_risk(s.inner) == q(2, 3));
  CHECK(cond_bayes_risk(denote(p.space, p.body, s)) == q(1, 3));
}

TEST_CASE("leak report") {
  auto skip = parse_program("hid h:{0..3}; skip");
  InitState s = make_init(skip.space, uniform_hidden_prior(skip.space));
  LeakReport r = leak_report(skip.space, skip.body, s);
  CHECK(r.deficit == 0);
  REQUIRE(r.posterior_shannon.has_value());
  CHECK(std::abs(*r.posterior_shannon - r.prior_shannon) < kTol);
  CHECK(*r.posterior_bayes_risk == r.prior_bayes_risk);
  CHECK(r.gauge_after == r.gauge_before);

  auto total = parse_program("hid h:{0..3}; reveal h");
  LeakReport rt = leak_report(total.space, total.body, s);
  CHECK(*rt.posterior_shannon == 0.0);
  CHECK(*rt.posterior_bayes_risk == 0);
  CHECK(rt.gauge_after == 1);

  // divergence shows up as deficit, entropy fields stay absent
  auto div = parse_program("hid h:{0..3}; while 1 do skip od");
  LeakReport rd = leak_report(div.space, div.body, s);
  CHECK(rd.deficit == 1);
  CHECK_FALSE(rd.posterior_shannon.has_value());
  CHECK_FALSE(rd.posterior_bayes_risk.has_value());

  // the single-guess attack through the report path
  auto guess = parse_program(
      "hid p:{p1,p2,p3}; [[ vis g:{p1,p2,p3}; g :in uniform{p1, p2, p3}; reveal g = p ]]");
  InitState sg = make_init(guess.space, uniform_hidden_prior(guess.space));
  LeakReport rg = leak_report(guess.space, guess.body, sg);
  CHECK(rg.prior_bayes_risk == q(2, 3));
  CHECK(*rg.posterior_bayes_risk == q(1, 3));
  CHECK(rg.per_inner.size() == 6);
}

TEST_CASE("measures respect refinement on the worked pair") {
  Hyper spec = hyper_of(
      {{bdist(q(1, 3)), q(1, 4)}, {bdist(q(1, 2)), q(1, 3)}, {bdist(q(1)), q(5, 12)}});
  Hyper impl = hyper_of({{bdist(q(3, 7)), q(7, 12)}, {bdist(q(1)), q(5, 12)}});
  REQUIRE(secure_refines(spec, impl).has_value());
  CHECK(cond_shannon(spec) <= cond_shannon(impl) + kTol);
  CHECK(cond_bayes_risk(spec) <= cond_bayes_risk(impl));
  CHECK(gauge(spec) >= gauge(impl));
}

TEST_CASE("post-processing an emission cannot sharpen it") {
  auto plain = parse_program("hid h:bool; reveal {{true @ h/4, false @ 3*h/4 + (1 - h)}}");
  auto noisy = parse_program(
      "hid h:bool; reveal {{true @ 5*h/8 + (1 - h)/2, false @ 3*h/8 + (1 - h)/2}}");
  for (const auto& prior : {bdist(q(1, 2)), bdist(q(1, 5)), bdist(q(5, 6))}) {
    Dist::Map lifted;
    for (const auto& [b, p] : prior.entries()) lifted[VT({b})] = p;
    InitState s = make_init(plain.space, Dist::from_entries(lifted));
    double before = cond_shannon(denote(plain.space, plain.body, s));
    double after = cond_shannon(denote(noisy.space, noisy.body, s));
    CHECK(after >= before - kTol);
  }
}

TEST_CASE("averaging concavity") {
  for (const Hyper& h : {hyper_of({{bdist(q(1, 3)), q(1, 2)}, {bdist(q(3, 4)), q(1, 2)}}),
                         hyper_of({{bdist(q(1, 5)), q(2, 3)}, {bdist(q(1)), q(1, 3)}})}) {
    Dist::Map avg_map;
    for (const auto& [k, w] : h.entries())
      for (const auto& [x, pr] : k.second.entries()) avg_map[x] += w * pr;
    Dist averaged = Dist::from_entries(avg_map);
    CHECK(shannon(averaged) >= cond_shannon(h) - kTol);
  }
}
