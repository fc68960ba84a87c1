#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace hyperflow;
using hftest::bdist;
using hftest::hyper_of;
using hftest::q;

namespace {

// the worked three-inner merge example
Hyper merge_spec() {
  return hyper_of({{bdist(q(1, 3)), q(1, 4)}, {bdist(q(1, 2)), q(1, 3)}, {bdist(q(1)), q(5, 12)}});
}
Hyper merge_impl() {
  return hyper_of({{bdist(q(3, 7)), q(7, 12)}, {bdist(q(1)), q(5, 12)}});
}

// the incompleteness chain's first three hypers
Hyper chain1() { return hyper_of({{bdist(q(0)), q(1, 2)}, {bdist(q(1)), q(1, 2)}}); }
Hyper chain2() {
  return hyper_of({{bdist(q(0)), q(1, 4)}, {bdist(q(1, 2)), q(1, 2)}, {bdist(q(1)), q(1, 4)}});
}
Hyper chain3() {
  return hyper_of({{bdist(q(0)), q(1, 8)},
                   {bdist(q(1, 4)), q(1, 4)},
                   {bdist(q(1, 2)), q(1, 4)},
                   {bdist(q(3, 4)), q(1, 4)},
                   {bdist(q(1)), q(1, 8)}});
}

size_t idx_of(const std::vector<Witness::Entry>& es, const Dist& inner) {
  for (size_t i = 0; i < es.size(); ++i)
    if (es[i].inner == inner) return i;
  REQUIRE(false);
  return 0;
}

Rat transport_at(const Witness& w, const Dist& from, const Dist& to) {
  auto it = w.transport.find({idx_of(w.source, from), idx_of(w.target, to)});
  return it == w.transport.end() ? Rat(0) : it->second;
}

}  // namespace

TEST_CASE("termination order") {
  Hyper d = merge_spec();
  CHECK(terminates_leq(Hyper(), d));
  CHECK(terminates_leq(d, d));
  Hyper half = hyper_of({{bdist(q(1, 3)), q(1, 2)}});
  Hyper third = hyper_of({{bdist(q(1, 3)), q(1, 3)}});
  CHECK_FALSE(terminates_leq(half, third));
  CHECK(terminates_leq(third, half));
  // pointwise sup of two hypers bounds both
  Hyper sup = hyper_sup(half, hyper_of({{bdist(q(1, 4)), q(1, 4)}}));
  CHECK(terminates_leq(half, sup));
}

TEST_CASE("three-inner merge accepts with the forced transport") {
  auto w = entropy_refines(merge_spec(), merge_impl());
  REQUIRE(w.has_value());
  w->validate();
  CHECK(w->pure_entropy());
  CHECK(transport_at(*w, bdist(q(1, 3)), bdist(q(3, 7))) == q(1, 4));
  CHECK(transport_at(*w, bdist(q(1, 2)), bdist(q(3, 7))) == q(1, 3));
  CHECK(transport_at(*w, bdist(q(1)), bdist(q(1))) == q(5, 12));
  CHECK(transport_at(*w, bdist(q(1)), bdist(q(3, 7))) == 0);

  // and rejects the reverse
  CHECK_FALSE(entropy_refines(merge_impl(), merge_spec()).has_value());
}

TEST_CASE("reflexivity returns the identity transport") {
  Hyper d = merge_spec();
  auto w = entropy_refines(d, d);
  REQUIRE(w.has_value());
  w->validate();
  for (size_t i = 0; i < w->source.size(); ++i) {
    auto it = w->transport.find({i, i});
    REQUIRE(it != w->transport.end());
    CHECK(it->second == w->source[i].wgt);
  }
}

TEST_CASE("chain with pre-splitting") {
  auto w12 = entropy_refines(chain1(), chain2());
  auto w23 = entropy_refines(chain2(), chain3());
  REQUIRE(w12.has_value());
  REQUIRE(w23.has_value());

  // the hand-built pre-split witness validates
  Witness manual;
  manual.source = Witness::entries_of(chain2());
  manual.target = Witness::entries_of(chain3());
  auto src = [&](const Rat& p) { return idx_of(manual.source, bdist(p)); };
  auto tgt = [&](const Rat& p) { return idx_of(manual.target, bdist(p)); };
  manual.transport[{src(q(0)), tgt(q(0))}] = q(1, 8);
  manual.transport[{src(q(0)), tgt(q(1, 4))}] = q(1, 8);
  manual.transport[{src(q(1, 2)), tgt(q(1, 4))}] = q(1, 8);
  manual.transport[{src(q(1, 2)), tgt(q(1, 2))}] = q(1, 4);
  manual.transport[{src(q(1, 2)), tgt(q(3, 4))}] = q(1, 8);
  manual.transport[{src(q(1)), tgt(q(3, 4))}] = q(1, 8);
  manual.transport[{src(q(1)), tgt(q(1))}] = q(1, 8);
  manual.validate();

  // composition certifies the end-to-end refinement
  Witness w13 = compose_witness(*w12, *w23);
  w13.validate();
  CHECK(entropy_refines(chain1(), chain3()).has_value());

  // downward is not a refinement
  CHECK_FALSE(entropy_refines(chain2(), chain1()).has_value());
  CHECK_FALSE(entropy_refines(chain3(), chain2()).has_value());
}

TEST_CASE("witness composition units and middle mismatch") {
  Hyper a = merge_spec(), b = merge_impl();
  auto w = entropy_refines(a, b);
  REQUIRE(w.has_value());
  Witness ida = Witness::identity(a), idb = Witness::identity(b);
  auto same = [](const Witness& x, const Witness& y) {
    return x.transport == y.transport && x.source.size() == y.source.size() &&
           x.target.size() == y.target.size();
  };
  CHECK(same(compose_witness(ida, *w), *w));
  CHECK(same(compose_witness(*w, idb), *w));
  CHECK_THROWS(compose_witness(*w, *w));  // b's entries are not a's
}

TEST_CASE("secure refinement adds mass through the slack columns") {
  Hyper d = merge_impl();
  auto from_empty = secure_refines(Hyper(), d);
  REQUIRE(from_empty.has_value());
  from_empty->validate();
  CHECK_FALSE(from_empty->pure_entropy());

  auto refl = secure_refines(d, d);
  REQUIRE(refl.has_value());
  CHECK(refl->pure_entropy());

  // weight may never decrease
  Hyper lighter = hyper_of({{bdist(q(3, 7)), q(1, 2)}, {bdist(q(1)), q(1, 4)}});
  CHECK_FALSE(secure_refines(merge_spec(), lighter).has_value());
  CHECK(secure_refines(lighter, merge_impl()).has_value());
}

TEST_CASE("gauge values and monotonicity on the worked example") {
  Hyper u = hyper_of({{bdist(q(1, 2)), q(1)}});
  CHECK(gauge(u) == q(1, 2));
  Hyper two_points = hyper_of({{bdist(q(1)), q(1, 2)}, {bdist(q(0)), q(1, 2)}});
  CHECK(gauge(two_points) == q(1));

  // 1/4*(1/9+4/9) + 1/3*(1/2) + 5/12*1 and 7/12*(9/49+16/49) + 5/12
  CHECK(gauge(merge_spec()) == q(13, 18));
  CHECK(gauge(merge_impl()) == q(5, 7));
  CHECK(gauge(merge_spec()) > gauge(merge_impl()));

  // the gauge argument also forbids the reverse of the worked merge
  CHECK(gauge(merge_impl()) < gauge(merge_spec()));
  CHECK_FALSE(entropy_refines(merge_impl(), merge_spec()).has_value());
}

TEST_CASE("visible values partition the transport") {
  Value v0 = Value::tuple({Value(0L)}), v1 = Value::tuple({Value(1L)});
  Hyper a, b;
  a.add(v0, bdist(q(1, 3)), q(1, 2));
  a.add(v1, bdist(q(1, 2)), q(1, 2));
  b.add(v0, bdist(q(1, 3)), q(1, 2));
  b.add(v1, bdist(q(1, 2)), q(1, 2));
  CHECK(entropy_refines(a, b).has_value());

  // same inners, swapped visibles: no transport may cross
  Hyper c;
  c.add(v1, bdist(q(1, 3)), q(1, 2));
  c.add(v0, bdist(q(1, 2)), q(1, 2));
  CHECK_FALSE(entropy_refines(a, c).has_value());
  CHECK_FALSE(secure_refines(a, c).has_value());
}

TEST_CASE("marginals are preserved by accepted refinements") {
  auto w = entropy_refines(merge_spec(), merge_impl());
  REQUIRE(w.has_value());
  CHECK(merge_spec().vis_marginal() == merge_impl().vis_marginal());
  CHECK(merge_spec().hidden_by_vis() == merge_impl().hidden_by_vis());
}

TEST_CASE("witness validation catches corrupted transports") {
  auto w = entropy_refines(merge_spec(), merge_impl());
  REQUIRE(w.has_value());
  Witness bad = *w;
  bad.transport.begin()->second += q(1, 100);
  CHECK_THROWS(bad.validate());
}
