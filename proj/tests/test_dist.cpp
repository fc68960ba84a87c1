#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace hyperflow;
using hftest::q;

namespace {

Value VB(bool b) { return Value(b); }
Value VI(long i) { return Value(i); }

Dist uniform_ints(long lo, long hi) {
  std::vector<Value> vs;
  for (long i = lo; i <= hi; ++i) vs.push_back(VI(i));
  return Dist::uniform(vs);
}

// iid pair of fair booleans as tuples (x, y)
Dist fair_pair() {
  std::vector<Value> vs;
  for (bool x : {false, true})
    for (bool y : {false, true}) vs.push_back(Value::tuple({VB(x), VB(y)}));
  return Dist::uniform(vs);
}

}  // namespace

TEST_CASE("point distributions") {
  CHECK(Dist::point(VB(true)) == hftest::dist_of({{VB(true), q(1)}}));
  CHECK(Dist::point(VI(3)) == hftest::dist_of({{VI(3), q(1)}}));
  // monad unit: avg . point = id
  auto dd = DistT<Dist>::point(Dist::point(VB(true)));
  CHECK(avg(dd) == Dist::point(VB(true)));
}

TEST_CASE("uniform distributions") {
  Dist g = Dist::uniform({Value::symbol("p1"), Value::symbol("p2"), Value::symbol("p3")});
  for (const auto& [_, p] : g.entries()) CHECK(p == q(1, 3));
  CHECK(g.support_size() == 3);

  CHECK(Dist::uniform({VB(true)}) == Dist::point(VB(true)));
  CHECK(uniform_ints(0, 3).at(VI(2)) == q(1, 4));
  CHECK_THROWS_WITH(Dist::uniform({}), "empty uniform");
  // duplicates collapse to the set
  CHECK(Dist::uniform({VI(1), VI(1), VI(2)}) == Dist::uniform({VI(1), VI(2)}));
}

TEST_CASE("map_dist pushforward") {
  Dist d = uniform_ints(0, 3);
  CHECK(map_dist([](const Value&) { return VI(9); }, d) == Dist::point(VI(9)));
  CHECK(map_dist([](const Value& v) { return v; }, d) == d);

  // halving: enumerate the four preimages by hand, then compare
  Dist::Map expect;
  for (long h = 0; h <= 3; ++h) expect[VI(h / 2)] += q(1, 4);
  Dist halved = map_dist([](const Value& v) { return VI(v.as_int() / 2); }, d);
  CHECK(halved == Dist::from_entries(expect));
  CHECK(halved == hftest::dist_of({{VI(0), q(1, 2)}, {VI(1), q(1, 2)}}));

  // weight preserved on partial inputs
  Dist part = Dist::from_entries({{VI(0), q(1, 3)}, {VI(1), q(1, 4)}});
  CHECK(map_dist([](const Value&) { return VI(0); }, part).weight() == part.weight());
}

TEST_CASE("avg flattens a distribution of distributions") {
  // the two-inner merge: 3/7 of {1/3,2/3} with 4/7 of {1/2,1/2}
  DistT<Dist>::Map mm;
  mm[hftest::bdist(q(1, 3))] = q(3, 7);
  mm[hftest::bdist(q(1, 2))] = q(4, 7);
  CHECK(avg(DistT<Dist>::from_entries(mm)) == hftest::bdist(q(3, 7)));

  Dist d = uniform_ints(0, 2);
  CHECK(avg(DistT<Dist>::point(d)) == d);

  DistT<Dist>::Map pts;
  pts[Dist::point(VI(0))] = q(1, 2);
  pts[Dist::point(VI(1))] = q(1, 2);
  CHECK(avg(DistT<Dist>::from_entries(pts)) == Dist::uniform({VI(0), VI(1)}));
}

TEST_CASE("expected values") {
  CHECK(expected(uniform_ints(0, 3), [](const Value& v) { return Rat(v.as_int()); }) ==
        q(3, 2));

  Dist part = Dist::from_entries({{VI(0), q(1, 3)}, {VI(5), q(1, 4)}});
  CHECK(expected(part, [](const Value&) { return Rat(1); }) == part.weight());

  // P(x or y) over the iid fair pair
  auto one_boy = [](const Value& v) {
    return bool_weight(v.as_tuple()[0].as_bool() || v.as_tuple()[1].as_bool());
  };
  CHECK(expected(fair_pair(), one_boy) == q(3, 4));
}

TEST_CASE("comprehend: condition, push forward, normalize") {
  auto one_boy = [](const Value& v) {
    return bool_weight(v.as_tuple()[0].as_bool() || v.as_tuple()[1].as_bool());
  };
  auto both_boys = [](const Value& v) {
    return Value(v.as_tuple()[0].as_bool() && v.as_tuple()[1].as_bool());
  };
  Dist post = comprehend(fair_pair(), one_boy, both_boys);
  CHECK(post == hftest::dist_of({{VB(true), q(1, 3)}, {VB(false), q(2, 3)}}));

  Dist d = uniform_ints(0, 3);
  auto ident = [](const Value& v) { return v; };
  CHECK(comprehend(d, [](const Value&) { return Rat(1); }, ident) == d);

  // conditioning on x >= 2, checked against direct enumeration
  Dist::Map surv;
  for (long x = 0; x <= 3; ++x)
    if (x >= 2) surv[VI(x)] += q(1, 4);
  Rat mass = 0;
  for (auto& [_, p] : surv) mass += p;
  for (auto& [_, p] : surv) p /= mass;
  auto ge2 = [](const Value& v) { return bool_weight(v.as_int() >= 2); };
  CHECK(comprehend(d, ge2, ident) == Dist::from_entries(surv));
  CHECK(comprehend(d, ge2, ident) == Dist::uniform({VI(2), VI(3)}));

  CHECK_THROWS_WITH(comprehend(d, [](const Value&) { return Rat(0); }, ident),
                    "conditioning on measure-zero event");
}

TEST_CASE("canonical form") {
  // zero entries dropped, negative rejected, overweight rejected
  CHECK(Dist::from_entries({{VI(0), q(1, 2)}, {VI(1), q(0)}}).support_size() == 1);
  CHECK_THROWS(Dist::from_entries({{VI(0), q(-1, 2)}}));
  CHECK_THROWS(Dist::from_entries({{VI(0), q(2, 3)}, {VI(1), q(1, 2)}}));
  // structural equality is mathematical equality
  CHECK(hftest::dist_of({{VI(1), q(1, 2)}, {VI(0), q(1, 2)}}) ==
        hftest::dist_of({{VI(0), q(2, 4)}, {VI(1), q(3, 6)}}));
}

TEST_CASE("functor and monad laws on concrete instances") {
  Dist d = uniform_ints(0, 5);
  auto f = [](const Value& v) { return VI(v.as_int() / 2); };
  auto g = [](const Value& v) { return VI(v.as_int() % 2); };
  auto gf = [&](const Value& v) { return g(f(v)); };
  CHECK(map_dist(gf, d) == map_dist(g, map_dist(f, d)));

  // avg . map point = id
  CHECK(avg(map_dist([](const Value& v) { return Dist::point(v); }, d)) == d);

  // associativity on a three-deep instance
  using D2 = DistT<Dist>;
  using D3 = DistT<D2>;
  D2::Map lvl2a, lvl2b;
  lvl2a[hftest::bdist(q(1, 3))] = q(1, 2);
  lvl2a[hftest::bdist(q(1, 1))] = q(1, 2);
  lvl2b[hftest::bdist(q(1, 4))] = q(1);
  D3::Map lvl3;
  lvl3[D2::from_entries(lvl2a)] = q(2, 5);
  lvl3[D2::from_entries(lvl2b)] = q(3, 5);
  D3 ddd = D3::from_entries(lvl3);
  CHECK(avg(avg(ddd)) == avg(map_dist([](const D2& x) { return avg(x); }, ddd)));
}
