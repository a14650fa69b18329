#include <doctest.h>

#include "common.hpp"
#include "qmet/sets.hpp"

using namespace qmet;
using namespace qmet::testing;

TEST_CASE("validate_space accepts a 3-point metric") {
  QSpace s = s3();
  CHECK(s.size() == 3);
  CHECK(check_space_axioms(s.dist).empty());
}

TEST_CASE("validate_space reports T0 violations with the witnessing pair") {
  std::vector<std::vector<ExtRat>> d = {{q(0), q(0)}, {q(0), q(0)}};
  auto v = check_space_axioms(d);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == SpaceViolationKind::T0);
  CHECK(v[0].x == 0);
  CHECK(v[0].y == 1);
  CHECK_THROWS_AS(validate_space({"a", "b"}, d), SpaceError);
}

TEST_CASE("validate_space reports triangle violations") {
  std::vector<std::vector<ExtRat>> d = {{q(0), q(1), q(5)},
                                        {q(1), q(0), q(1)},
                                        {q(5), q(1), q(0)}};
  auto v = check_space_axioms(d);
  REQUIRE(!v.empty());
  bool found = false;
  for (const auto& viol : v)
    found = found || (viol.kind == SpaceViolationKind::Triangle &&
                      viol.x == 0 && viol.y == 1 && viol.z == 2);
  CHECK(found);
}

TEST_CASE("validate_space rejects nonzero diagonal and bad shapes") {
  std::vector<std::vector<ExtRat>> d = {{q(1)}};
  auto v = check_space_axioms(d);
  REQUIRE(!v.empty());
  CHECK(v[0].kind == SpaceViolationKind::ZeroDiagonal);
  CHECK_THROWS_AS(validate_space({"a", "b"}, {{q(0)}}), Error);
  CHECK_THROWS_AS(validate_space({"a", "a"}, {{q(0), q(0)}, {q(0), q(0)}}),
                  Error);
}

TEST_CASE("from_poset builds the 0/inf quasi-metric") {
  QSpace p = p2();
  CHECK(p.d(0, 1) == ExtRat(0));
  CHECK(p.d(1, 0).is_inf());
  CHECK(p.leq(0, 1));
  CHECK(!p.leq(1, 0));
  CHECK(p.leq(0, 0));

  QSpace anti = from_poset({"a", "b"}, {{1, 0}, {0, 1}});
  CHECK(anti.d(0, 1).is_inf());
  CHECK(anti.d(1, 0).is_inf());

  // Non-transitive relation.
  CHECK_THROWS_AS(
      from_poset({"a", "b", "c"}, {{1, 1, 0}, {0, 1, 1}, {0, 0, 1}}), Error);
  // Non-reflexive relation.
  CHECK_THROWS_AS(from_poset({"a"}, {{0}}), Error);
}

TEST_CASE("from_digraph closes shortest paths and flags T0") {
  QSpace g = from_digraph({"a", "b", "c"}, {{0, 1, Rat(1)}, {1, 2, Rat(1)}});
  CHECK(g.d(0, 2) == ExtRat(2));
  CHECK(g.d(2, 0).is_inf());
  CHECK(g.d(0, 1) == ExtRat(1));

  QSpace empty_edges = from_digraph({"a", "b"}, {});
  CHECK(empty_edges.d(0, 1).is_inf());
  CHECK(empty_edges.d(1, 0).is_inf());

  CHECK_THROWS_AS(from_digraph({"a", "b"}, {{0, 1, Rat(0)}, {1, 0, Rat(0)}}),
                  SpaceError);
}

TEST_CASE("opposite transposes and is an involution") {
  QSpace s = s2();
  QSpace op = opposite(s);
  CHECK(op.d(0, 1).is_inf());
  CHECK(op.d(1, 0) == ExtRat(1));
  CHECK(check_space_axioms(op.dist).empty());
  CHECK(opposite(op).dist == s.dist);

  QSpace sym = s3();
  CHECK(opposite(sym).dist == sym.dist);
}

TEST_CASE("product_sq follows d(x,x') + d(y',y)") {
  QSpace s = s2();
  QSpace sq = product_sq(s);
  REQUIRE(sq.size() == 4);
  int pq = sq.index_of("(p,q)"), qq = sq.index_of("(q,q)"),
      pp = sq.index_of("(p,p)");
  CHECK(sq.d(pq, qq) == ExtRat(1));  // d(p,q) + d(q,q)
  CHECK(sq.d(pq, pq) == ExtRat(0));
  CHECK(sq.d(pp, pq).is_inf());  // d(p,p) + d(q,p)
  CHECK(check_space_axioms(sq.dist).empty());
}

TEST_CASE("coproduct is block-diagonal with infinite cross distances") {
  QSpace c = coproduct(s2(), p2());
  REQUIRE(c.size() == 4);
  CHECK(c.d(0, 2).is_inf());
  CHECK(c.d(2, 0).is_inf());
  CHECK(c.d(0, 1) == ExtRat(1));
  CHECK(c.d(2, 3) == ExtRat(0));

  QSpace empty = validate_space({}, {});
  CHECK(coproduct(s2(), empty).dist == s2().dist);
  CHECK_THROWS_AS(coproduct(s2(), s2()), Error);
}

TEST_CASE("closures under the specialization order") {
  QSpace p = p2();
  PointSet top = PointSet::of(2, {1});
  CHECK(lower_closure(p, top).pts == PointSet::of(2, {0, 1}));
  CHECK(upper_closure(p, top).pts == PointSet::of(2, {1}));

  QSpace anti = s3();  // symmetric, so the order is discrete
  PointSet a = PointSet::of(3, {0});
  CHECK(lower_closure(anti, a).pts == a);
  CHECK(upper_closure(anti, a).pts == a);

  PointSet both = PointSet::of(2, {0, 1});
  CHECK(lower_closure_set(p, lower_closure_set(p, both)) ==
        lower_closure_set(p, both));
  CHECK_THROWS_AS(as_lower_set(p, top), Error);
  CHECK(as_upper_set(p, top).pts == top);
}
