#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "common.hpp"
#include "qmet/checks.hpp"
#include "qmet/json_io.hpp"

using namespace qmet;
using namespace qmet::testing;

TEST_CASE("space JSON round-trips and is validated on load") {
  QSpace s = s2();
  Json j = space_to_json(s);
  CHECK(j["dist"][0][1] == "1");
  CHECK(j["dist"][1][0] == "inf");
  QSpace back = space_from_json(j);
  CHECK(back.labels == s.labels);
  CHECK(back.dist == s.dist);

  Json bad = j;
  bad["dist"][1][0] = "0";  // T0 violation once both directions are 0
  bad["dist"][0][1] = "0";
  CHECK_THROWS_AS(space_from_json(bad), SpaceError);
  CHECK_THROWS_AS(space_from_json(Json{{"labels", Json::array()}}), ParseError);
}

TEST_CASE("object schemas round-trip") {
  QSpace s = s3();
  SUBCASE("functions") {
    ExtFunc f({q(3, 2), inf(), q(0)});
    Json j = func_to_json(s, f);
    CHECK(j["a"] == "3/2");
    CHECK(j["b"] == "inf");
    CHECK(func_from_json(s, j) == f);
    j.erase("c");
    CHECK_THROWS_AS(func_from_json(s, j), Error);
  }
  SUBCASE("valuations") {
    SimpleValuation v;
    v.w[0] = Rat(1) / 3;
    v.w[2] = Rat(2) / 3;
    Json j = valuation_to_json(s, v);
    CHECK(j["weights"]["a"] == "1/3");
    CHECK(valuation_from_json(s, j) == v);
    Json neg{{"weights", {{"a", "0"}}}};
    CHECK_THROWS_AS(valuation_from_json(s, neg), Error);
    Json unknown{{"weights", {{"zz", "1"}}}};
    CHECK_THROWS_AS(valuation_from_json(s, unknown), Error);
  }
  SUBCASE("balls, sets, lenses") {
    FormalBall b{1, Rat(1) / 2};
    Json j = ball_to_json(s, b);
    CHECK(j["center"] == "b");
    CHECK(ball_from_json(s, j) == b);

    PointSet ps = PointSet::of(3, {0, 2});
    Json sj = set_to_json(s, ps);
    CHECK(sj == Json::array({"a", "c"}));
    CHECK(set_from_json(s, sj) == ps);

    QuasiLens l = make_quasi_lens(s, ps);
    Json lj = lens_to_json(s, l);
    QuasiLens back = lens_from_json(s, lj);
    CHECK(back.q.pts == l.q.pts);
    CHECK(back.c.pts == l.c.pts);
    Json badlens{{"Q", Json::array({"a", "b"})}, {"C", Json::array({"a"})}};
    CHECK_THROWS_AS(lens_from_json(s, badlens), Error);
  }
  SUBCASE("previsions and forks") {
    GenPrevision f = GenPrevision::diracs(PrevKind::Sublinear,
                                          PointSet::of(3, {0, 1}));
    Json j = prevision_to_json(s, f);
    CHECK(j["kind"] == "sublinear");
    GenPrevision back = prevision_from_json(s, j);
    CHECK(back.kind == PrevKind::Sublinear);
    CHECK(back.gens == f.gens);

    Fork fk{GenPrevision::diracs(PrevKind::Superlinear, PointSet::of(3, {0})),
            f};
    Json fj = fork_to_json(s, fk);
    Fork fb = fork_from_json(s, fj);
    CHECK(fb.lower.gens == fk.lower.gens);
    Json swapped{{"lower", prevision_to_json(s, f)},
                 {"upper", prevision_to_json(s, f)}};
    CHECK_THROWS_AS(fork_from_json(s, swapped), Error);
  }
}

TEST_CASE("file loading distinguishes parse failures") {
  std::string path = "qmet_test_tmp.json";
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(load_json_file(path), ParseError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_json_file("no_such_file.json"), ParseError);
}

TEST_CASE("property suites are deterministic under a fixed seed") {
  SuiteResult a = run_suite("envelopes", 99, 3, std::nullopt);
  SuiteResult b = run_suite("envelopes", 99, 3, std::nullopt);
  CHECK(a.to_json() == b.to_json());
  CHECK(a.ok());
  CHECK_THROWS_AS(run_suite("nonsense", 1, 1, std::nullopt), Error);
}

TEST_CASE("suites accept a fixed space") {
  QSpace s = s3();
  SuiteResult r = run_suite("monad", 5, 2, s);
  CHECK(r.ok());
  CHECK(r.passes("monad_laws") == 2);
}
