#include "doctest.h"
#include "vknot/gauss.hpp"

using namespace vknot;

TEST_CASE("empty code is the unknot diagram") {
  OrientedGaussCode g = parse_gauss_code("");
  CHECK(g.crossing_count == 0);
  CHECK(g.passes.empty());
  CHECK(parse_gauss_code("   \t\n ").crossing_count == 0);
  CHECK(serialize_gauss_code(g) == "");
}

TEST_CASE("virtual trefoil style code parses") {
  OrientedGaussCode g = parse_gauss_code("+>1 +>2 -<1 -<2");
  REQUIRE(g.crossing_count == 2);
  REQUIRE(g.passes.size() == 4);
  CHECK(g.passes[0] == CrossingPass{true, Side::LeftToRight, 1});
  CHECK(g.passes[1] == CrossingPass{true, Side::LeftToRight, 2});
  CHECK(g.passes[2] == CrossingPass{false, Side::RightToLeft, 1});
  CHECK(g.passes[3] == CrossingPass{false, Side::RightToLeft, 2});
}

TEST_CASE("labels renumbered by first appearance") {
  OrientedGaussCode g = parse_gauss_code("+>17 -<5 -<17 +>5");
  CHECK(g.passes[0].crossing_id == 1);
  CHECK(g.passes[1].crossing_id == 2);
  CHECK(g.passes[2].crossing_id == 1);
  CHECK(g.passes[3].crossing_id == 2);
  CHECK(serialize_gauss_code(g) == "+>1-<2-<1+>2");
}

TEST_CASE("whitespace is optional") {
  CHECK(parse_gauss_code("+>1+>2-<1-<2") == parse_gauss_code(" +>1\n+>2\t-<1  -<2 "));
}

TEST_CASE("round trip through serialization") {
  const char* codes[] = {
      "",
      "+>1-<1",
      "+<1->1",
      "+>1+>2-<1-<2",
      "->1-<2+>1+<2+>3-<3",
  };
  for (const char* s : codes) {
    OrientedGaussCode g = parse_gauss_code(s);
    CHECK(parse_gauss_code(serialize_gauss_code(g)) == g);
  }
}

TEST_CASE("syntax errors") {
  CHECK_THROWS_AS(parse_gauss_code("x"), SyntaxError);
  CHECK_THROWS_AS(parse_gauss_code("+"), SyntaxError);
  CHECK_THROWS_AS(parse_gauss_code("+>"), SyntaxError);
  CHECK_THROWS_AS(parse_gauss_code("+1"), SyntaxError);
  CHECK_THROWS_AS(parse_gauss_code("+>0"), SyntaxError);
  CHECK_THROWS_AS(parse_gauss_code("+>x"), SyntaxError);
  CHECK_THROWS_AS(parse_gauss_code("+>1-<1extra"), SyntaxError);
  CHECK_THROWS_AS(parse_gauss_code("+>99999999999"), SyntaxError);
}

TEST_CASE("consistency errors") {
  // label appearing once
  CHECK_THROWS_AS(parse_gauss_code("+>1-<1+>2"), ConsistencyError);
  // twice over
  CHECK_THROWS_AS(parse_gauss_code("+>1+<1"), ConsistencyError);
  // twice under
  CHECK_THROWS_AS(parse_gauss_code("->1-<1"), ConsistencyError);
  // three times
  CHECK_THROWS_AS(parse_gauss_code("+>1-<1+>1-<2+>2"), ConsistencyError);
}

TEST_CASE("component separator rejected") {
  CHECK_THROWS_AS(parse_gauss_code("+>1-<1;+>2-<2"), MultiComponentError);
  CHECK_THROWS_AS(parse_gauss_code(";"), MultiComponentError);
}
