#include "doctest.h"

#include <random>

#include "ymsym/grammar.hpp"
#include "test_util.hpp"

using namespace ymsym;

TEST_CASE("printing fixed expressions") {
  CHECK(to_string(Expr()) == "0");
  CHECK(to_string(Expr(Scalar(-3, 2))) == "-3/2");
  const Expr e = Expr(2) * Expr::from_atom(coordinate(0)) -
                 Expr::from_atom(field(1, 2)) * Expr::from_atom(coordinate(0));
  CHECK(to_string(e) == "2*x0 - x0*A[1,2]");
  CHECK(to_string(Expr::from_atom(jet(1, 2, {0, 3}))) == "d(d(A[1,2],0),3)");
  CHECK(to_string(Expr::from_atom(param("mass"))) == "p(mass)");
  CHECK(to_string(Expr::from_atom(coordinate(1), 3)) == "x1*x1*x1");
}

TEST_CASE("parsing fixed expressions") {
  CHECK(parse_expr("0").is_zero());
  CHECK(parse_expr("x0 + x0") == Expr(2) * Expr::from_atom(coordinate(0)));
  CHECK(parse_expr("-x1") == -Expr::from_atom(coordinate(1)));
  CHECK(parse_expr("3/2*A[0,1]") == Expr(Scalar(3, 2)) * Expr::from_atom(field(0, 1)));
  CHECK(parse_expr("d(A[1,2],0)") == Expr::from_atom(jet(1, 2, {0})));
  CHECK(parse_expr("d(d(A[1,2],0),3)") == Expr::from_atom(jet(1, 2, {0, 3})));
  CHECK(parse_expr("d(x1*A[0,0],1)") ==
        Expr::from_atom(field(0, 0)) +
            Expr::from_atom(coordinate(1)) * Expr::from_atom(jet(0, 0, {1})));
  CHECK(parse_expr("p(c1)*p(c1)") == Expr::from_atom(param("c1"), 2));
  CHECK(parse_expr("(x0 + x1) * (x0 - x1)") ==
        Expr::from_atom(coordinate(0), 2) - Expr::from_atom(coordinate(1), 2));
  CHECK(parse_expr("H[2]") == Expr::from_atom(formal("H", {2}, {}, true)));
  CHECK(parse_expr("Phi[1,3]") == Expr::from_atom(formal("Phi", {3}, {1}, true)));
  CHECK(parse_expr("chi[0;x:1,2]") ==
        Expr::from_atom(formal_dx(formal_dx(formal("chi", {}, {0}, false), 1), 2)));
  CHECK(parse_expr("H[0;A:(1,2)]") ==
        Expr::from_atom(formal_dA(formal("H", {0}, {}, true), 1, 2)));
}

TEST_CASE("parse errors carry position and kind") {
  CHECK_THROWS_AS(parse_expr("x0 +"), ParseError);
  CHECK_THROWS_AS(parse_expr("y0"), ParseError);
  CHECK_THROWS_AS(parse_expr("A[0]"), ParseError);
  CHECK_THROWS_AS(parse_expr("A[0,7]"), ParseError);
  CHECK_THROWS_AS(parse_expr("1/0"), ParseError);
  CHECK_THROWS_AS(parse_expr("x0 x1"), ParseError);
  CHECK_THROWS_AS(parse_expr("chi[0;A:(0,0)]"), ParseError);
  CHECK_THROWS_AS(parse_expr("d(H[0],1)"), ParseError); // needs an algebra context
  CHECK_NOTHROW(parse_expr("d(H[0],1)", {3, 3}));

  ParseOptions su2{3, 3};
  CHECK_THROWS_AS(parse_expr("A[7,0]", su2), ParseError);
  CHECK_NOTHROW(parse_expr("A[2,0]", su2));

  bool threw = false;
  try {
    parse_expr("x0 +\n  y1");
  } catch (const ParseError& e) {
    threw = true;
    CHECK(e.line() == 2);
    CHECK(e.col() == 3);
  }
  CHECK(threw);
}

TEST_CASE("round-trip: parse(print(e)) == e on fixed and random expressions") {
  const std::vector<std::string> fixed = {
      "0",
      "-1/2",
      "x0*x0*A[1,2] - 7/3*p(k)",
      "d(d(A[0,0],1),1) + d(A[2,3],0)*A[1,1]",
      "H[0;x:0;A:(1,2)]*chi[1;x:3]",
  };
  for (const auto& s : fixed) {
    const Expr e = parse_expr(s, {3, 3});
    CHECK(parse_expr(to_string(e), {3, 3}) == e);
  }

  std::mt19937_64 rng(777);
  const auto pool = testutil::atom_pool(2, true);
  for (int i = 0; i < 100; ++i) {
    const Expr e = testutil::random_expr(rng, pool, 6, 4);
    CHECK(parse_expr(to_string(e), {3, 3}) == e);
  }
}
