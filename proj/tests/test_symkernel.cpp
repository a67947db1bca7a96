#include "doctest.h"

#include <random>

#include "ymsym/expr.hpp"
#include "ymsym/grammar.hpp"
#include "test_util.hpp"

using namespace ymsym;

namespace {

Expr atom_expr(AtomId id) { return Expr::from_atom(id); }

} // namespace

TEST_CASE("scalar canonical form and arithmetic") {
  CHECK(Scalar(2, 4) == Scalar(1, 2));
  CHECK(Scalar(1, -2) == Scalar(-1, 2));
  CHECK((Scalar(2, 3) * Scalar(3, 2)).is_one());
  CHECK((Scalar(1, 2) + Scalar(1, 2)).is_one());
  CHECK(Scalar::from_string("-6/4") == Scalar(-3, 2));
  CHECK(Scalar::from_string("7").str() == "7");
  CHECK(Scalar(-3, 2).str() == "-3/2");
  CHECK(Scalar(2, 3).pow(3) == Scalar(8, 27));
  CHECK_THROWS_AS(Scalar(1, 0), DomainError);
  CHECK_THROWS_AS(Scalar::from_string("1/0"), DomainError);
  CHECK_THROWS_AS(Scalar::from_string("2x"), DomainError);
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), DomainError);
}

TEST_CASE("atom interning is idempotent and order-insensitive") {
  CHECK(coordinate(1) == coordinate(1));
  CHECK(jet(0, 1, {2, 0}) == jet(0, 1, {0, 2}));
  CHECK(jet(0, 1, {0}) != jet(0, 1, {}));
  CHECK(param("c") == param("c"));
  CHECK(param("c") != param("d"));
  const AtomId h = formal("H", {0}, {}, true);
  CHECK(formal_dA(formal_dx(h, 1), 0, 2) == formal_dx(formal_dA(h, 0, 2), 1));
  CHECK_THROWS_AS(coordinate(4), DomainError);
  CHECK_THROWS_AS(jet(0, 5, {}), DomainError);
  const AtomId chi = formal("chi", {}, {1}, false);
  CHECK_THROWS_AS(formal_dA(chi, 0, 0), DomainError);
}

TEST_CASE("add and mul: ring identities on fixed inputs") {
  const Expr x1 = atom_expr(coordinate(1));
  CHECK((x1 - x1).is_zero());

  const Expr a10 = atom_expr(field(1, 0));
  CHECK(a10 * a10 == Expr::from_atom(field(1, 0), 2));

  const Expr lhs = (Expr(Scalar(2, 3)) * atom_expr(coordinate(0))) *
                   (Expr(Scalar(3, 2)) * atom_expr(field(2, 1)));
  CHECK(lhs == atom_expr(coordinate(0)) * atom_expr(field(2, 1)));
}

TEST_CASE("partial derivative treats atoms as independent") {
  const AtomId j = jet(1, 3, {2});
  CHECK(partial(Expr::from_atom(j, 2), j) == Expr(2) * atom_expr(j));

  const Expr e = atom_expr(coordinate(0)) * atom_expr(field(2, 1));
  CHECK(partial(e, coordinate(0)) == atom_expr(field(2, 1)));
  CHECK(partial(e, coordinate(1)).is_zero());
  CHECK(partial(atom_expr(jet(0, 0, {1})), coordinate(1)).is_zero());

  const AtomId h = formal("H", {0}, {}, true);
  CHECK(partial(atom_expr(h), field(1, 2)) == atom_expr(formal_dA(h, 1, 2)));
  const AtomId chi = formal("chi", {}, {0}, false);
  CHECK(partial(atom_expr(chi), field(1, 2)).is_zero());
  CHECK(partial(atom_expr(chi), coordinate(3)) == atom_expr(formal_dx(chi, 3)));
  // Formal functions do not depend on differentiated jets.
  CHECK(partial(atom_expr(h), jet(1, 2, {0})).is_zero());

  CHECK_THROWS_AS(partial(e, param("t")), DomainError);
}

TEST_CASE("total derivative basics") {
  const DerivCtx ctx{2, 3};
  CHECK(total_derivative(atom_expr(coordinate(1)), 0, ctx).is_zero());
  CHECK(total_derivative(atom_expr(coordinate(1)), 1, ctx) == Expr(1));
  CHECK(total_derivative(atom_expr(field(1, 0)), 2, ctx) == atom_expr(jet(1, 0, {2})));
  CHECK(total_derivative(atom_expr(coordinate(1)) * atom_expr(jet(1, 3, {2})), 0, ctx) ==
        atom_expr(coordinate(1)) * atom_expr(jet(1, 3, {0, 2})));
  CHECK(total_derivative(Expr(Scalar(5)), 3, ctx).is_zero());
  CHECK(total_derivative(atom_expr(param("c")), 1, ctx).is_zero());

  // Chain over the fields for a formal function of (x, A).
  const AtomId h = formal("H", {1}, {}, true);
  Expr expect = atom_expr(formal_dx(h, 2));
  for (int n = 0; n < 2; ++n)
    for (int al = 0; al < 4; ++al)
      expect += atom_expr(jet(n, al, {2})) * atom_expr(formal_dA(h, n, al));
  CHECK(total_derivative(atom_expr(h), 2, ctx) == expect);

  // chi responds with its x-derivative only.
  const AtomId chi = formal("chi", {}, {1}, false);
  CHECK(total_derivative(atom_expr(chi), 0, ctx) == atom_expr(formal_dx(chi, 0)));

  CHECK_THROWS_AS(total_derivative(atom_expr(jet(0, 0, {1, 2, 3})), 0, ctx), TruncationError);
  CHECK_NOTHROW(total_derivative(atom_expr(jet(0, 0, {1, 2, 3})), 0, DerivCtx{2, 4}));
}

TEST_CASE("substitute replaces any power and re-canonicalizes") {
  const AtomId tgt = jet(1, 0, {1, 1});
  CHECK(substitute(Expr::from_atom(tgt, 2), tgt, Expr()).is_zero());

  const Expr x0 = atom_expr(coordinate(0));
  const Expr e = x0 + atom_expr(field(1, 1));
  CHECK(substitute(e, field(1, 1), x0) == Expr(2) * x0);

  CHECK(substitute(e, field(2, 2), Expr(7)) == e);

  // Quadratic occurrence expands the replacement squared.
  const Expr repl = x0 + Expr(1);
  CHECK(substitute(Expr::from_atom(tgt, 2), tgt, repl) == repl * repl);
}

TEST_CASE("collect splits by classifier exactly") {
  const Expr e = Expr(2) * atom_expr(coordinate(0)) * atom_expr(jet(1, 0, {1})) +
                 atom_expr(coordinate(1));
  auto groups = collect(e, [](AtomId id) { return is_jet(id); });
  REQUIRE(groups.size() == 2);
  Expr rebuilt;
  bool saw_jet_key = false, saw_unit_key = false;
  for (const auto& [key, val] : groups) {
    rebuilt += Expr::from_mono(key) * val;
    if (key == mono_one()) {
      saw_unit_key = true;
      CHECK(val == atom_expr(coordinate(1)));
    } else {
      saw_jet_key = true;
      CHECK(key == mono_of_atom(jet(1, 0, {1})));
      CHECK(val == Expr(2) * atom_expr(coordinate(0)));
    }
  }
  CHECK(saw_jet_key);
  CHECK(saw_unit_key);
  CHECK(rebuilt == e);

  CHECK(collect(Expr(), [](AtomId) { return true; }).empty());
}

TEST_CASE("evaluate is exact and names missing atoms") {
  const Expr e = atom_expr(coordinate(0)) * atom_expr(field(1, 1));
  std::map<AtomId, Scalar> point{{coordinate(0), Scalar(2)}, {field(1, 1), Scalar(3, 2)}};
  CHECK(evaluate(e, point) == Scalar(3));
  CHECK(evaluate(Expr(), {}) == Scalar(0));
  CHECK_THROWS_AS(evaluate(e, {{coordinate(0), Scalar(1)}}), EvalError);
}

TEST_CASE("randomized kernel properties (smoke-size; the acceptance suite runs 1000)") {
  std::mt19937_64 rng(12345);
  const auto pool = testutil::atom_pool(1, true);
  const DerivCtx ctx{3, 3};
  for (int i = 0; i < 60; ++i) {
    const Expr p = testutil::random_expr(rng, pool);
    const Expr q = testutil::random_expr(rng, pool);
    const Expr r = testutil::random_expr(rng, pool);
    CHECK((p + q) - q == p);
    CHECK(p * (q + r) == p * q + p * r);
    CHECK(p * q == q * p);
    for (int l = 0; l < 4; ++l) {
      CHECK(total_derivative(p * q, l, ctx) ==
            total_derivative(p, l, ctx) * q + p * total_derivative(q, l, ctx));
    }
    CHECK(total_derivative(total_derivative(p, 0, ctx), 3, ctx) ==
          total_derivative(total_derivative(p, 3, ctx), 0, ctx));
    // collect reconstruction over an arbitrary classifier
    Expr rebuilt;
    for (const auto& [key, val] : collect(p, [](AtomId id) { return id % 2 == 0; }))
      rebuilt += Expr::from_mono(key) * val;
    CHECK(rebuilt == p);
  }
}

TEST_CASE("jet order and atom listing") {
  const Expr e = atom_expr(jet(0, 0, {1, 2})) * atom_expr(field(1, 1)) + Expr(3);
  CHECK(e.jet_order() == 2);
  const auto ids = e.atoms();
  CHECK(ids.size() == 2);
}
