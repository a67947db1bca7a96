#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "ymsym/atom.hpp"
#include "ymsym/catalog.hpp"
#include "ymsym/detsys.hpp"
#include "ymsym/error.hpp"
#include "ymsym/grammar.hpp"
#include "ymsym/liealgebra.hpp"
#include "ymsym/linalg.hpp"
#include "ymsym/prolongation.hpp"
#include "ymsym/yangmills.hpp"

using namespace ymsym;

namespace {

Expr J(int a, int nu, std::vector<std::uint8_t> derivs) {
  return Expr::from_atom(jet(a, nu, std::move(derivs)));
}

Expr X(int mu) { return Expr::from_atom(coordinate(mu)); }

Expr A(int a, int nu) { return Expr::from_atom(field(a, nu)); }

// Diagonal metric entry; numerically the same raised or lowered.
Scalar gd(int mu) { return metric_diag(mu); }

AtomId h_atom(int mu) { return formal("H", {static_cast<std::uint8_t>(mu)}, {}, true); }

AtomId phi_atom(int a, int kappa) {
  return formal("Phi", {static_cast<std::uint8_t>(kappa)}, {static_cast<std::uint8_t>(a)}, true);
}

Expr dx_h(int mu, int lambda) { return Expr::from_atom(formal_dx(h_atom(mu), lambda)); }

Expr dA_h(int mu, int n, int alpha) { return Expr::from_atom(formal_dA(h_atom(mu), n, alpha)); }

const YMSystem& su2_system() {
  static const YMSystem sys = build_system(build_su2());
  return sys;
}

const GaugeCondition& su2_gauge() {
  static const GaugeCondition gc = build_gauge(build_su2());
  return gc;
}

// The expensive extractions are shared across test cases.
const DeterminingSystem& su2_free_determining() {
  static const DeterminingSystem ds = extract_determining(su2_system());
  return ds;
}

const DeterminingSystem& su2_gauge_determining() {
  static const DeterminingSystem ds = extract_determining(su2_system(), &su2_gauge());
  return ds;
}

const DeterminingSystem& su2_gauge_alternate_determining() {
  static const DeterminingSystem ds = extract_determining(su2_system(), &su2_gauge(), true);
  return ds;
}

// The linear part of the prolonged field equation written out term by term,
// using the coefficient families directly instead of the derivation machinery.
Expr hand_symmetry_component(const YMSystem& sys, const Generator& g,
                             const ProlongationCoefficients& pc, int a, int nu) {
  const StructureConstants& sc = sys.sc;
  const int n = sc.dimension();
  const Scalar gnn = gd(nu);
  Expr out;
  // transported first derivatives against the linear couplings
  for (int d = 0; d < n; ++d) {
    for (int c = 0; c < n; ++c) {
      const Scalar adc = sc.at(a, d, c);
      if (adc.is_zero()) continue;
      for (int kappa = 0; kappa < 4; ++kappa) {
        out += adc * g.phi_at(d, kappa) *
               (Scalar(2) * J(c, nu, {static_cast<std::uint8_t>(kappa)}) -
                gnn * gd(kappa) * J(c, kappa, {static_cast<std::uint8_t>(nu)}));
      }
    }
    for (int b = 0; b < n; ++b) {
      const Scalar abd = sc.at(a, b, d);
      if (abd.is_zero()) continue;
      for (int mu = 0; mu < 4; ++mu) {
        out += abd * g.phi_at(d, nu) * J(b, mu, {static_cast<std::uint8_t>(mu)});
      }
    }
  }
  // transported fields against the quadratic couplings
  for (int d = 0; d < n; ++d) {
    for (int b = 0; b < n; ++b) {
      for (int l = 0; l < n; ++l) {
        Scalar paired;
        Scalar straight;
        for (int c = 0; c < n; ++c) {
          paired += sc.at(a, b, c) * sc.at(c, d, l) + sc.at(a, d, c) * sc.at(c, b, l);
          straight += sc.at(a, b, c) * sc.at(c, l, d);
        }
        if (!paired.is_zero()) {
          for (int kappa = 0; kappa < 4; ++kappa) {
            out += paired * gd(kappa) * g.phi_at(d, kappa) * A(l, nu) * A(b, kappa);
          }
        }
        if (!straight.is_zero()) {
          for (int mu = 0; mu < 4; ++mu) {
            out += straight * gd(mu) * g.phi_at(d, nu) * A(l, mu) * A(b, mu);
          }
        }
      }
    }
  }
  // first-order coefficient families against the derivative couplings
  for (int d = 0; d < n; ++d) {
    for (int b = 0; b < n; ++b) {
      const Scalar abd = sc.at(a, b, d);
      if (abd.is_zero()) continue;
      for (int lambda = 0; lambda < 4; ++lambda) {
        out += Scalar(2) * abd * pc.at1(d, nu, lambda) * A(b, lambda);
      }
      for (int kappa = 0; kappa < 4; ++kappa) {
        out -= gnn * gd(kappa) * abd * pc.at1(d, kappa, nu) * A(b, kappa);
      }
    }
    for (int c = 0; c < n; ++c) {
      const Scalar adc = sc.at(a, d, c);
      if (adc.is_zero()) continue;
      Expr trace;
      for (int kappa = 0; kappa < 4; ++kappa) trace += pc.at1(d, kappa, kappa);
      out += adc * trace * A(c, nu);
    }
  }
  // second-order coefficient families against the principal part
  for (int lambda = 0; lambda < 4; ++lambda) {
    out += gd(lambda) * pc.at2(a, nu, lambda, lambda);
    out -= gnn * pc.at2(a, lambda, lambda, nu);
  }
  return out;
}

// All closed-form coefficients set to zero, leaving the opaque gauge profiles.
Generator symbolic_gauge_generator(const StructureConstants& sc) {
  std::map<AtomId, Expr> kill;
  for (int mu = 0; mu < 4; ++mu) {
    kill.emplace(param("a" + std::to_string(mu)), Expr{});
    kill.emplace(param("c" + std::to_string(mu)), Expr{});
    for (int lambda = mu + 1; lambda < 4; ++lambda) {
      kill.emplace(param("b" + std::to_string(mu) + std::to_string(lambda)), Expr{});
    }
  }
  kill.emplace(param("d"), Expr{});
  Generator g = general_solution(sc);
  for (auto& component : g.h) component = substitute_all(component, kill);
  for (auto& component : g.phi) component = substitute_all(component, kill);
  return g;
}

SparseEliminator::Row row_of(const Expr& e) {
  SparseEliminator::Row r;
  r.reserve(e.size());
  for (const auto& t : e.terms()) r.emplace_back(static_cast<int>(t.m), t.c);
  return r;
}

// An atom of the form dH^mu/dA_n^alpha with no further derivatives.
bool is_h_field_slope(AtomId id) {
  if (!is_formal(id)) return false;
  const AtomData& d = atom(id);
  return d.name == "H" && d.xderivs.empty() && d.aderivs.size() == 1;
}

Generator zero_generator(int n_fields) {
  Generator g;
  g.h.assign(4, Expr{});
  g.phi.assign(static_cast<std::size_t>(n_fields) * 4, Expr{});
  return g;
}

}  // namespace

TEST_CASE("on-shell reduction eliminates exactly the intended atoms") {
  const YMSystem& sys = su2_system();
  const GaugeCondition& gc = su2_gauge();

  const OnShellRules free_rules = on_shell_rules(sys);
  CHECK(free_rules.passes.size() == 1);
  CHECK(free_rules.eliminated.size() == 12);

  const OnShellRules gauge_rules = on_shell_rules(sys, &gc);
  CHECK(gauge_rules.passes.size() == 3);
  CHECK(gauge_rules.eliminated.size() == 27);
  const OnShellRules alt_rules = on_shell_rules(sys, &gc, true);
  CHECK(alt_rules.eliminated.size() == 27);

  // the two gauge modes pick different first-derivative atoms
  const auto contains = [](const std::vector<AtomId>& v, AtomId id) {
    return std::find(v.begin(), v.end(), id) != v.end();
  };
  CHECK(contains(gauge_rules.eliminated, jet(0, 0, {0})));
  CHECK(!contains(gauge_rules.eliminated, jet(0, 3, {3})));
  CHECK(contains(alt_rules.eliminated, jet(0, 3, {3})));
  CHECK(!contains(alt_rules.eliminated, jet(0, 0, {0})));

  // every field equation vanishes on its own solution manifold
  for (int a = 0; a < 3; ++a) {
    for (int nu = 0; nu < 4; ++nu) {
      CHECK(reduce_on_shell(sys.equation(a, nu), free_rules).is_zero());
      CHECK(reduce_on_shell(sys.equation(a, nu), gauge_rules).is_zero());
      CHECK(reduce_on_shell(sys.equation(a, nu), alt_rules).is_zero());
    }
  }
  // the gauge constraint and its derivatives vanish once the gauge is active
  for (int a = 0; a < 3; ++a) {
    CHECK(!reduce_on_shell(gc.equations[static_cast<std::size_t>(a)], free_rules).is_zero());
    CHECK(reduce_on_shell(gc.equations[static_cast<std::size_t>(a)], gauge_rules).is_zero());
    CHECK(reduce_on_shell(gc.equations[static_cast<std::size_t>(a)], alt_rules).is_zero());
    for (int lambda = 0; lambda < 4; ++lambda) {
      CHECK(reduce_on_shell(gc.constraint(a, lambda), gauge_rules).is_zero());
      CHECK(reduce_on_shell(gc.constraint(a, lambda), alt_rules).is_zero());
    }
  }

  // reduction removes every eliminated atom and is idempotent, powers included
  for (const OnShellRules* rules : {&free_rules, &gauge_rules, &alt_rules}) {
    for (const AtomId el : rules->eliminated) {
      const Expr probe = Expr::from_atom(el) * A(0, 1) + pow(Expr::from_atom(el), 2) +
                         J(2, 1, {0}) * X(3) + Expr(Scalar(5));
      const Expr reduced = reduce_on_shell(probe, *rules);
      for (const AtomId id : reduced.atoms()) {
        CHECK(std::find(rules->eliminated.begin(), rules->eliminated.end(), id) ==
              rules->eliminated.end());
      }
      CHECK((reduce_on_shell(reduced, *rules) - reduced).is_zero());
    }
  }

  // the convenience overload builds the same rules internally
  const Expr probe = J(0, 0, {1, 1}) * A(1, 2) + J(2, 0, {0}) * J(1, 1, {2, 2});
  CHECK((reduce_on_shell(probe, sys) - reduce_on_shell(probe, free_rules)).is_zero());
  CHECK((reduce_on_shell(probe, sys, &gc, true) - reduce_on_shell(probe, alt_rules)).is_zero());
}

TEST_CASE("prolonged field equations match the assembled first-order form") {
  const YMSystem& sys = su2_system();
  const Generator g = make_formal_generator(sys.n_fields());
  const ProlongationCoefficients pc = prolong_coefficients(g);
  const std::vector<Expr> sym = symmetry_condition(sys, g, pc);
  REQUIRE(sym.size() == 12);
  for (int a = 0; a < 3; ++a) {
    for (int nu = 0; nu < 4; ++nu) {
      const Expr hand = hand_symmetry_component(sys, g, pc, a, nu);
      CHECK((sym[static_cast<std::size_t>(a) * 4 + nu] - hand).is_zero());
    }
  }
}

TEST_CASE("translations leave the field equations invariant before any reduction") {
  const YMSystem& sys = su2_system();
  for (int mu = 0; mu < 4; ++mu) {
    const Generator g = make(GeneratorName::translation(mu), sys.sc);
    for (const Expr& component : symmetry_condition(sys, g)) CHECK(component.is_zero());
  }
  for (const Expr& component : symmetry_condition(sys, zero_generator(3))) {
    CHECK(component.is_zero());
  }
}

TEST_CASE("grouped coefficients match hand-computed braces") {
  const YMSystem& sys = su2_system();
  const Generator g = make_formal_generator(sys.n_fields());
  const ProlongationCoefficients pc = prolong_coefficients(g);
  const std::vector<Expr> sym = symmetry_condition(sys, g, pc);

  const auto coefficient_of = [&](int a, int nu, MonoId key) {
    const Expr& s = sym[static_cast<std::size_t>(a) * 4 + nu];
    for (const auto& [k, value] : collect(s, [](AtomId id) { return is_derivative_jet(id); })) {
      if (k == key) return value;
    }
    return Expr{};
  };

  SUBCASE("pure second-derivative group, distinct field row") {
    // component (0,1), monomial dd_{00} A_1^2: only the mixed slope survives
    const MonoId key = mono_of_atom(jet(1, 2, {0, 0}));
    const Expr want = Expr::from_atom(formal_dA(phi_atom(0, 1), 1, 2));
    CHECK((coefficient_of(0, 1, key) - want).is_zero());
  }

  SUBCASE("pure second-derivative group, matching field row") {
    // component (1,0), monomial dd_{23} A_1^0: both orderings contribute
    const MonoId key = mono_of_atom(jet(1, 0, {2, 3}));
    const Expr want = Scalar(2) * dx_h(3, 2) + Scalar(2) * dx_h(2, 3);
    CHECK((coefficient_of(1, 0, key) - want).is_zero());
  }

  SUBCASE("mixed first-and-second derivative group, transport path") {
    // component (0,2), monomial d_3 A_0^1 * dd_{12} A_1^0
    const MonoId key =
        mono_mul(mono_of_atom(jet(0, 1, {3})), mono_of_atom(jet(1, 0, {1, 2})));
    const Expr want = -dA_h(3, 1, 0);
    CHECK((coefficient_of(0, 2, key) - want).is_zero());
  }

  SUBCASE("mixed first-and-second derivative group, slope path") {
    // component (1,1), monomial d_2 A_0^2 * dd_{23} A_1^1
    const MonoId key =
        mono_mul(mono_of_atom(jet(0, 2, {2})), mono_of_atom(jet(1, 1, {2, 3})));
    const Expr want = Scalar(2) * dA_h(3, 0, 2);
    CHECK((coefficient_of(1, 1, key) - want).is_zero());
  }
}

TEST_CASE("named generators verify as symmetries") {
  const YMSystem& sys = su2_system();
  const GaugeCondition& gc = su2_gauge();

  for (const GeneratorName& name : conformal_names()) {
    const VerifyReport rep = verify_generator(sys, make(name, sys.sc));
    CHECK(rep.pass);
    INFO(display(name));
    for (const Expr& r : rep.residuals) CHECK(r.is_zero());
  }

  // gauge transformations with opaque x-profiles, and the whole family at once
  CHECK(verify_generator(sys, symbolic_gauge_generator(sys.sc)).pass);
  CHECK(verify_generator(sys, general_solution(sys.sc)).pass);

  // uniform field scaling is not a symmetry; the witness names a monomial
  Generator impostor = zero_generator(3);
  for (int a = 0; a < 3; ++a) {
    for (int kappa = 0; kappa < 4; ++kappa) {
      impostor.phi[static_cast<std::size_t>(a) * 4 + kappa] = A(a, kappa);
    }
  }
  const VerifyReport bad = verify_generator(sys, impostor);
  CHECK(!bad.pass);
  CHECK(!bad.witness.empty());

  // accelerations still satisfy the field equations on the gauged manifold
  CHECK(verify_generator(sys, make(GeneratorName::acceleration(2), sys.sc), &gc).pass);
  CHECK(verify_generator(sys, make(GeneratorName::dilatation(), sys.sc), &gc).pass);

  // a quick cross-check on the six-dimensional sum algebra
  const StructureConstants sum_sc = build_direct_sum(build_su2(), build_su2());
  const YMSystem sum_sys = build_system(sum_sc);
  CHECK(verify_generator(sum_sys, make(GeneratorName::translation(0), sum_sc)).pass);
  CHECK(verify_generator(sum_sys, make(GeneratorName::acceleration(1), sum_sc)).pass);
}

TEST_CASE("the closed-form family solves every determining equation") {
  const YMSystem& sys = su2_system();
  const DeterminingSystem& ds = su2_free_determining();
  REQUIRE(!ds.equations.empty());

  // all six monomial shapes appear, and nothing else
  std::set<std::string> klasses;
  for (const DeterminingEquation& eq : ds.equations) klasses.insert(eq.klass);
  const std::set<std::string> expected = {"dA-ddA", "ddA", "dA-dA-dA", "dA-dA", "dA", "none"};
  CHECK(klasses == expected);

  // conditions constrain the generator components and bare fields only
  std::set<std::string> seen;
  for (const DeterminingEquation& eq : ds.equations) {
    CHECK(!eq.lhs.is_zero());
    for (const AtomId id : eq.lhs.atoms()) {
      CHECK((is_formal(id) || is_field(id)));
    }
    Expr normalized = eq.lhs * eq.lhs.terms().front().c.inverse();
    CHECK(seen.insert(to_string(normalized)).second);
  }

  // the closed-form family with opaque gauge profiles annihilates the system
  const std::map<AtomId, Expr> family = formal_substitution(general_solution(sys.sc));
  for (const DeterminingEquation& eq : ds.equations) {
    INFO(eq.klass);
    CHECK(substitute_all(eq.lhs, family).is_zero());
  }

  // the gauged system keeps the divergence-compatible members only
  const DeterminingSystem& gds = su2_gauge_determining();
  REQUIRE(!gds.equations.empty());
  for (const GeneratorName& name : lorentz_gauge_admissible(sys.sc)) {
    const std::map<AtomId, Expr> sub = formal_substitution(make(name, sys.sc));
    INFO(display(name));
    for (const DeterminingEquation& eq : gds.equations) {
      CHECK(substitute_all(eq.lhs, sub).is_zero());
    }
  }
  const std::map<AtomId, Expr> accel =
      formal_substitution(make(GeneratorName::acceleration(2), sys.sc));
  bool violated = false;
  for (const DeterminingEquation& eq : gds.equations) {
    if (!substitute_all(eq.lhs, accel).is_zero()) violated = true;
  }
  CHECK(violated);
}

TEST_CASE("the determining system forces the component conditions") {
  const DeterminingSystem& ds = su2_free_determining();

  // rows supported purely on the field slopes of the coordinate components
  std::vector<Expr> pure;
  for (const DeterminingEquation& eq : ds.equations) {
    bool all_slopes = true;
    for (const AtomId id : eq.lhs.atoms()) {
      if (!is_h_field_slope(id)) all_slopes = false;
    }
    if (all_slopes) pure.push_back(eq.lhs);
  }
  REQUIRE(!pure.empty());

  SparseEliminator pure_elim;
  for (const Expr& e : pure) pure_elim.add_row(row_of(e));

  // each individual slope of H is forced to vanish by those rows alone
  for (int mu = 0; mu < 4; ++mu) {
    for (int nn = 0; nn < 3; ++nn) {
      for (int alpha = 0; alpha < 4; ++alpha) {
        CHECK(pure_elim.reduce(row_of(dA_h(mu, nn, alpha))).empty());
      }
    }
  }

  // every derivative or field multiple of a vanishing row vanishes as well;
  // feed those consequences alongside the raw system
  SparseEliminator elim;
  for (const DeterminingEquation& eq : ds.equations) elim.add_row(row_of(eq.lhs));
  for (const Expr& e : pure) {
    for (int lambda = 0; lambda < 4; ++lambda) {
      elim.add_row(row_of(partial(e, coordinate(lambda))));
    }
    for (int b = 0; b < 3; ++b) {
      for (int mu = 0; mu < 4; ++mu) elim.add_row(row_of(A(b, mu) * e));
    }
  }

  // the symmetric part of the raised coordinate gradient is forced to vanish
  for (int lambda = 0; lambda < 4; ++lambda) {
    for (int mu = lambda + 1; mu < 4; ++mu) {
      const Expr target = gd(lambda) * dx_h(mu, lambda) + gd(mu) * dx_h(lambda, mu);
      CHECK(elim.reduce(row_of(target)).empty());
    }
  }

  // all second field slopes of the field components are forced to vanish
  std::set<AtomId> curvatures;
  for (int a = 0; a < 3; ++a) {
    for (int nu = 0; nu < 4; ++nu) {
      for (int nn = 0; nn < 3; ++nn) {
        for (int alpha = 0; alpha < 4; ++alpha) {
          for (int p = 0; p < 3; ++p) {
            for (int beta = 0; beta < 4; ++beta) {
              curvatures.insert(formal_dA(formal_dA(phi_atom(a, nu), nn, alpha), p, beta));
            }
          }
        }
      }
    }
  }
  for (const AtomId id : curvatures) {
    CHECK(elim.reduce(row_of(Expr::from_atom(id))).empty());
  }
}

TEST_CASE("gauge atom choice does not change the determining system") {
  const DeterminingSystem& base = su2_gauge_determining();
  const DeterminingSystem& alt = su2_gauge_alternate_determining();

  SparseEliminator base_elim;
  for (const DeterminingEquation& eq : base.equations) base_elim.add_row(row_of(eq.lhs));
  SparseEliminator alt_elim;
  for (const DeterminingEquation& eq : alt.equations) alt_elim.add_row(row_of(eq.lhs));

  CHECK(base_elim.rank() == alt_elim.rank());
  for (const DeterminingEquation& eq : alt.equations) {
    CHECK(base_elim.reduce(row_of(eq.lhs)).empty());
  }
  for (const DeterminingEquation& eq : base.equations) {
    CHECK(alt_elim.reduce(row_of(eq.lhs)).empty());
  }
}

TEST_CASE("polynomial ansatz solving finds the full symmetry space") {
  const YMSystem& sys = su2_system();
  const GaugeCondition& gc = su2_gauge();

  SUBCASE("unknown counting and the safety cap") {
    const AnsatzProblem problem = make_ansatz(sys.sc, AnsatzSpec{});
    CHECK(problem.params.size() == 792);
    AnsatzSpec capped;
    capped.unknown_cap = 100;
    CHECK_THROWS_AS(make_ansatz(sys.sc, capped), DomainError);
    AnsatzSpec negative;
    negative.deg_h = -1;
    CHECK_THROWS_AS(make_ansatz(sys.sc, negative), DomainError);
  }

  SUBCASE("affine truncation sees the non-accelerating members") {
    AnsatzSpec affine;
    affine.deg_h = 1;
    affine.deg_phi_linear = 0;
    affine.deg_phi_inhom = 0;
    const SolutionSpace space = solve_ansatz(sys, affine);
    CHECK(space.dimension == 14);
    // the parallel row assembly path agrees with the serial one
    const SolutionSpace threaded = solve_ansatz(sys, affine, nullptr, 2);
    CHECK(threaded.dimension == 14);
  }

  SUBCASE("quadratic truncation recovers the whole family") {
    const SolutionSpace space = solve_ansatz(sys, AnsatzSpec{});
    CHECK(space.dimension == 30);
    CHECK(space.basis.size() == 30);
    // the traceless raised gradient of every solution's coordinate part is
    // antisymmetric
    for (const Generator& g : space.basis) {
      Expr trace;
      for (int mu = 0; mu < 4; ++mu) trace += partial(g.h[mu], coordinate(mu));
      const Expr quarter = Scalar(1, 4) * trace;
      for (int mu = 0; mu < 4; ++mu) {
        for (int kappa = 0; kappa < 4; ++kappa) {
          Expr f_mu_kappa = partial(g.h[mu], coordinate(kappa));
          if (mu == kappa) f_mu_kappa -= quarter;
          Expr f_kappa_mu = partial(g.h[kappa], coordinate(mu));
          if (mu == kappa) f_kappa_mu -= quarter;
          CHECK((gd(kappa) * f_mu_kappa + gd(mu) * f_kappa_mu).is_zero());
        }
      }
    }
  }

  SUBCASE("quadratic truncation under the divergence-free gauge") {
    const SolutionSpace space = solve_ansatz(sys, AnsatzSpec{}, &gc);
    CHECK(space.dimension == 14);
    for (const Generator& g : space.basis) {
      for (const Expr& r : gauge_constraint_residual(sys, g)) CHECK(r.is_zero());
    }
  }
}

TEST_CASE("gauge preservation residuals") {
  const YMSystem& sys = su2_system();
  const StructureConstants& sc = sys.sc;

  SUBCASE("closed-form family: the obstruction is exactly the advertised one") {
    const std::vector<Expr> res = gauge_constraint_residual(sys, general_solution(sc));
    REQUIRE(res.size() == 3);
    for (int a = 0; a < 3; ++a) {
      Expr want;
      for (int kappa = 0; kappa < 4; ++kappa) {
        want += Scalar(2) * gd(kappa) * Expr::from_atom(param("c" + std::to_string(kappa))) *
                A(a, kappa);
      }
      const AtomId chi_a = formal("chi", {}, {static_cast<std::uint8_t>(a)}, false);
      for (int mu = 0; mu < 4; ++mu) {
        want += gd(mu) * Expr::from_atom(formal_dx(formal_dx(chi_a, mu), mu));
      }
      for (int b = 0; b < 3; ++b) {
        for (int d = 0; d < 3; ++d) {
          const Scalar abd = sc.at(a, b, d);
          if (abd.is_zero()) continue;
          const AtomId chi_d = formal("chi", {}, {static_cast<std::uint8_t>(d)}, false);
          for (int mu = 0; mu < 4; ++mu) {
            want += abd * Expr::from_atom(formal_dx(chi_d, mu)) * A(b, mu);
          }
        }
      }
      CHECK((res[static_cast<std::size_t>(a)] - want).is_zero());
    }
  }

  SUBCASE("surviving and excluded members") {
    for (const GeneratorName& name : lorentz_gauge_admissible(sc)) {
      INFO(display(name));
      for (const Expr& r : gauge_constraint_residual(sys, make(name, sc))) {
        CHECK(r.is_zero());
      }
    }

    const std::vector<Expr> accel =
        gauge_constraint_residual(sys, make(GeneratorName::acceleration(2), sc));
    for (int a = 0; a < 3; ++a) {
      CHECK((accel[static_cast<std::size_t>(a)] + Scalar(2) * A(a, 2)).is_zero());
    }

    // a linear gauge profile mixes into the other algebra directions
    std::vector<Expr> chi(3);
    chi[1] = X(1);
    const std::vector<Expr> linear =
        gauge_constraint_residual(sys, make(GeneratorName::gauge(chi), sc));
    CHECK((linear[0] + A(2, 1)).is_zero());
    CHECK(linear[1].is_zero());
    CHECK((linear[2] - A(0, 1)).is_zero());
  }
}
