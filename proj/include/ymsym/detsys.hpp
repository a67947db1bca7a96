#pragma once

#include <map>
#include <string>
#include <vector>

#include "ymsym/prolongation.hpp"
#include "ymsym/yangmills.hpp"

namespace ymsym {

/// Ordered substitution passes that restrict an expression to the solution
/// manifold: field-equation solved forms first, then (when a gauge condition
/// is active) the differentiated gauge constraint, then the gauge constraint
/// itself. Each pass's replacement expressions are free of every atom
/// eliminated by that pass or any earlier one, so one sequential application
/// yields the unique normal form.
struct OnShellRules {
  std::vector<std::map<AtomId, Expr>> passes;
  std::vector<AtomId> eliminated;
};

/// Build the reduction rules for a system, optionally with a gauge condition.
/// alternate_elimination picks a different (but equivalent) set of gauge
/// atoms to eliminate; downstream results must not depend on the choice.
OnShellRules on_shell_rules(const YMSystem& sys, const GaugeCondition* gauge = nullptr,
                            bool alternate_elimination = false);

/// Apply the reduction passes to one expression.
Expr reduce_on_shell(const Expr& e, const OnShellRules& rules);
Expr reduce_on_shell(const Expr& e, const YMSystem& sys, const GaugeCondition* gauge = nullptr,
                     bool alternate_elimination = false);

/// The second prolongation of g applied to every field equation (one Expr per
/// equation, fully expanded, not yet reduced on shell).
std::vector<Expr> symmetry_condition(const YMSystem& sys, const Generator& g);
std::vector<Expr> symmetry_condition(const YMSystem& sys, const Generator& g,
                                     const ProlongationCoefficients& pc);

/// Outcome of checking one generator: per-equation on-shell residuals, the
/// overall verdict, and (when failing) the printed leading monomial of the
/// first nonzero residual.
struct VerifyReport {
  bool pass = false;
  std::vector<Expr> residuals;
  std::string witness;
};

/// A generator is a symmetry iff every on-shell residual is identically zero.
/// Components may carry x-only formal functions (gauge profiles), in which
/// case a pass means the result holds for arbitrary such functions.
VerifyReport verify_generator(const YMSystem& sys, const Generator& g,
                              const GaugeCondition* gauge = nullptr);

/// One linear condition on the formal generator components, tagged by the
/// shape of the jet monomial it was collected from ("dA-ddA", "ddA",
/// "dA-dA-dA", "dA-dA", "dA", or "none").
struct DeterminingEquation {
  Expr lhs;
  std::string klass;
};

struct DeterminingSystem {
  std::vector<DeterminingEquation> equations;
};

/// Apply the prolongation of a fully formal generator to the system, reduce
/// on shell, and collect coefficients of the independent jet monomials. With
/// a gauge condition, the prolonged gauge constraint contributes additional
/// equations. Exact duplicates (up to scale) are dropped; order is
/// deterministic.
DeterminingSystem extract_determining(const YMSystem& sys, const GaugeCondition* gauge = nullptr,
                                      bool alternate_elimination = false, int threads = 1);

/// Map every formal atom derivable from the standard formal generator (values
/// and derivatives up to total order `max_order`) to the corresponding
/// derivative of g's concrete components. Substituting the result into a
/// determining system tests whether g solves it.
std::map<AtomId, Expr> formal_substitution(const Generator& g, int max_order = 2);

/// Polynomial truncation degrees for the linear solver: H of degree deg_h in
/// x, an A-linear part of Phi with degree deg_phi_linear coefficients, and an
/// A-free part of degree deg_phi_inhom.
struct AnsatzSpec {
  int deg_h = 2;
  int deg_phi_linear = 1;
  int deg_phi_inhom = 0;
  long unknown_cap = 20000;
};

/// A generator whose components are polynomials with one free parameter atom
/// per allowed monomial, plus the parameter list in column order.
struct AnsatzProblem {
  Generator generator;
  std::vector<AtomId> params;
};

AnsatzProblem make_ansatz(const StructureConstants& sc, const AnsatzSpec& spec);

/// Exact solution set of the determining equations within an ansatz.
struct SolutionSpace {
  int dimension = 0;
  std::vector<Generator> basis;
};

/// Instantiate the ansatz, impose the symmetry condition (plus the gauge
/// constraint when given), and solve the resulting homogeneous linear system
/// exactly. Every basis generator is re-verified before being returned.
SolutionSpace solve_ansatz(const YMSystem& sys, const AnsatzSpec& spec,
                           const GaugeCondition* gauge = nullptr, int threads = 1);

/// Residual of the prolonged gauge constraint, reduced on the gauged solution
/// manifold: one Expr per algebra index. A generator preserves the gauge
/// slice iff all entries vanish.
std::vector<Expr> gauge_constraint_residual(const YMSystem& sys, const Generator& g);

} // namespace ymsym
