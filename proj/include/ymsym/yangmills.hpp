#pragma once

#include <map>
#include <vector>

#include "ymsym/expr.hpp"
#include "ymsym/liealgebra.hpp"

namespace ymsym {

/// Diagonal entry of the flat metric with signature (+, -, -, -); raising or
/// lowering a spacetime index multiplies by this sign.
inline Scalar metric_diag(int mu) { return Scalar(mu == 0 ? 1 : -1); }

/// The field equations of one gauge potential family A_a^nu together with the
/// rearrangements that isolate one second derivative per (a, nu).
struct YMSystem {
  StructureConstants sc;
  std::vector<Expr> equations;          // indexed a * 4 + nu
  std::map<AtomId, Expr> solved_forms;  // isolated second-order jet -> equivalent right-hand side

  const Expr& equation(int a, int nu) const { return equations[static_cast<std::size_t>(a) * 4 + nu]; }
  int n_fields() const { return sc.dimension(); }
  DerivCtx deriv_ctx() const { return DerivCtx{sc.dimension(), 3}; }
};

/// The divergence-free gauge condition and its first-derivative consequences.
struct GaugeCondition {
  std::vector<Expr> equations;               // one per algebra index a
  std::vector<Expr> derivative_constraints;  // indexed a * 4 + lambda

  const Expr& constraint(int a, int lambda) const {
    return derivative_constraints[static_cast<std::size_t>(a) * 4 + lambda];
  }
};

/// Builds the 4N field equations over the given structure constants and the
/// solved forms that isolate, for every a, the second derivatives
/// d1d1 A_a^0, d2d2 A_a^1, d1d1 A_a^2 and d1d1 A_a^3.
YMSystem build_system(const StructureConstants& sc);

/// Field strength F_a^{mu nu} for every a: the curl of A plus the quadratic
/// commutator term. Antisymmetric in (mu, nu).
std::vector<Expr> field_strength(const StructureConstants& sc, int mu, int nu);

/// Result of checking that the divergence of the field equations closes on
/// the equations themselves.
struct DivergenceIdentity {
  bool ok = false;
  bool identity_ok = false;     // off-shell: D_nu Delta_a^nu + C A Delta == 0 exactly
  bool on_shell_ok = false;     // substituting the solved forms reduces D_nu Delta_a^nu to 0
  std::vector<Expr> residuals;  // on-shell residual per algebra index (zero when ok)
};

/// Applies the total divergence to every equation family and verifies, both
/// as an exact polynomial identity and by on-shell substitution, that it
/// vanishes whenever the equations hold.
DivergenceIdentity divergence_identity_check(const YMSystem& sys);

/// Builds the gauge condition d_mu A_a^mu = 0 and its derivative constraints.
GaugeCondition build_gauge(const StructureConstants& sc);

}  // namespace ymsym
