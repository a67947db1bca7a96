#include "ymsym/yangmills.hpp"

#include "ymsym/atom.hpp"
#include "ymsym/error.hpp"

namespace ymsym {

namespace {

Expr jet_expr(int a, int nu, std::vector<std::uint8_t> derivs) {
  return Expr::from_atom(jet(a, nu, std::move(derivs)));
}

Expr field_expr(int a, int nu) { return Expr::from_atom(field(a, nu)); }

/// One equation family member Delta_a^nu, fully expanded in jets and fields.
Expr delta_equation(const StructureConstants& sc, int a, int nu) {
  Expr out;
  // Wave part d_mu d^mu A_a^nu minus the gradient-of-divergence part
  // d_mu d^nu A_a^mu; the mu = nu contributions cancel.
  for (int mu = 0; mu < 4; ++mu) {
    out += Expr(metric_diag(mu)) * jet_expr(a, nu, {std::uint8_t(mu), std::uint8_t(mu)});
    out -= Expr(metric_diag(nu)) * jet_expr(a, mu, {std::uint8_t(mu), std::uint8_t(nu)});
  }
  for (const auto& [key, c] : sc.entries()) {
    const auto [x, b, d] = key;
    if (x != a) continue;
    // 2 C_abc A_b^mu d_mu A_c^nu + C_abc (d_mu A_b^mu) A_c^nu
    //   - C_abc A_b_mu d^nu A_c^mu.
    for (int mu = 0; mu < 4; ++mu) {
      out += Expr(c * Scalar(2)) * field_expr(b, mu) * jet_expr(d, nu, {std::uint8_t(mu)});
      out += Expr(c) * jet_expr(b, mu, {std::uint8_t(mu)}) * field_expr(d, nu);
      out -= Expr(c * metric_diag(mu) * metric_diag(nu)) * field_expr(b, mu) *
             jet_expr(d, mu, {std::uint8_t(nu)});
    }
  }
  // Cubic term C_abc C_cdl A_d^mu A_l^nu A_b_mu.
  for (const auto& [key1, c1] : sc.entries()) {
    const auto [x, b, c] = key1;
    if (x != a) continue;
    for (const auto& [key2, c2] : sc.entries()) {
      const auto [cc, d, l] = key2;
      if (cc != c) continue;
      for (int mu = 0; mu < 4; ++mu) {
        out += Expr(c1 * c2 * metric_diag(mu)) * field_expr(d, mu) * field_expr(l, nu) * field_expr(b, mu);
      }
    }
  }
  return out;
}

}  // namespace

YMSystem build_system(const StructureConstants& sc) {
  const int n = sc.dimension();
  std::vector<Expr> equations;
  equations.reserve(static_cast<std::size_t>(n) * 4);
  for (int a = 0; a < n; ++a) {
    for (int nu = 0; nu < 4; ++nu) equations.push_back(delta_equation(sc, a, nu));
  }
  // Isolate one second derivative per component. The chosen jets carry
  // coefficient -1 in their equation, so the rearranged right-hand side is
  // the equation plus the isolated atom.
  std::map<AtomId, Expr> solved;
  for (int a = 0; a < n; ++a) {
    for (int nu = 0; nu < 4; ++nu) {
      const int iso = (nu == 1) ? 2 : 1;
      const AtomId target = jet(a, nu, {std::uint8_t(iso), std::uint8_t(iso)});
      const Expr& eq = equations[static_cast<std::size_t>(a) * 4 + nu];
      if (eq.coefficient(mono_of_atom(target, 1)) != Scalar(-1)) {
        throw DomainError("isolated jet does not carry coefficient -1");
      }
      solved.emplace(target, eq + Expr::from_atom(target));
    }
  }
  return YMSystem{sc, std::move(equations), std::move(solved)};
}

std::vector<Expr> field_strength(const StructureConstants& sc, int mu, int nu) {
  if (mu < 0 || mu > 3 || nu < 0 || nu > 3) throw DomainError("spacetime index out of range");
  const int n = sc.dimension();
  std::vector<Expr> out;
  out.reserve(n);
  for (int a = 0; a < n; ++a) {
    Expr f = Expr(metric_diag(mu)) * jet_expr(a, nu, {std::uint8_t(mu)}) -
             Expr(metric_diag(nu)) * jet_expr(a, mu, {std::uint8_t(nu)});
    for (const auto& [key, c] : sc.entries()) {
      const auto [x, b, d] = key;
      if (x != a) continue;
      f += Expr(c) * field_expr(b, mu) * field_expr(d, nu);
    }
    out.push_back(std::move(f));
  }
  return out;
}

DivergenceIdentity divergence_identity_check(const YMSystem& sys) {
  const int n = sys.n_fields();
  const DerivCtx ctx = sys.deriv_ctx();
  DivergenceIdentity out;
  out.identity_ok = true;
  out.on_shell_ok = true;
  for (int a = 0; a < n; ++a) {
    Expr div;
    for (int nu = 0; nu < 4; ++nu) div += total_derivative(sys.equation(a, nu), nu, ctx);

    // Off-shell: the divergence is exactly minus the contraction of the
    // equations with C A, so their sum must be the zero polynomial.
    Expr identity = div;
    for (const auto& [key, c] : sys.sc.entries()) {
      const auto [x, b, d] = key;
      if (x != a) continue;
      for (int mu = 0; mu < 4; ++mu) {
        identity += Expr(c * metric_diag(mu)) * field_expr(b, mu) * sys.equation(d, mu);
      }
    }
    if (!identity.is_zero()) out.identity_ok = false;

    // On-shell: eliminating the isolated second derivatives must kill the
    // divergence outright.
    Expr reduced = div;
    for (const auto& [target, rhs] : sys.solved_forms) reduced = substitute(reduced, target, rhs);
    if (!reduced.is_zero()) out.on_shell_ok = false;
    out.residuals.push_back(std::move(reduced));
  }
  out.ok = out.identity_ok && out.on_shell_ok;
  return out;
}

GaugeCondition build_gauge(const StructureConstants& sc) {
  const int n = sc.dimension();
  GaugeCondition gc;
  gc.equations.reserve(n);
  gc.derivative_constraints.reserve(static_cast<std::size_t>(n) * 4);
  const DerivCtx ctx{n, 3};
  for (int a = 0; a < n; ++a) {
    Expr eq;
    for (int mu = 0; mu < 4; ++mu) eq += jet_expr(a, mu, {std::uint8_t(mu)});
    for (int lambda = 0; lambda < 4; ++lambda) {
      gc.derivative_constraints.push_back(total_derivative(eq, lambda, ctx));
    }
    gc.equations.push_back(std::move(eq));
  }
  return gc;
}

}  // namespace ymsym
