#include "ymsym/prolongation.hpp"

#include "ymsym/atom.hpp"
#include "ymsym/error.hpp"

namespace ymsym {

namespace {

Expr jet_expr(int a, int nu, std::vector<std::uint8_t> derivs) {
  return Expr::from_atom(jet(a, nu, std::move(derivs)));
}

}  // namespace

Generator make_formal_generator(int n_fields) {
  Generator g;
  g.h.reserve(4);
  for (int kappa = 0; kappa < 4; ++kappa) {
    g.h.push_back(Expr::from_atom(formal("H", {static_cast<std::uint8_t>(kappa)}, {}, true)));
  }
  g.phi.reserve(static_cast<std::size_t>(n_fields) * 4);
  for (int a = 0; a < n_fields; ++a) {
    for (int kappa = 0; kappa < 4; ++kappa) {
      g.phi.push_back(Expr::from_atom(
          formal("Phi", {static_cast<std::uint8_t>(kappa)}, {static_cast<std::uint8_t>(a)}, true)));
    }
  }
  return g;
}

void validate_generator(const Generator& g) {
  if (g.h.size() != 4) throw DomainError("generator needs exactly four coordinate components");
  if (g.phi.empty() || g.phi.size() % 4 != 0) {
    throw DomainError("generator needs four field components per algebra index");
  }
  for (const auto* family : {&g.h, &g.phi}) {
    for (const auto& e : *family) {
      for (const AtomId id : e.atoms()) {
        if (is_derivative_jet(id)) {
          throw DomainError("generator components must be functions of the coordinates and bare fields; found " +
                            atom_name(id));
        }
      }
    }
  }
}

ProlongationCoefficients prolong_coefficients(const Generator& g) {
  validate_generator(g);
  const int n = g.n_fields();
  const DerivCtx ctx{n, 3};
  ProlongationCoefficients pc;
  pc.phi1.resize(static_cast<std::size_t>(n) * 4 * 4);
  pc.phi2.resize(static_cast<std::size_t>(n) * 4 * 10);
  for (int a = 0; a < n; ++a) {
    for (int kappa = 0; kappa < 4; ++kappa) {
      // Shifted component Phi_a^kappa - H^mu d_mu A_a^kappa; its total
      // derivatives generate both coefficient families.
      Expr base = g.phi_at(a, kappa);
      for (int mu = 0; mu < 4; ++mu) {
        base -= g.h[mu] * jet_expr(a, kappa, {static_cast<std::uint8_t>(mu)});
      }
      for (int lambda = 0; lambda < 4; ++lambda) {
        const Expr d_lambda = total_derivative(base, lambda, ctx);
        Expr first = d_lambda;
        for (int mu = 0; mu < 4; ++mu) {
          first += g.h[mu] *
                   jet_expr(a, kappa, {static_cast<std::uint8_t>(mu), static_cast<std::uint8_t>(lambda)});
        }
        pc.phi1[(static_cast<std::size_t>(a) * 4 + kappa) * 4 + lambda] = std::move(first);
        for (int pi = lambda; pi < 4; ++pi) {
          Expr second = total_derivative(d_lambda, pi, ctx);
          for (int mu = 0; mu < 4; ++mu) {
            second += g.h[mu] * jet_expr(a, kappa,
                                         {static_cast<std::uint8_t>(mu), static_cast<std::uint8_t>(lambda),
                                          static_cast<std::uint8_t>(pi)});
          }
          if (second.jet_order() > 2) {
            throw DomainError("third-order jets failed to cancel in a prolongation coefficient");
          }
          pc.phi2[(static_cast<std::size_t>(a) * 4 + kappa) * 10 + pair_slot(lambda, pi)] =
              std::move(second);
        }
      }
    }
  }
  return pc;
}

Expr apply_pr2(const Generator& g, const ProlongationCoefficients& pc, const Expr& e) {
  if (e.jet_order() > 2) throw DomainError("second prolongation acts on expressions of jet order <= 2");
  const int n = g.n_fields();
  Expr out;
  for (int kappa = 0; kappa < 4; ++kappa) out += g.h[kappa] * partial(e, coordinate(kappa));
  for (int a = 0; a < n; ++a) {
    for (int kappa = 0; kappa < 4; ++kappa) {
      out += g.phi_at(a, kappa) * partial(e, field(a, kappa));
      for (int lambda = 0; lambda < 4; ++lambda) {
        out += pc.at1(a, kappa, lambda) * partial(e, jet(a, kappa, {static_cast<std::uint8_t>(lambda)}));
        // One term per distinct second-derivative atom: the sorted pair
        // (lambda, pi) with lambda <= pi is the atom's identity.
        for (int pi = lambda; pi < 4; ++pi) {
          out += pc.at2(a, kappa, lambda, pi) *
                 partial(e, jet(a, kappa,
                                {static_cast<std::uint8_t>(lambda), static_cast<std::uint8_t>(pi)}));
        }
      }
    }
  }
  return out;
}

Expr apply_pr2(const Generator& g, const Expr& e) { return apply_pr2(g, prolong_coefficients(g), e); }

Scalar evaluate_at_point(const Expr& e, const std::map<AtomId, Scalar>& assignment) {
  return evaluate(e, assignment);
}

}  // namespace ymsym
