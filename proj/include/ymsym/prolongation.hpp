#pragma once

#include <map>
#include <vector>

#include "ymsym/expr.hpp"

namespace ymsym {

/// A point-symmetry generator candidate: coordinate components H^kappa and
/// field components Phi_a^kappa, all functions of x and the bare fields only.
struct Generator {
  std::vector<Expr> h;    // 4 coordinate components
  std::vector<Expr> phi;  // n * 4 field components, indexed a * 4 + kappa

  int n_fields() const { return static_cast<int>(phi.size() / 4); }
  const Expr& phi_at(int a, int kappa) const { return phi[static_cast<std::size_t>(a) * 4 + kappa]; }
};

/// Generator whose components are opaque function atoms of x and A, one per
/// component, so that prolongation results stay fully symbolic.
Generator make_formal_generator(int n_fields);

/// Throws DomainError when a component contains a differentiated jet; the
/// components must be functions of the coordinates and bare fields only.
void validate_generator(const Generator& g);

/// Slot of the unordered derivative pair (lambda <= pi) among the ten pairs.
inline int pair_slot(int lambda, int pi) { return lambda * 4 - lambda * (lambda - 1) / 2 + (pi - lambda); }

/// First and second prolongation coefficient families of a generator. The
/// second-order family is stored once per unordered derivative pair.
struct ProlongationCoefficients {
  std::vector<Expr> phi1;  // indexed (a * 4 + kappa) * 4 + lambda
  std::vector<Expr> phi2;  // indexed (a * 4 + kappa) * 10 + pair_slot(lambda, pi)

  const Expr& at1(int a, int kappa, int lambda) const {
    return phi1[(static_cast<std::size_t>(a) * 4 + kappa) * 4 + lambda];
  }
  const Expr& at2(int a, int kappa, int lambda, int pi) const {
    if (lambda > pi) std::swap(lambda, pi);
    return phi2[(static_cast<std::size_t>(a) * 4 + kappa) * 10 + pair_slot(lambda, pi)];
  }
};

/// Builds both coefficient families through the total-derivative recursion,
/// cancelling the third-order jets exactly; the results have jet order <= 2.
ProlongationCoefficients prolong_coefficients(const Generator& g);

/// Applies the twice-prolonged vector field of g to an expression of jet
/// order <= 2, using precomputed coefficient families.
Expr apply_pr2(const Generator& g, const ProlongationCoefficients& pc, const Expr& e);

/// Convenience overload computing the coefficients on the fly.
Expr apply_pr2(const Generator& g, const Expr& e);

/// Exact rational evaluation of an expression at a point assignment; throws
/// EvalError naming the first atom without a value.
Scalar evaluate_at_point(const Expr& e, const std::map<AtomId, Scalar>& assignment);

}  // namespace ymsym
