#include "ymsym/catalog.hpp"

#include <array>
#include <utility>

#include "ymsym/yangmills.hpp"

namespace ymsym {

namespace {

Expr X(int mu) { return Expr::from_atom(coordinate(mu)); }

Expr A(int a, int nu) { return Expr::from_atom(field(a, nu)); }

void check_direction(int mu, const std::string& what) {
  if (mu < 0 || mu > 3) throw DomainError(what + " index out of range: " + std::to_string(mu));
}

/// Assembles the closed-form family from coefficient expressions: four shifts
/// a^mu, an antisymmetric rotation block b^{mu lambda}, four acceleration
/// coefficients c^mu, a scaling coefficient d, and gauge profiles chi_d(x).
Generator closed_form(const StructureConstants& sc, const std::array<Expr, 4>& a,
                      const std::array<std::array<Expr, 4>, 4>& b, const std::array<Expr, 4>& c,
                      const Expr& d, const std::vector<Expr>& chi) {
  const int n = sc.dimension();
  Generator g;
  Expr x_squared;  // x^lambda x_lambda
  for (int lambda = 0; lambda < 4; ++lambda) {
    x_squared += metric_diag(lambda) * X(lambda) * X(lambda);
  }
  for (int mu = 0; mu < 4; ++mu) {
    Expr h = Scalar(-1, 2) * c[mu] * x_squared + d * X(mu) + a[mu];
    for (int lambda = 0; lambda < 4; ++lambda) {
      h += metric_diag(lambda) * (c[lambda] * X(mu) + b[mu][lambda]) * X(lambda);
    }
    g.h.push_back(std::move(h));
  }
  for (int aa = 0; aa < n; ++aa) {
    for (int mu = 0; mu < 4; ++mu) {
      Expr phi = -d * A(aa, mu);
      for (int lambda = 0; lambda < 4; ++lambda) {
        phi += metric_diag(lambda) *
               (-c[mu] * X(lambda) + c[lambda] * X(mu) + b[mu][lambda]) * A(aa, lambda);
        phi -= metric_diag(lambda) * c[lambda] * X(lambda) * A(aa, mu);
      }
      phi += metric_diag(mu) * partial(chi[static_cast<std::size_t>(aa)], coordinate(mu));
      for (const auto& [key, value] : sc.entries()) {
        const auto [row, col, dd] = key;
        if (row != aa) continue;
        phi += value * chi[static_cast<std::size_t>(dd)] * A(col, mu);
      }
      g.phi.push_back(std::move(phi));
    }
  }
  return g;
}

}  // namespace

GeneratorName GeneratorName::translation(int mu) {
  check_direction(mu, "translation");
  GeneratorName n;
  n.kind = Kind::Translation;
  n.mu = mu;
  return n;
}

GeneratorName GeneratorName::lorentz(int mu, int lambda) {
  check_direction(mu, "rotation");
  check_direction(lambda, "rotation");
  if (mu >= lambda) throw DomainError("rotation pair must be strictly ordered");
  GeneratorName n;
  n.kind = Kind::Lorentz;
  n.mu = mu;
  n.lambda = lambda;
  return n;
}

GeneratorName GeneratorName::acceleration(int mu) {
  check_direction(mu, "acceleration");
  GeneratorName n;
  n.kind = Kind::Acceleration;
  n.mu = mu;
  return n;
}

GeneratorName GeneratorName::dilatation() {
  GeneratorName n;
  n.kind = Kind::Dilatation;
  return n;
}

GeneratorName GeneratorName::gauge(std::vector<Expr> chi) {
  GeneratorName n;
  n.kind = Kind::Gauge;
  n.chi = std::move(chi);
  return n;
}

std::string display(const GeneratorName& name) {
  switch (name.kind) {
    case GeneratorName::Kind::Translation: return "translation:" + std::to_string(name.mu);
    case GeneratorName::Kind::Lorentz:
      return "lorentz:" + std::to_string(name.mu) + "," + std::to_string(name.lambda);
    case GeneratorName::Kind::Acceleration: return "acceleration:" + std::to_string(name.mu);
    case GeneratorName::Kind::Dilatation: return "dilatation";
    case GeneratorName::Kind::Gauge: return "gauge";
  }
  return "";
}

Generator make(const GeneratorName& name, const StructureConstants& sc) {
  const int n = sc.dimension();
  std::array<Expr, 4> a{}, c{};
  std::array<std::array<Expr, 4>, 4> b{};
  Expr d;
  std::vector<Expr> chi(static_cast<std::size_t>(n));
  switch (name.kind) {
    case GeneratorName::Kind::Translation: a[static_cast<std::size_t>(name.mu)] = Expr(1); break;
    case GeneratorName::Kind::Lorentz:
      b[static_cast<std::size_t>(name.mu)][static_cast<std::size_t>(name.lambda)] = Expr(1);
      b[static_cast<std::size_t>(name.lambda)][static_cast<std::size_t>(name.mu)] = Expr(-1);
      break;
    case GeneratorName::Kind::Acceleration: c[static_cast<std::size_t>(name.mu)] = Expr(1); break;
    case GeneratorName::Kind::Dilatation: d = Expr(1); break;
    case GeneratorName::Kind::Gauge: {
      if (static_cast<int>(name.chi.size()) != n) {
        throw DomainError("gauge profile count " + std::to_string(name.chi.size()) +
                          " does not match algebra dimension " + std::to_string(n));
      }
      for (const auto& component : name.chi) {
        for (const AtomId id : component.atoms()) {
          if (!is_coordinate(id)) {
            throw DomainError("gauge profiles must depend on coordinates only, found " +
                              atom_name(id));
          }
        }
      }
      chi = name.chi;
      break;
    }
  }
  return closed_form(sc, a, b, c, d, chi);
}

std::vector<GeneratorName> conformal_names() {
  std::vector<GeneratorName> names;
  for (int mu = 0; mu < 4; ++mu) names.push_back(GeneratorName::translation(mu));
  for (int mu = 0; mu < 4; ++mu)
    for (int lambda = mu + 1; lambda < 4; ++lambda) names.push_back(GeneratorName::lorentz(mu, lambda));
  for (int mu = 0; mu < 4; ++mu) names.push_back(GeneratorName::acceleration(mu));
  names.push_back(GeneratorName::dilatation());
  return names;
}

std::vector<GeneratorName> lorentz_gauge_admissible(const StructureConstants& sc) {
  std::vector<GeneratorName> names;
  for (int mu = 0; mu < 4; ++mu) names.push_back(GeneratorName::translation(mu));
  for (int mu = 0; mu < 4; ++mu)
    for (int lambda = mu + 1; lambda < 4; ++lambda) names.push_back(GeneratorName::lorentz(mu, lambda));
  names.push_back(GeneratorName::dilatation());
  const int n = sc.dimension();
  for (int direction = 0; direction < n; ++direction) {
    std::vector<Expr> chi(static_cast<std::size_t>(n));
    chi[static_cast<std::size_t>(direction)] = Expr(1);
    names.push_back(GeneratorName::gauge(std::move(chi)));
  }
  return names;
}

Generator general_solution(const StructureConstants& sc) {
  std::vector<Expr> chi;
  for (int dd = 0; dd < sc.dimension(); ++dd) {
    chi.push_back(Expr::from_atom(formal("chi", {}, {static_cast<std::uint8_t>(dd)}, false)));
  }
  return general_solution(sc, chi);
}

Generator general_solution(const StructureConstants& sc, const std::vector<Expr>& chi) {
  if (static_cast<int>(chi.size()) != sc.dimension()) {
    throw DomainError("gauge profile count " + std::to_string(chi.size()) +
                      " does not match algebra dimension " + std::to_string(sc.dimension()));
  }
  std::array<Expr, 4> a, c;
  std::array<std::array<Expr, 4>, 4> b{};
  for (int mu = 0; mu < 4; ++mu) {
    a[static_cast<std::size_t>(mu)] = Expr::from_atom(param("a" + std::to_string(mu)));
    c[static_cast<std::size_t>(mu)] = Expr::from_atom(param("c" + std::to_string(mu)));
    for (int lambda = mu + 1; lambda < 4; ++lambda) {
      const Expr entry =
          Expr::from_atom(param("b" + std::to_string(mu) + std::to_string(lambda)));
      b[static_cast<std::size_t>(mu)][static_cast<std::size_t>(lambda)] = entry;
      b[static_cast<std::size_t>(lambda)][static_cast<std::size_t>(mu)] = -entry;
    }
  }
  return closed_form(sc, a, b, c, Expr::from_atom(param("d")), chi);
}

Expr apply_vector_field(const Generator& g, const Expr& f) {
  if (f.jet_order() > 0) {
    throw DomainError("vector fields act on functions of coordinates and bare fields only");
  }
  Expr out;
  for (int mu = 0; mu < 4; ++mu) out += g.h[static_cast<std::size_t>(mu)] * partial(f, coordinate(mu));
  for (int a = 0; a < g.n_fields(); ++a) {
    for (int kappa = 0; kappa < 4; ++kappa) {
      out += g.phi_at(a, kappa) * partial(f, field(a, kappa));
    }
  }
  return out;
}

Generator commutator(const Generator& g1, const Generator& g2) {
  if (g1.n_fields() != g2.n_fields()) throw DomainError("commutator of mismatched generators");
  Generator out;
  for (int mu = 0; mu < 4; ++mu) {
    out.h.push_back(apply_vector_field(g1, g2.h[static_cast<std::size_t>(mu)]) -
                    apply_vector_field(g2, g1.h[static_cast<std::size_t>(mu)]));
  }
  for (int a = 0; a < g1.n_fields(); ++a) {
    for (int kappa = 0; kappa < 4; ++kappa) {
      out.phi.push_back(apply_vector_field(g1, g2.phi_at(a, kappa)) -
                        apply_vector_field(g2, g1.phi_at(a, kappa)));
    }
  }
  return out;
}

}  // namespace ymsym
