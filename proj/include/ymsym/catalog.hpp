#pragma once

#include <string>
#include <vector>

#include "ymsym/liealgebra.hpp"
#include "ymsym/prolongation.hpp"

namespace ymsym {

/// Name of one member of the closed-form symmetry family: a space-time
/// transformation or a gauge transformation with given x-profiles.
struct GeneratorName {
  enum class Kind { Translation, Lorentz, Acceleration, Dilatation, Gauge };

  Kind kind = Kind::Translation;
  int mu = 0;
  int lambda = 0;         // Lorentz only; mu < lambda
  std::vector<Expr> chi;  // Gauge only; one polynomial in x per algebra index

  static GeneratorName translation(int mu);
  static GeneratorName lorentz(int mu, int lambda);
  static GeneratorName acceleration(int mu);
  static GeneratorName dilatation();
  static GeneratorName gauge(std::vector<Expr> chi);
};

/// Short display form: "translation:0", "lorentz:0,1", "acceleration:2",
/// "dilatation", "gauge".
std::string display(const GeneratorName& name);

/// Concrete generator for a name over the given algebra. Gauge profiles must
/// contain coordinate atoms only and match the algebra dimension.
Generator make(const GeneratorName& name, const StructureConstants& sc);

/// The fifteen space-time names: 4 translations, 6 rotations/boosts,
/// 4 accelerations, and the dilatation.
std::vector<GeneratorName> conformal_names();

/// The names that survive the divergence-free gauge restriction: translations,
/// rotations/boosts, the dilatation, and one constant gauge profile per
/// algebra direction. Accelerations and non-constant profiles are excluded.
std::vector<GeneratorName> lorentz_gauge_admissible(const StructureConstants& sc);

/// The whole closed-form family at once, with symbolic parameters
/// (a0..a3, b01..b23, c0..c3, d) and opaque gauge profiles chi_d(x).
Generator general_solution(const StructureConstants& sc);

/// Same family with explicit polynomial gauge profiles.
Generator general_solution(const StructureConstants& sc, const std::vector<Expr>& chi);

/// g acting as a first-order derivation on a function of x and bare fields.
Expr apply_vector_field(const Generator& g, const Expr& f);

/// Commutator of two generators as vector fields on (x, A).
Generator commutator(const Generator& g1, const Generator& g2);

}  // namespace ymsym
