#pragma once

#include <array>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ymsym/expr.hpp"
#include "ymsym/linalg.hpp"
#include "ymsym/scalar.hpp"

namespace ymsym {

/// Sparse totally antisymmetric structure-constant tensor of a real Lie algebra.
class StructureConstants {
public:
  using Key = std::tuple<int, int, int>;

  /// Builds a tensor from explicit components, stored exactly as given (no
  /// orientation completion). Duplicate keys or out-of-range indices throw.
  static StructureConstants from_entries(int n, const std::vector<std::pair<Key, Scalar>>& entries);

  int dimension() const { return m_n; }

  /// Component at (a, b, d); zero when absent from the sparse map.
  Scalar at(int a, int b, int d) const;

  /// All nonzero components keyed by (a, b, d), every orientation stored.
  const std::map<Key, Scalar>& entries() const { return m_c; }

  /// Same algebra with every component multiplied by s.
  StructureConstants scaled(const Scalar& s) const;

private:
  explicit StructureConstants(int n) : m_n(n) {}

  void set_orientations(int a, int b, int d, const Scalar& v);

  int m_n = 0;
  std::map<Key, Scalar> m_c;

  friend StructureConstants build_su2();
  friend StructureConstants build_direct_sum(const StructureConstants& l, const StructureConstants& r);
  friend StructureConstants parse_structure_constants(int n, const std::string& text);
};

/// The defining totally antisymmetric tensor on three generators.
StructureConstants build_su2();

/// Block-diagonal sum on disjoint index ranges.
StructureConstants build_direct_sum(const StructureConstants& l, const StructureConstants& r);

/// Looks up a shipped algebra ("su2" or "su2+su2"); unknown names throw.
StructureConstants algebra_by_name(const std::string& name);

/// Reads components from lines of the form `a b d value`, deriving all
/// antisymmetric orientations; `#` starts a comment. Conflicting or repeated
/// index assignments throw.
StructureConstants parse_structure_constants(int n, const std::string& text);

/// Outcome of the exhaustive antisymmetry and closure scan.
struct JacobiReport {
  bool ok = true;
  std::string kind;  // "antisymmetry" or "jacobi" when failed
  std::array<int, 4> witness{{-1, -1, -1, -1}};
  std::string message;
};

/// Checks total antisymmetry and the quadratic closure identity over all
/// index choices, reporting the first violation found.
JacobiReport jacobi_check(const StructureConstants& sc);

/// Returns kappa with sum_cd C_acd C_bcd = kappa * delta_ab; throws
/// DomainError("not normalizable by scaling") when the contraction is not a
/// nonzero multiple of the identity.
Scalar normalization_factor(const StructureConstants& sc);

/// Exact solution space of the linear matrix condition that couples an
/// unknown mixing matrix h to the structure constants, with a scalar source
/// on the trace part.
struct B1SolutionSpace {
  int nullity = 0;
  std::vector<RationalMatrix> basis;  // n x n matrices spanning the homogeneous solutions
  bool antisymmetric = false;         // every homogeneous solution M has M + M^T = 0
  bool adjoint_span = false;          // solutions = span of the adjoint matrices (B_l)_dn = C_dnl
  bool particular_ok = false;         // h = -G * identity absorbs the scalar source exactly
  bool membership_ok = false;         // h = -G * identity + C.chi solves the full condition
};

/// Builds the stacked linear operator on n x n matrices, computes its exact
/// nullspace, and verifies the structural claims about its solutions.
B1SolutionSpace b1_solution_space(const StructureConstants& sc);

}  // namespace ymsym
