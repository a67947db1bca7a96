#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ymsym/error.hpp"

namespace ymsym {

/// Kind tags order the four atom families for canonical printing:
/// coordinates < jets < parameters < formal functions.
enum class AtomKind : std::uint8_t { Coordinate = 0, Jet = 1, Param = 2, Formal = 3 };

/// One derivative taken with respect to a field component A_a^nu.
struct FieldIndex {
  std::uint16_t a;  // algebra index
  std::uint8_t nu;  // spacetime component
  friend bool operator==(const FieldIndex&, const FieldIndex&) = default;
  friend auto operator<=>(const FieldIndex&, const FieldIndex&) = default;
};

/// Structural description of an atom (an indeterminate of the polynomial ring):
///   Coordinate  x^mu                             — mu
///   Jet         d_l1 ... d_lk A_a^nu             — a, nu, sorted derivs l1<=...<=lk
///   Param       named free constant              — name
///   Formal      unknown function with derivative — name, index decorations,
///               history                            sorted x-derivatives and
///                                                  field-derivatives
/// Formal atoms model functions of the coordinates and (when field_dependent)
/// of the undifferentiated fields; their entries record partial derivatives
/// taken so far. Derivative multisets are kept sorted since partials commute.
struct AtomData {
  AtomKind kind = AtomKind::Coordinate;
  std::uint8_t mu = 0;                  // Coordinate: index; Jet: field component nu
  std::uint16_t a = 0;                  // Jet: algebra index
  std::vector<std::uint8_t> derivs;     // Jet: sorted spacetime derivative multiset
  std::string name;                     // Param / Formal
  std::vector<std::uint8_t> upper;      // Formal: raised index decorations
  std::vector<std::uint8_t> lower;      // Formal: lowered index decorations
  std::vector<std::uint8_t> xderivs;    // Formal: sorted d/dx history
  std::vector<FieldIndex> aderivs;      // Formal: sorted d/dA history
  bool field_dependent = false;         // Formal: function of (x, A) vs x only

  friend bool operator==(const AtomData&, const AtomData&) = default;
};

/// Total order used for all printed/serialized output: kind rank first, then
/// the fields of each kind lexicographically. Deterministic across runs.
bool structurally_less(const AtomData& lhs, const AtomData& rhs);

/// Interned handle; the registry below owns the structural data.
using AtomId = std::int32_t;

/// Intern an atom, returning its process-wide id (idempotent, thread-safe).
AtomId intern(const AtomData& data);

/// Look up interned structure. The reference stays valid forever.
const AtomData& atom(AtomId id);

/// Convenience constructors. All validate index ranges.
AtomId coordinate(int mu);
AtomId field(int a, int nu);                              // A_a^nu, no derivatives
AtomId jet(int a, int nu, std::vector<std::uint8_t> derivs);
AtomId jet_extend(AtomId base, int lambda);               // append one derivative
AtomId param(const std::string& name);
AtomId formal(const std::string& name, std::vector<std::uint8_t> upper,
              std::vector<std::uint8_t> lower, bool field_dependent);
AtomId formal_dx(AtomId base, int mu);                    // add one x-derivative
AtomId formal_dA(AtomId base, int a, int nu);             // add one A-derivative

/// Queries used by classifiers throughout the engine.
inline bool is_coordinate(AtomId id) { return atom(id).kind == AtomKind::Coordinate; }
inline bool is_jet(AtomId id) { return atom(id).kind == AtomKind::Jet; }
inline bool is_param(AtomId id) { return atom(id).kind == AtomKind::Param; }
inline bool is_formal(AtomId id) { return atom(id).kind == AtomKind::Formal; }
inline int jet_order(AtomId id) { return static_cast<int>(atom(id).derivs.size()); }
inline bool is_field(AtomId id) { return is_jet(id) && atom(id).derivs.empty(); }
inline bool is_derivative_jet(AtomId id) { return is_jet(id) && !atom(id).derivs.empty(); }

/// Canonical display form, e.g. "x0", "d(A[1,2],0)", "p(c1)", "H[0;x:1]".
std::string atom_name(AtomId id);

} // namespace ymsym
