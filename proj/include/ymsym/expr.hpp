#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ymsym/atom.hpp"
#include "ymsym/scalar.hpp"

namespace ymsym {

/// Interned handle to a power product of atoms. Id 0 is the empty monomial.
using MonoId = std::int32_t;

/// A packed (atom, exponent) pair: (AtomId << 8) | exponent, exponent in 1..255.
using PackedVar = std::uint64_t;

inline AtomId packed_atom(PackedVar v) { return static_cast<AtomId>(v >> 8); }
inline int packed_exp(PackedVar v) { return static_cast<int>(v & 0xFF); }
inline PackedVar pack_var(AtomId id, int exp) {
  return (static_cast<std::uint64_t>(id) << 8) | static_cast<std::uint64_t>(exp);
}

/// Structural data of a monomial plus cached classification bits.
struct MonoData {
  std::vector<PackedVar> vars;  // sorted by atom id, exponents >= 1
  std::int32_t degree = 0;      // total degree
  std::uint8_t max_jet_order = 0;
  bool has_derivative_jet = false;  // any jet with at least one derivative
  bool has_field = false;           // any bare field atom A_a^nu
  bool has_formal = false;          // any formal-function atom
  std::int32_t formal_degree = 0;   // summed exponents of formal atoms
};

MonoId mono_intern(std::vector<PackedVar> vars);
const MonoData& mono(MonoId id);
MonoId mono_one();
MonoId mono_of_atom(AtomId id, int exp = 1);
MonoId mono_mul(MonoId lhs, MonoId rhs);
/// Remove one power of `id` (which must divide the monomial).
MonoId mono_div_once(MonoId m, AtomId id);
/// Remove every power of `id`.
MonoId mono_without(MonoId m, AtomId id);
int mono_exponent(MonoId m, AtomId id);
std::string mono_name(MonoId id);  // factors joined by '*', "1" for the empty monomial

/// Compare two monomials by the structural atom order (for printing).
bool mono_structurally_less(MonoId lhs, MonoId rhs);

/// Exact multivariate polynomial over atoms with rational coefficients.
/// Terms are stored sorted by monomial id with no zero coefficients, so
/// equal polynomials have identical storage and equality is a plain compare.
class Expr {
public:
  struct Term {
    MonoId m;
    Scalar c;
    friend bool operator==(const Term&, const Term&) = default;
  };

  Expr() = default;
  /* implicit */ Expr(const Scalar& s);
  /* implicit */ Expr(int n) : Expr(Scalar(n)) {}

  static Expr from_atom(AtomId id, int exp = 1);
  static Expr from_mono(MonoId m, Scalar c = Scalar(1));
  /// Normalizing factory: sorts, folds duplicates, drops zeros.
  static Expr from_terms(std::vector<Term> terms);

  bool is_zero() const { return m_terms.empty(); }
  const std::vector<Term>& terms() const { return m_terms; }
  std::size_t size() const { return m_terms.size(); }

  /// Coefficient of an exact monomial (zero if absent).
  Scalar coefficient(MonoId m) const;

  /// Highest jet order over all terms (0 for jet-free expressions).
  int jet_order() const;

  /// Sorted unique atom ids appearing in the polynomial.
  std::vector<AtomId> atoms() const;

  Expr operator-() const;
  Expr& operator+=(const Expr& o);
  Expr& operator-=(const Expr& o);
  Expr& operator*=(const Expr& o);
  Expr& operator*=(const Scalar& s);

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Scalar& s) { Expr r = a; r *= s; return r; }
  friend Expr operator*(const Scalar& s, const Expr& a) { return a * s; }
  friend bool operator==(const Expr& a, const Expr& b) { return a.m_terms == b.m_terms; }
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

private:
  std::vector<Term> m_terms;
};

/// k-th power, k >= 0.
Expr pow(const Expr& e, unsigned k);

/// Sum many expressions at once (cheaper than folding with +=).
Expr sum(std::vector<Expr> parts);

/// Formal jet-space partial derivative: atoms are independent variables.
/// `wrt` must be a Coordinate or Jet atom; formal-function atoms respond by
/// gaining a derivative entry (x-entry for coordinates, A-entry for bare
/// fields when they depend on the fields). Differentiating by a Param or a
/// Formal atom is rejected.
Expr partial(const Expr& e, AtomId wrt);

/// Context for total derivatives: how many fields the chain rule ranges over
/// and the jet order past which raising a jet is an error.
struct DerivCtx {
  int n_fields = 0;
  int truncation_order = 3;
};

/// Total derivative D_lambda: d/dx^lambda plus the chain over all jets
/// (raising each one order) and over formal functions of (x, A).
Expr total_derivative(const Expr& e, int lambda, const DerivCtx& ctx);

/// Replace every occurrence of `target` (at any power) by `replacement`.
Expr substitute(const Expr& e, AtomId target, const Expr& replacement);

/// Simultaneous substitution of several atoms in one pass. Replacements are
/// not re-substituted into each other (single-step parallel rewrite).
Expr substitute_all(const Expr& e, const std::map<AtomId, Expr>& replacements);

/// Split e = sum key * value where keys hold exactly the atoms satisfying the
/// classifier and values hold none. Returned sorted by key monomial id.
std::vector<std::pair<MonoId, Expr>> collect(const Expr& e,
                                             const std::function<bool(AtomId)>& classifier);

/// Exact evaluation; throws EvalError naming the first atom with no value.
Scalar evaluate(const Expr& e, const std::map<AtomId, Scalar>& assignment);

} // namespace ymsym
