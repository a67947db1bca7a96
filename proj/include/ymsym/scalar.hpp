#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

#include "ymsym/error.hpp"

namespace ymsym {

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator (GMP's canonical form). All engine coefficients are
/// exact: there is no floating point anywhere in the core.
class Scalar {
public:
  Scalar() : m_v(0) {}
  Scalar(int n) : m_v(n) {}
  Scalar(long n) : m_v(n) {}

  /// n/d, canonicalized. Throws DomainError on d == 0.
  Scalar(long n, long d) {
    if (d == 0) throw DomainError("rational with zero denominator");
    m_v = mpq_class(n, d);
    m_v.canonicalize();
  }

  /// Wrap an mpq value; canonicalized defensively.
  explicit Scalar(const mpq_class& v) : m_v(v) { m_v.canonicalize(); }

  /// Parse "n" or "n/d" (optional leading '-'). Throws DomainError on junk.
  static Scalar from_string(const std::string& s);

  bool is_zero() const { return sgn(m_v) == 0; }
  bool is_one() const { return m_v == 1; }
  bool is_integer() const { return m_v.get_den() == 1; }
  int sign() const { return sgn(m_v); }

  const mpq_class& raw() const { return m_v; }

  Scalar operator-() const { return Scalar(mpq_class(-m_v), NoCanon{}); }
  Scalar& operator+=(const Scalar& o) { m_v += o.m_v; return *this; }
  Scalar& operator-=(const Scalar& o) { m_v -= o.m_v; return *this; }
  Scalar& operator*=(const Scalar& o) { m_v *= o.m_v; return *this; }
  Scalar& operator/=(const Scalar& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    m_v /= o.m_v;
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { a += b; return a; }
  friend Scalar operator-(Scalar a, const Scalar& b) { a -= b; return a; }
  friend Scalar operator*(Scalar a, const Scalar& b) { a *= b; return a; }
  friend Scalar operator/(Scalar a, const Scalar& b) { a /= b; return a; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.m_v == b.m_v; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return a.m_v != b.m_v; }
  friend bool operator<(const Scalar& a, const Scalar& b) { return a.m_v < b.m_v; }

  Scalar inverse() const {
    if (is_zero()) throw DomainError("inverse of zero");
    return Scalar(mpq_class(1) / m_v, NoCanon{});
  }

  /// k-th power, k >= 0.
  Scalar pow(unsigned k) const;

  /// "n" for integers, "n/d" otherwise; '-' sign on the numerator.
  std::string str() const { return m_v.get_str(); }

  /// Cheap structural hash (for row dedup maps; not cryptographic).
  std::size_t hash() const;

private:
  struct NoCanon {};
  Scalar(mpq_class v, NoCanon) : m_v(std::move(v)) {}
  mpq_class m_v;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

} // namespace ymsym
