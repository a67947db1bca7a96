#include "ymsym/scalar.hpp"

#include <cctype>
#include <ostream>

namespace ymsym {

Scalar Scalar::from_string(const std::string& s) {
  // mpq_class(string) accepts "n" and "n/d" but aborts on garbage, so
  // validate digits/sign/slash ourselves first.
  if (s.empty()) throw DomainError("empty rational literal");
  std::size_t i = 0;
  if (s[i] == '-' || s[i] == '+') ++i;
  bool digits = false, slash = false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits = true;
    } else if (s[i] == '/' && !slash && digits) {
      slash = true;
      digits = false; // need digits after the slash too
    } else {
      throw DomainError("malformed rational literal '" + s + "'");
    }
  }
  if (!digits) throw DomainError("malformed rational literal '" + s + "'");
  mpq_class v(s);
  if (v.get_den() == 0) throw DomainError("rational with zero denominator");
  v.canonicalize();
  return Scalar(v);
}

Scalar Scalar::pow(unsigned k) const {
  Scalar acc(1);
  Scalar base = *this;
  while (k) {
    if (k & 1u) acc *= base;
    base *= base;
    k >>= 1u;
  }
  return acc;
}

std::size_t Scalar::hash() const {
  // Fold numerator and denominator modulo two large primes.
  const std::size_t hn = mpz_fdiv_ui(m_v.get_num_mpz_t(), 0xFFFFFFFFFFFFFFC5ull >> 1);
  const std::size_t hd = mpz_fdiv_ui(m_v.get_den_mpz_t(), 0xFFFFFFFFFFFFFF9Dull >> 1);
  std::size_t h = hn * 1099511628211ull ^ (hd + 0x9e3779b97f4a7c15ull + (hn << 6) + (hn >> 2));
  if (sgn(m_v) < 0) h = ~h;
  return h;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

} // namespace ymsym
