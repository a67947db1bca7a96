#include "ymsym/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace ymsym {

namespace {

std::string term_string(MonoId m, const Scalar& c) {
  const bool unit = c.is_one() || (-c).is_one();
  if (m == mono_one()) {
    // Magnitude including a bare "1".
    Scalar mag = c.sign() < 0 ? -c : c;
    return mag.str();
  }
  if (unit) return mono_name(m);
  Scalar mag = c.sign() < 0 ? -c : c;
  return mag.str() + "*" + mono_name(m);
}

} // namespace

std::string to_string(const Expr& e) {
  if (e.is_zero()) return "0";
  std::vector<Expr::Term> terms(e.terms().begin(), e.terms().end());
  std::sort(terms.begin(), terms.end(), [](const Expr::Term& a, const Expr::Term& b) {
    return mono_structurally_less(a.m, b.m);
  });
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const bool neg = terms[i].c.sign() < 0;
    if (i == 0) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    out += term_string(terms[i].m, terms[i].c);
  }
  return out;
}

namespace {

class Parser {
public:
  Parser(const std::string& text, const ParseOptions& opts) : m_text(text), m_opts(opts) {}

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (!eof()) fail("unexpected trailing input");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, m_line, col()); }

  int col() const { return static_cast<int>(m_pos - m_line_start) + 1; }
  bool eof() const { return m_pos >= m_text.size(); }
  char peek() const { return eof() ? '\0' : m_text[m_pos]; }

  char advance() {
    char c = m_text[m_pos++];
    if (c == '\n') {
      ++m_line;
      m_line_start = m_pos;
    }
    return c;
  }

  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  bool accept(char c) {
    skip_ws();
    if (peek() == c) {
      advance();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string digits() {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer");
    std::string s;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) s += advance();
    return s;
  }

  long integer() {
    const std::string s = digits();
    if (s.size() > 6) fail("index literal too large");
    return std::stol(s);
  }

  int spacetime_index() {
    long v = integer();
    if (v > 3) fail("spacetime index out of range 0..3");
    return static_cast<int>(v);
  }

  int algebra_index() {
    long v = integer();
    if (m_opts.n_fields > 0 && v >= m_opts.n_fields)
      fail("algebra index " + std::to_string(v) + " out of range 0.." +
           std::to_string(m_opts.n_fields - 1));
    if (v > 0xFFFF) fail("algebra index out of range");
    return static_cast<int>(v);
  }

  std::string ident() {
    skip_ws();
    if (!std::isalpha(static_cast<unsigned char>(peek())) && peek() != '_')
      fail("expected a name");
    std::string s;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
      s += advance();
    return s;
  }

  Expr expr() {
    bool neg = accept('-');
    Expr e = term();
    if (neg) e = -e;
    for (;;) {
      if (accept('+')) {
        e += term();
      } else if (accept('-')) {
        e -= term();
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = factor();
    while (accept('*')) e *= factor();
    return e;
  }

  Expr factor() {
    skip_ws();
    if (eof()) fail("unexpected end of input");
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return rational();
    if (c == '(') {
      advance();
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return symbol();
    fail(std::string("unexpected character '") + c + "'");
  }

  Expr rational() {
    std::string lit = digits();
    if (accept('/')) lit += "/" + digits();
    try {
      return Expr(Scalar::from_string(lit));
    } catch (const DomainError& err) {
      fail(err.what());
    }
  }

  Expr symbol() {
    skip_ws();
    const int sline = m_line, scol = col();
    const std::string name = ident();
    if (name.size() == 2 && name[0] == 'x' && name[1] >= '0' && name[1] <= '3')
      return Expr::from_atom(coordinate(name[1] - '0'));
    if (name == "A") {
      expect('[');
      int a = algebra_index();
      expect(',');
      int nu = spacetime_index();
      expect(']');
      return Expr::from_atom(field(a, nu));
    }
    if (name == "d") {
      expect('(');
      Expr inner = expr();
      expect(',');
      int lambda = spacetime_index();
      expect(')');
      if (m_opts.n_fields == 0) {
        // Without an algebra the chain rule over fields cannot be expanded.
        for (AtomId id : inner.atoms())
          if (is_formal(id) && atom(id).field_dependent)
            fail("d(...) over a field-dependent function needs an algebra context");
      }
      return total_derivative(inner, lambda,
                              {m_opts.n_fields, m_opts.truncation_order});
    }
    if (name == "p") {
      expect('(');
      std::string pname = ident();
      expect(')');
      return Expr::from_atom(param(pname));
    }
    if (name == "H" || name == "Phi" || name == "chi") return formal_symbol(name);
    throw ParseError("unknown symbol '" + name + "'", sline, scol);
  }

  Expr formal_symbol(const std::string& name) {
    expect('[');
    AtomId id;
    if (name == "H") {
      int k = spacetime_index();
      id = formal("H", {static_cast<std::uint8_t>(k)}, {}, true);
    } else if (name == "Phi") {
      int a = algebra_index();
      expect(',');
      int k = spacetime_index();
      id = formal("Phi", {static_cast<std::uint8_t>(k)}, {static_cast<std::uint8_t>(a)}, true);
    } else { // chi
      int a = algebra_index();
      id = formal("chi", {}, {static_cast<std::uint8_t>(a)}, false);
    }
    while (accept(';')) {
      const std::string kind = ident();
      expect(':');
      if (kind == "x") {
        do {
          id = formal_dx(id, spacetime_index());
        } while (accept(','));
      } else if (kind == "A") {
        if (name == "chi") fail("chi depends on the coordinates only");
        do {
          expect('(');
          int a = algebra_index();
          expect(',');
          int nu = spacetime_index();
          expect(')');
          id = formal_dA(id, a, nu);
        } while (accept(','));
      } else {
        fail("unknown derivative decoration '" + kind + "'");
      }
    }
    expect(']');
    return Expr::from_atom(id);
  }

  const std::string& m_text;
  ParseOptions m_opts;
  std::size_t m_pos = 0;
  std::size_t m_line_start = 0;
  int m_line = 1;
};

} // namespace

Expr parse_expr(const std::string& text, const ParseOptions& opts) {
  return Parser(text, opts).parse();
}

} // namespace ymsym
