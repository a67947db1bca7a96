#pragma once

#include <stdexcept>
#include <string>

namespace ymsym {

/// Base class for all engine errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Misuse of an operation (bad index, differentiating by a parameter, ...).
class DomainError : public Error {
public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// A total derivative tried to raise a jet past the truncation order.
class TruncationError : public Error {
public:
  TruncationError(const std::string& atom, int order)
      : Error("truncation overflow: raising " + atom + " past jet order " + std::to_string(order)),
        m_order(order) {}
  int order() const { return m_order; }

private:
  int m_order;
};

/// Text could not be parsed; carries 1-based line/column of the offending token.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, int line, int col)
      : Error(msg + " at line " + std::to_string(line) + ", column " + std::to_string(col)),
        m_line(line), m_col(col) {}
  int line() const { return m_line; }
  int col() const { return m_col; }

private:
  int m_line;
  int m_col;
};

/// Exact evaluation hit an atom with no assigned value.
class EvalError : public Error {
public:
  explicit EvalError(const std::string& atom)
      : Error("no value assigned to atom " + atom), m_atom(atom) {}
  const std::string& atom() const { return m_atom; }

private:
  std::string m_atom;
};

} // namespace ymsym
