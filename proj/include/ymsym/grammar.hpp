#pragma once

#include <string>

#include "ymsym/expr.hpp"

namespace ymsym {

/// Options for the text parser. n_fields > 0 enables range checking of
/// algebra indices and sizes the chain rule used by d(...) wrappers.
struct ParseOptions {
  int n_fields = 0;
  int truncation_order = 3;
};

/// Canonical, deterministic rendering: terms ordered by the structural atom
/// order (coordinates < jets < parameters < formal functions), factors joined
/// with '*', powers written as repeated factors, rationals as n or n/d.
/// The output re-parses to an equal expression.
std::string to_string(const Expr& e);

/// Parse the expression grammar:
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := rational | 'x'digit | 'A[' int ',' int ']' | 'd(' expr ',' digit ')'
///           | 'p(' name ')' | formal | '(' expr ')'
///   formal := 'H[' int decorations ']' | 'Phi[' int ',' int decorations ']'
///           | 'chi[' int decorations ']'
///   decorations := (';x:' int (',' int)*)? (';A:(' int ',' int ')' (',(' int ',' int ')')*)?
/// Throws ParseError with 1-based line/column on malformed input.
Expr parse_expr(const std::string& text, const ParseOptions& opts = {});

} // namespace ymsym
