#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ymsym/detsys.hpp"
#include "ymsym/liealgebra.hpp"
#include "ymsym/prolongation.hpp"

namespace ymsym {

/// One machine-readable result document. The six field names are stable so
/// automation can diff reports across runs; see schemas/report.schema.json.
struct Report {
  std::string mode;
  std::string algebra;
  bool has_ansatz = false;  // renders "ansatz": null when false
  AnsatzSpec ansatz;
  int dimension = 0;
  bool residual_zero = false;
  std::vector<std::pair<std::string, std::string>> equations;  // (class, canonical expr)
};

/// Deterministic JSON rendering: sorted keys, canonical expression strings,
/// two-space indentation, trailing newline.
std::string render_json(const Report& r);

/// A generator read from `key = expr` lines.
struct GeneratorFile {
  std::string algebra;  // empty when the file names none
  Generator generator;
};

/// Parse a generator file: blank lines and `#` comments are skipped; entries
/// are `algebra = <name>`, `H[mu] = <expr>` and `Phi[a,kappa] = <expr>` in the
/// shared expression grammar; unlisted components are zero. The algebra line
/// may appear anywhere; when absent, fallback_algebra supplies the field
/// count. Malformed input throws ParseError with file line information.
GeneratorFile parse_generator_file(const std::string& text, const std::string& fallback_algebra);

/// Inverse of parse_generator_file: every component printed explicitly, in a
/// fixed order, re-parseable to an equal generator.
std::string print_generator_file(const Generator& g, const std::string& algebra);

/// Resolve a command-line generator argument: one of the catalog names
/// ("translation:0", "lorentz:0,1", "acceleration:2", "dilatation",
/// "gauge:@<profile file>") or a path to a generator file. Gauge profile
/// files hold `chi[d] = <expr>` lines with coordinate-only expressions.
Generator resolve_generator_spec(const std::string& spec, const StructureConstants& sc,
                                 const std::string& algebra);

}  // namespace ymsym
