#include "ymsym/report.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "ymsym/atom.hpp"
#include "ymsym/catalog.hpp"
#include "ymsym/error.hpp"
#include "ymsym/grammar.hpp"

namespace ymsym {

namespace {

std::string trimmed(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// One `key = value` line split at the first '=', with the value's starting
// column remembered for error reporting.
struct Entry {
  std::string key;
  std::string value;
  int line = 0;
  int value_col = 0;
};

std::vector<Entry> split_entries(const std::string& text) {
  std::vector<Entry> entries;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trimmed(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected `key = expr`", line_no, 1);
    }
    Entry e;
    e.key = trimmed(line.substr(0, eq));
    e.value = line.substr(eq + 1);
    e.line = line_no;
    e.value_col = static_cast<int>(eq) + 2;
    if (e.key.empty()) throw ParseError("empty key", line_no, 1);
    entries.push_back(std::move(e));
  }
  return entries;
}

// Keys look like "H[2]" or "Phi[0,3]"; returns false when the bracket shape
// does not match, throws when indices are out of range.
bool match_indexed(const std::string& key, const std::string& name, int arity, int line, int* i0,
                   int* i1) {
  if (key.size() < name.size() + 3 || key.compare(0, name.size(), name) != 0) return false;
  if (key[name.size()] != '[' || key.back() != ']') return false;
  const std::string inside = key.substr(name.size() + 1, key.size() - name.size() - 2);
  std::vector<int> parts;
  std::size_t pos = 0;
  while (pos <= inside.size()) {
    const std::size_t comma = inside.find(',', pos);
    const std::string piece = trimmed(inside.substr(pos, comma - pos));
    if (piece.empty() || piece.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError("bad index in `" + key + "`", line, 1);
    }
    parts.push_back(std::stoi(piece));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (static_cast<int>(parts.size()) != arity) {
    throw ParseError("`" + name + "` takes " + std::to_string(arity) + " index(es)", line, 1);
  }
  *i0 = parts[0];
  if (arity > 1) *i1 = parts[1];
  return true;
}

Expr parse_component(const Entry& e, int n_fields) {
  try {
    // raw value: the lexer skips whitespace, and columns stay exact this way
    return parse_expr(e.value, ParseOptions{n_fields, 3});
  } catch (const ParseError& inner) {
    throw ParseError("in `" + e.key + "`: " + inner.what(), e.line,
                     e.value_col + inner.col() - 1);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int parse_small_int(const std::string& piece, const std::string& spec) {
  if (piece.empty() || piece.find_first_not_of("0123456789") != std::string::npos) {
    throw DomainError("bad generator name: " + spec);
  }
  return std::stoi(piece);
}

}  // namespace

std::string render_json(const Report& r) {
  nlohmann::json j;
  j["mode"] = r.mode;
  j["algebra"] = r.algebra;
  if (r.has_ansatz) {
    j["ansatz"] = {{"deg_h", r.ansatz.deg_h},
                   {"deg_phi_linear", r.ansatz.deg_phi_linear},
                   {"deg_phi_inhom", r.ansatz.deg_phi_inhom}};
  } else {
    j["ansatz"] = nullptr;
  }
  j["dimension"] = r.dimension;
  j["residual_zero"] = r.residual_zero;
  nlohmann::json eqs = nlohmann::json::array();
  for (const auto& [klass, expr] : r.equations) {
    eqs.push_back({{"class", klass}, {"expr", expr}});
  }
  j["equations"] = eqs;
  return j.dump(2) + "\n";
}

GeneratorFile parse_generator_file(const std::string& text, const std::string& fallback_algebra) {
  const std::vector<Entry> entries = split_entries(text);

  std::string algebra = fallback_algebra;
  for (const Entry& e : entries) {
    if (e.key == "algebra") algebra = trimmed(e.value);
  }
  if (algebra.empty()) {
    throw DomainError("generator file names no algebra and none was supplied");
  }
  const StructureConstants sc = algebra_by_name(algebra);
  const int n = sc.dimension();

  GeneratorFile out;
  out.algebra = algebra;
  out.generator.h.assign(4, Expr{});
  out.generator.phi.assign(static_cast<std::size_t>(n) * 4, Expr{});
  std::vector<bool> seen(4 + static_cast<std::size_t>(n) * 4, false);

  for (const Entry& e : entries) {
    if (e.key == "algebra") continue;
    int i0 = 0;
    int i1 = 0;
    if (match_indexed(e.key, "H", 1, e.line, &i0, &i1)) {
      if (i0 < 0 || i0 > 3) throw ParseError("coordinate index out of range", e.line, 1);
      if (seen[static_cast<std::size_t>(i0)]) {
        throw ParseError("duplicate entry `" + e.key + "`", e.line, 1);
      }
      seen[static_cast<std::size_t>(i0)] = true;
      out.generator.h[static_cast<std::size_t>(i0)] = parse_component(e, n);
    } else if (match_indexed(e.key, "Phi", 2, e.line, &i0, &i1)) {
      if (i0 < 0 || i0 >= n) throw ParseError("algebra index out of range", e.line, 1);
      if (i1 < 0 || i1 > 3) throw ParseError("component index out of range", e.line, 1);
      const std::size_t slot = 4 + static_cast<std::size_t>(i0) * 4 + static_cast<std::size_t>(i1);
      if (seen[slot]) throw ParseError("duplicate entry `" + e.key + "`", e.line, 1);
      seen[slot] = true;
      out.generator.phi[slot - 4] = parse_component(e, n);
    } else {
      throw ParseError("unknown key `" + e.key + "`", e.line, 1);
    }
  }
  validate_generator(out.generator);
  return out;
}

std::string print_generator_file(const Generator& g, const std::string& algebra) {
  std::ostringstream out;
  out << "algebra = " << algebra << "\n";
  for (int mu = 0; mu < 4; ++mu) {
    out << "H[" << mu << "] = " << to_string(g.h[static_cast<std::size_t>(mu)]) << "\n";
  }
  for (int a = 0; a < g.n_fields(); ++a) {
    for (int kappa = 0; kappa < 4; ++kappa) {
      out << "Phi[" << a << "," << kappa << "] = " << to_string(g.phi_at(a, kappa)) << "\n";
    }
  }
  return out.str();
}

Generator resolve_generator_spec(const std::string& spec, const StructureConstants& sc,
                                 const std::string& algebra) {
  if (spec == "dilatation") return make(GeneratorName::dilatation(), sc);
  if (spec.rfind("translation:", 0) == 0) {
    return make(GeneratorName::translation(parse_small_int(spec.substr(12), spec)), sc);
  }
  if (spec.rfind("acceleration:", 0) == 0) {
    return make(GeneratorName::acceleration(parse_small_int(spec.substr(13), spec)), sc);
  }
  if (spec.rfind("lorentz:", 0) == 0) {
    const std::string rest = spec.substr(8);
    const std::size_t comma = rest.find(',');
    if (comma == std::string::npos) throw DomainError("bad generator name: " + spec);
    return make(GeneratorName::lorentz(parse_small_int(rest.substr(0, comma), spec),
                                       parse_small_int(rest.substr(comma + 1), spec)),
                sc);
  }
  if (spec.rfind("gauge:@", 0) == 0) {
    const std::string text = read_file(spec.substr(7));
    std::vector<Expr> chi(static_cast<std::size_t>(sc.dimension()));
    std::vector<bool> seen(chi.size(), false);
    for (const Entry& e : split_entries(text)) {
      int d = 0;
      int unused = 0;
      if (!match_indexed(e.key, "chi", 1, e.line, &d, &unused)) {
        throw ParseError("unknown key `" + e.key + "` (expected chi[d])", e.line, 1);
      }
      if (d < 0 || d >= sc.dimension()) {
        throw ParseError("algebra index out of range", e.line, 1);
      }
      if (seen[static_cast<std::size_t>(d)]) {
        throw ParseError("duplicate entry `" + e.key + "`", e.line, 1);
      }
      seen[static_cast<std::size_t>(d)] = true;
      chi[static_cast<std::size_t>(d)] = parse_component(e, sc.dimension());
    }
    return make(GeneratorName::gauge(std::move(chi)), sc);
  }
  // anything else is a generator file path
  const GeneratorFile file = parse_generator_file(read_file(spec), algebra);
  if (!algebra.empty() && file.algebra != algebra) {
    throw DomainError("generator file algebra `" + file.algebra + "` does not match `" + algebra +
                      "`");
  }
  return file.generator;
}

}  // namespace ymsym
