#include "ymsym/liealgebra.hpp"

#include <sstream>

#include "ymsym/atom.hpp"
#include "ymsym/error.hpp"

namespace ymsym {

namespace {

void check_range(int n, int a, int b, int d) {
  if (a < 0 || a >= n || b < 0 || b >= n || d < 0 || d >= n) {
    throw DomainError("structure constant index out of range for dimension " + std::to_string(n));
  }
}

}  // namespace

StructureConstants StructureConstants::from_entries(int n, const std::vector<std::pair<Key, Scalar>>& entries) {
  if (n <= 0) throw DomainError("dimension must be positive");
  StructureConstants sc(n);
  for (const auto& [key, value] : entries) {
    const auto [a, b, d] = key;
    check_range(n, a, b, d);
    if (value.is_zero()) continue;
    if (!sc.m_c.emplace(key, value).second) {
      throw DomainError("duplicate structure constant entry (" + std::to_string(a) + "," + std::to_string(b) +
                        "," + std::to_string(d) + ")");
    }
  }
  return sc;
}

Scalar StructureConstants::at(int a, int b, int d) const {
  check_range(m_n, a, b, d);
  auto it = m_c.find({a, b, d});
  return it == m_c.end() ? Scalar(0) : it->second;
}

StructureConstants StructureConstants::scaled(const Scalar& s) const {
  StructureConstants out(m_n);
  if (s.is_zero()) return out;
  for (const auto& [key, value] : m_c) out.m_c.emplace(key, value * s);
  return out;
}

void StructureConstants::set_orientations(int a, int b, int d, const Scalar& v) {
  if (a == b || b == d || a == d) {
    throw DomainError("repeated index in structure constant triple (" + std::to_string(a) + "," +
                      std::to_string(b) + "," + std::to_string(d) + ")");
  }
  const std::array<std::pair<Key, Scalar>, 6> orientations{{
      {{a, b, d}, v},
      {{b, d, a}, v},
      {{d, a, b}, v},
      {{b, a, d}, -v},
      {{a, d, b}, -v},
      {{d, b, a}, -v},
  }};
  for (const auto& [key, value] : orientations) {
    auto [it, inserted] = m_c.emplace(key, value);
    if (!inserted && it->second != value) {
      const auto [x, y, z] = key;
      throw DomainError("conflicting structure constant assignment at (" + std::to_string(x) + "," +
                        std::to_string(y) + "," + std::to_string(z) + ")");
    }
  }
}

StructureConstants build_su2() {
  StructureConstants sc(3);
  sc.set_orientations(0, 1, 2, Scalar(1));
  return sc;
}

StructureConstants build_direct_sum(const StructureConstants& l, const StructureConstants& r) {
  StructureConstants sc(l.dimension() + r.dimension());
  for (const auto& [key, value] : l.entries()) sc.m_c.emplace(key, value);
  const int off = l.dimension();
  for (const auto& [key, value] : r.entries()) {
    const auto [a, b, d] = key;
    sc.m_c.emplace(StructureConstants::Key{a + off, b + off, d + off}, value);
  }
  return sc;
}

StructureConstants algebra_by_name(const std::string& name) {
  if (name == "su2") return build_su2();
  if (name == "su2+su2") return build_direct_sum(build_su2(), build_su2());
  throw DomainError("unknown algebra '" + name + "' (expected \"su2\" or \"su2+su2\")");
}

StructureConstants parse_structure_constants(int n, const std::string& text) {
  if (n <= 0) throw DomainError("dimension must be positive");
  StructureConstants sc(n);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    int a = 0, b = 0, d = 0;
    std::string value;
    if (!(fields >> a)) continue;  // blank or comment-only line
    if (!(fields >> b >> d >> value)) {
      throw DomainError("line " + std::to_string(lineno) + ": expected `a b d value`");
    }
    std::string extra;
    if (fields >> extra) {
      throw DomainError("line " + std::to_string(lineno) + ": trailing content '" + extra + "'");
    }
    check_range(n, a, b, d);
    Scalar v;
    try {
      v = Scalar::from_string(value);
    } catch (const Error&) {
      throw DomainError("line " + std::to_string(lineno) + ": bad rational '" + value + "'");
    }
    if (v.is_zero()) continue;
    try {
      sc.set_orientations(a, b, d, v);
    } catch (const DomainError& e) {
      throw DomainError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return sc;
}

JacobiReport jacobi_check(const StructureConstants& sc) {
  const int n = sc.dimension();
  JacobiReport report;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int d = 0; d < n; ++d) {
        const Scalar v = sc.at(a, b, d);
        if (v != -sc.at(b, a, d)) {
          report.ok = false;
          report.kind = "antisymmetry";
          report.witness = {a, b, d, -1};
          report.message = "swapping the first two indices at (" + std::to_string(a) + "," + std::to_string(b) +
                           "," + std::to_string(d) + ") does not flip the sign";
          return report;
        }
        if (v != -sc.at(a, d, b)) {
          report.ok = false;
          report.kind = "antisymmetry";
          report.witness = {a, b, d, -1};
          report.message = "swapping the last two indices at (" + std::to_string(a) + "," + std::to_string(b) +
                           "," + std::to_string(d) + ") does not flip the sign";
          return report;
        }
      }
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
          Scalar sum(0);
          for (int e = 0; e < n; ++e) {
            sum += sc.at(a, b, e) * sc.at(e, c, d);
            sum += sc.at(c, b, e) * sc.at(a, e, d);
            sum += sc.at(d, b, e) * sc.at(a, c, e);
          }
          if (!sum.is_zero()) {
            report.ok = false;
            report.kind = "jacobi";
            report.witness = {a, b, c, d};
            report.message = "closure sum at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                             std::to_string(c) + "," + std::to_string(d) + ") equals " + sum.str();
            return report;
          }
        }
      }
    }
  }
  return report;
}

Scalar normalization_factor(const StructureConstants& sc) {
  const int n = sc.dimension();
  Scalar kappa(0);
  for (int c = 0; c < n; ++c) {
    for (int d = 0; d < n; ++d) kappa += sc.at(0, c, d) * sc.at(0, c, d);
  }
  if (kappa.is_zero()) throw DomainError("not normalizable by scaling");
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      Scalar sum(0);
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) sum += sc.at(a, c, d) * sc.at(b, c, d);
      }
      if (sum != (a == b ? kappa : Scalar(0))) throw DomainError("not normalizable by scaling");
    }
  }
  return kappa;
}

namespace {

/// Residual of the mixing-matrix condition at row (a, b, n) for a symbolic h.
Expr mixing_residual(const StructureConstants& sc, const std::vector<std::vector<Expr>>& h, const Expr& source,
                     int a, int b, int n) {
  Expr out = Expr(sc.at(a, b, n)) * source;
  for (int d = 0; d < sc.dimension(); ++d) {
    out += Expr(sc.at(a, b, d)) * h[d][n];
    out -= Expr(sc.at(d, b, n)) * h[a][d];
    out += Expr(sc.at(a, d, n)) * h[d][b];
  }
  return out;
}

}  // namespace

B1SolutionSpace b1_solution_space(const StructureConstants& sc) {
  const int n = sc.dimension();
  B1SolutionSpace out;

  // Homogeneous operator on n x n matrices, rows stacked over (a, b, n2),
  // columns enumerating matrix entries h_(r, s) as r * n + s.
  RationalMatrix op(n * n * n, n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int n2 = 0; n2 < n; ++n2) {
        const int row = (a * n + b) * n + n2;
        for (int d = 0; d < n; ++d) {
          op.at(row, d * n + n2) += sc.at(a, b, d);
          op.at(row, a * n + d) -= sc.at(d, b, n2);
          op.at(row, d * n + b) += sc.at(a, d, n2);
        }
      }
    }
  }

  const auto kernel = nullspace(op);
  out.nullity = static_cast<int>(kernel.size());
  out.antisymmetric = true;
  for (const auto& vec : kernel) {
    RationalMatrix m(n, n);
    for (int r = 0; r < n; ++r) {
      for (int s = 0; s < n; ++s) m.at(r, s) = vec[r * n + s];
    }
    for (int r = 0; r < n && out.antisymmetric; ++r) {
      for (int s = 0; s < n; ++s) {
        if (m.at(r, s) != -m.at(s, r)) {
          out.antisymmetric = false;
          break;
        }
      }
    }
    out.basis.push_back(std::move(m));
  }

  // The adjoint matrices (B_l)_(d, n2) = C_(d, n2, l) must each solve the
  // homogeneous condition and together span the whole nullspace.
  RationalMatrix joint(out.nullity + n, n * n);
  for (int k = 0; k < out.nullity; ++k) {
    for (int c = 0; c < n * n; ++c) joint.at(k, c) = out.basis[k].at(c / n, c % n);
  }
  bool adjoints_solve = true;
  for (int l = 0; l < n; ++l) {
    std::vector<Scalar> vec(static_cast<std::size_t>(n) * n);
    for (int d = 0; d < n; ++d) {
      for (int n2 = 0; n2 < n; ++n2) vec[d * n + n2] = sc.at(d, n2, l);
    }
    for (int row = 0; row < op.rows() && adjoints_solve; ++row) {
      Scalar dot(0);
      for (int c = 0; c < n * n; ++c) dot += op.at(row, c) * vec[c];
      if (!dot.is_zero()) adjoints_solve = false;
    }
    for (int c = 0; c < n * n; ++c) joint.at(out.nullity + l, c) = vec[c];
  }
  RationalMatrix adjoint_only(n, n * n);
  for (int l = 0; l < n; ++l) {
    for (int c = 0; c < n * n; ++c) adjoint_only.at(l, c) = joint.at(out.nullity + l, c);
  }
  out.adjoint_span =
      adjoints_solve && rref(adjoint_only).rank == out.nullity && rref(joint).rank == out.nullity;

  // Particular part: h = -G * identity must absorb the scalar source.
  const Expr g = Expr::from_atom(param("G"));
  std::vector<std::vector<Expr>> h(n, std::vector<Expr>(n, Expr(0)));
  for (int d = 0; d < n; ++d) h[d][d] = -g;
  out.particular_ok = true;
  for (int a = 0; a < n && out.particular_ok; ++a) {
    for (int b = 0; b < n && out.particular_ok; ++b) {
      for (int n2 = 0; n2 < n; ++n2) {
        if (!mixing_residual(sc, h, g, a, b, n2).is_zero()) {
          out.particular_ok = false;
          break;
        }
      }
    }
  }

  // Full membership: adding an adjoint combination keeps the condition exact.
  std::vector<Expr> chi;
  chi.reserve(n);
  for (int l = 0; l < n; ++l) chi.push_back(Expr::from_atom(param("chi" + std::to_string(l))));
  for (int r = 0; r < n; ++r) {
    for (int s = 0; s < n; ++s) {
      for (int l = 0; l < n; ++l) h[r][s] += Expr(sc.at(r, s, l)) * chi[l];
    }
  }
  out.membership_ok = true;
  for (int a = 0; a < n && out.membership_ok; ++a) {
    for (int b = 0; b < n && out.membership_ok; ++b) {
      for (int n2 = 0; n2 < n; ++n2) {
        if (!mixing_residual(sc, h, g, a, b, n2).is_zero()) {
          out.membership_ok = false;
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace ymsym
