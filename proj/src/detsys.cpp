#include "ymsym/detsys.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>
#include <utility>

#include "ymsym/grammar.hpp"
#include "ymsym/linalg.hpp"

namespace ymsym {

namespace {

// Run body(0..n-1), optionally on a small worker pool. The atom and monomial
// registries are thread-safe, so bodies may intern freely.
void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  threads = std::min(std::max(threads, 1), n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= n) break;
        try {
          body(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

// Shape of the derivative-jet part of a collected monomial.
std::string classify_key(MonoId key) {
  int first = 0, second = 0;
  for (const auto v : mono(key).vars) {
    const int order = jet_order(packed_atom(v));
    if (order == 1) first += packed_exp(v);
    else second += packed_exp(v);
  }
  if (second == 1 && first == 1) return "dA-ddA";
  if (second == 1 && first == 0) return "ddA";
  if (second == 0 && first == 3) return "dA-dA-dA";
  if (second == 0 && first == 2) return "dA-dA";
  if (second == 0 && first == 1) return "dA";
  if (second == 0 && first == 0) return "none";
  throw Error("unexpected jet-monomial class: " + mono_name(key));
}

// first-derivative gauge rule: the eliminated component's derivative equals
// minus the sum of the others.
Expr gauge_first_order_rhs(int a, int comp) {
  Expr rhs;
  for (int mu = 0; mu < 4; ++mu) {
    if (mu == comp) continue;
    rhs -= Expr::from_atom(jet(a, mu, {static_cast<std::uint8_t>(mu)}));
  }
  return rhs;
}

Expr gauge_second_order_rhs(int a, int comp, int lambda) {
  Expr rhs;
  for (int mu = 0; mu < 4; ++mu) {
    if (mu == comp) continue;
    rhs -= Expr::from_atom(
        jet(a, mu, {static_cast<std::uint8_t>(lambda), static_cast<std::uint8_t>(mu)}));
  }
  return rhs;
}

// All x-power products of total degree <= max_deg, in a fixed exponent order.
std::vector<MonoId> x_monomials(int max_deg) {
  std::vector<MonoId> out;
  for (int e0 = 0; e0 <= max_deg; ++e0)
    for (int e1 = 0; e0 + e1 <= max_deg; ++e1)
      for (int e2 = 0; e0 + e1 + e2 <= max_deg; ++e2)
        for (int e3 = 0; e0 + e1 + e2 + e3 <= max_deg; ++e3) {
          MonoId m = mono_one();
          const int exps[4] = {e0, e1, e2, e3};
          for (int mu = 0; mu < 4; ++mu) {
            if (exps[mu] > 0) m = mono_mul(m, mono_of_atom(coordinate(mu), exps[mu]));
          }
          out.push_back(m);
        }
  return out;
}

std::string exponent_suffix(MonoId m) {
  std::string s;
  for (int mu = 0; mu < 4; ++mu) s += std::to_string(mono_exponent(m, coordinate(mu)));
  return s;
}

// Normalize a determining-equation row so the structurally smallest term has
// coefficient 1, making the scale independent of interning order.
Expr normalize_leading(const Expr& e) {
  if (e.is_zero()) return e;
  const auto& terms = e.terms();
  const auto lead =
      std::min_element(terms.begin(), terms.end(), [](const Expr::Term& a, const Expr::Term& b) {
        return mono_structurally_less(a.m, b.m);
      });
  return e * lead->c.inverse();
}

}  // namespace

OnShellRules on_shell_rules(const YMSystem& sys, const GaugeCondition* gauge,
                            bool alternate_elimination) {
  OnShellRules rules;
  rules.passes.push_back(sys.solved_forms);
  if (gauge) {
    const int n = sys.n_fields();
    const int comp = alternate_elimination ? 3 : 0;
    std::map<AtomId, Expr> second_pass;
    for (int a = 0; a < n; ++a) {
      for (int lambda = 0; lambda < 4; ++lambda) {
        const AtomId target =
            jet(a, comp, {static_cast<std::uint8_t>(lambda), static_cast<std::uint8_t>(comp)});
        second_pass.emplace(target, gauge_second_order_rhs(a, comp, lambda));
      }
    }
    rules.passes.push_back(std::move(second_pass));
    std::map<AtomId, Expr> first_pass;
    for (int a = 0; a < n; ++a) {
      first_pass.emplace(jet(a, comp, {static_cast<std::uint8_t>(comp)}),
                         gauge_first_order_rhs(a, comp));
    }
    rules.passes.push_back(std::move(first_pass));
  }
  // The passes must be triangular: nothing a pass substitutes in may mention
  // an atom eliminated by it or any earlier pass, or reduction would not
  // terminate in one sweep.
  std::set<AtomId> banned;
  for (const auto& pass : rules.passes) {
    for (const auto& [target, rhs] : pass) {
      (void)rhs;
      if (!banned.insert(target).second) {
        throw Error("reduction passes eliminate " + atom_name(target) + " twice");
      }
      rules.eliminated.push_back(target);
    }
  }
  std::set<AtomId> seen;
  for (const auto& pass : rules.passes) {
    for (const auto& [target, rhs] : pass) seen.insert(target);
    for (const auto& [target, rhs] : pass) {
      (void)target;
      for (const AtomId id : rhs.atoms()) {
        if (seen.count(id)) {
          throw Error("reduction pass reintroduces eliminated atom " + atom_name(id));
        }
      }
    }
  }
  return rules;
}

Expr reduce_on_shell(const Expr& e, const OnShellRules& rules) {
  Expr out = e;
  for (const auto& pass : rules.passes) out = substitute_all(out, pass);
  return out;
}

Expr reduce_on_shell(const Expr& e, const YMSystem& sys, const GaugeCondition* gauge,
                     bool alternate_elimination) {
  return reduce_on_shell(e, on_shell_rules(sys, gauge, alternate_elimination));
}

std::vector<Expr> symmetry_condition(const YMSystem& sys, const Generator& g,
                                     const ProlongationCoefficients& pc) {
  std::vector<Expr> out;
  out.reserve(sys.equations.size());
  for (const auto& eq : sys.equations) out.push_back(apply_pr2(g, pc, eq));
  return out;
}

std::vector<Expr> symmetry_condition(const YMSystem& sys, const Generator& g) {
  return symmetry_condition(sys, g, prolong_coefficients(g));
}

VerifyReport verify_generator(const YMSystem& sys, const Generator& g,
                              const GaugeCondition* gauge) {
  const auto pc = prolong_coefficients(g);
  const auto rules = on_shell_rules(sys, gauge);
  VerifyReport report;
  report.pass = true;
  report.residuals.reserve(sys.equations.size());
  for (const auto& eq : sys.equations) {
    Expr residual = reduce_on_shell(apply_pr2(g, pc, eq), rules);
    if (!residual.is_zero()) {
      report.pass = false;
      if (report.witness.empty()) report.witness = mono_name(residual.terms().front().m);
    }
    report.residuals.push_back(std::move(residual));
  }
  return report;
}

DeterminingSystem extract_determining(const YMSystem& sys, const GaugeCondition* gauge,
                                      bool alternate_elimination, int threads) {
  const int n = sys.n_fields();
  const auto g = make_formal_generator(n);
  const auto pc = prolong_coefficients(g);
  const auto rules = on_shell_rules(sys, gauge, alternate_elimination);
  std::vector<Expr> sources = sys.equations;
  if (gauge) sources.insert(sources.end(), gauge->equations.begin(), gauge->equations.end());
  std::vector<std::vector<std::pair<MonoId, Expr>>> collected(sources.size());
  parallel_for(static_cast<int>(sources.size()), threads, [&](int i) {
    const Expr reduced = reduce_on_shell(apply_pr2(g, pc, sources[static_cast<std::size_t>(i)]), rules);
    collected[static_cast<std::size_t>(i)] =
        collect(reduced, [](AtomId id) { return is_derivative_jet(id); });
  });
  DeterminingSystem ds;
  struct Pending {
    Expr lhs;
    MonoId key;
  };
  std::map<std::string, Pending> unique;
  for (const auto& rows : collected) {
    for (const auto& [key, coefficient] : rows) {
      if (coefficient.is_zero()) continue;
      Expr lhs = normalize_leading(coefficient);
      std::string signature = to_string(lhs);
      auto [it, inserted] = unique.emplace(std::move(signature), Pending{std::move(lhs), key});
      // the same condition can surface under several monomial shapes; label it
      // by the structurally smallest one
      if (!inserted && mono_structurally_less(key, it->second.key)) it->second.key = key;
    }
  }
  for (auto& [signature, p] : unique) {
    ds.equations.push_back({std::move(p.lhs), classify_key(p.key)});
  }
  return ds;
}

std::map<AtomId, Expr> formal_substitution(const Generator& g, int max_order) {
  validate_generator(g);
  const int n = g.n_fields();
  std::vector<AtomId> directions;
  for (int mu = 0; mu < 4; ++mu) directions.push_back(coordinate(mu));
  for (int a = 0; a < n; ++a)
    for (int nu = 0; nu < 4; ++nu) directions.push_back(field(a, nu));
  const auto derive_atom = [](AtomId base, AtomId direction) {
    const AtomData& d = atom(direction);
    if (d.kind == AtomKind::Coordinate) return formal_dx(base, d.mu);
    return formal_dA(base, d.a, d.mu);
  };
  std::map<AtomId, Expr> out;
  const std::function<void(AtomId, const Expr&, int, std::size_t)> expand =
      [&](AtomId id, const Expr& value, int order, std::size_t from) {
        out.emplace(id, value);
        if (order == max_order) return;
        for (std::size_t i = from; i < directions.size(); ++i) {
          expand(derive_atom(id, directions[i]), partial(value, directions[i]), order + 1, i);
        }
      };
  for (int mu = 0; mu < 4; ++mu) {
    expand(formal("H", {static_cast<std::uint8_t>(mu)}, {}, true), g.h[static_cast<std::size_t>(mu)],
           0, 0);
  }
  for (int a = 0; a < n; ++a) {
    for (int kappa = 0; kappa < 4; ++kappa) {
      expand(formal("Phi", {static_cast<std::uint8_t>(kappa)}, {static_cast<std::uint8_t>(a)}, true),
             g.phi_at(a, kappa), 0, 0);
    }
  }
  return out;
}

AnsatzProblem make_ansatz(const StructureConstants& sc, const AnsatzSpec& spec) {
  if (spec.deg_h < 0 || spec.deg_phi_linear < 0 || spec.deg_phi_inhom < 0 || spec.deg_h > 9 ||
      spec.deg_phi_linear > 9 || spec.deg_phi_inhom > 9) {
    throw DomainError("ansatz degrees must lie in 0..9");
  }
  const int n = sc.dimension();
  const auto h_monos = x_monomials(spec.deg_h);
  const auto linear_monos = x_monomials(spec.deg_phi_linear);
  const auto inhom_monos = x_monomials(spec.deg_phi_inhom);
  const long unknowns = 4L * static_cast<long>(h_monos.size()) +
                        16L * static_cast<long>(n) * n * static_cast<long>(linear_monos.size()) +
                        4L * n * static_cast<long>(inhom_monos.size());
  if (unknowns > spec.unknown_cap) {
    throw DomainError("ansatz has " + std::to_string(unknowns) +
                      " unknowns, exceeding the cap of " + std::to_string(spec.unknown_cap));
  }
  AnsatzProblem problem;
  const auto fresh = [&problem](const std::string& name) {
    const AtomId p = param(name);
    problem.params.push_back(p);
    return p;
  };
  for (int mu = 0; mu < 4; ++mu) {
    Expr component;
    for (const MonoId m : h_monos) {
      const AtomId p = fresh("qh" + std::to_string(mu) + "_" + exponent_suffix(m));
      component += Expr::from_mono(mono_mul(m, mono_of_atom(p)));
    }
    problem.generator.h.push_back(std::move(component));
  }
  for (int a = 0; a < n; ++a) {
    for (int kappa = 0; kappa < 4; ++kappa) {
      Expr component;
      const std::string head = std::to_string(a) + "_" + std::to_string(kappa);
      for (int b = 0; b < n; ++b) {
        for (int lambda = 0; lambda < 4; ++lambda) {
          for (const MonoId m : linear_monos) {
            const AtomId p = fresh("ql" + head + "_" + std::to_string(b) + "_" +
                                   std::to_string(lambda) + "_" + exponent_suffix(m));
            component += Expr::from_mono(
                mono_mul(mono_mul(m, mono_of_atom(field(b, lambda))), mono_of_atom(p)));
          }
        }
      }
      for (const MonoId m : inhom_monos) {
        const AtomId p = fresh("qf" + head + "_" + exponent_suffix(m));
        component += Expr::from_mono(mono_mul(m, mono_of_atom(p)));
      }
      problem.generator.phi.push_back(std::move(component));
    }
  }
  return problem;
}

SolutionSpace solve_ansatz(const YMSystem& sys, const AnsatzSpec& spec,
                           const GaugeCondition* gauge, int threads) {
  const AnsatzProblem problem = make_ansatz(sys.sc, spec);
  const auto pc = prolong_coefficients(problem.generator);
  const auto rules = on_shell_rules(sys, gauge);
  std::vector<Expr> sources = sys.equations;
  if (gauge) sources.insert(sources.end(), gauge->equations.begin(), gauge->equations.end());
  std::map<AtomId, int> column_of;
  for (std::size_t i = 0; i < problem.params.size(); ++i) {
    column_of.emplace(problem.params[i], static_cast<int>(i));
  }
  using Row = SparseEliminator::Row;
  std::vector<std::vector<Row>> row_sets(sources.size());
  parallel_for(static_cast<int>(sources.size()), threads, [&](int i) {
    const Expr reduced =
        reduce_on_shell(apply_pr2(problem.generator, pc, sources[static_cast<std::size_t>(i)]), rules);
    const auto grouped = collect(reduced, [](AtomId id) { return !is_param(id); });
    auto& rows = row_sets[static_cast<std::size_t>(i)];
    for (const auto& [key, coefficient] : grouped) {
      (void)key;
      if (coefficient.is_zero()) continue;
      Row row;
      row.reserve(coefficient.terms().size());
      for (const auto& term : coefficient.terms()) {
        const auto& vars = mono(term.m).vars;
        if (vars.size() != 1 || packed_exp(vars[0]) != 1 || !is_param(packed_atom(vars[0]))) {
          throw Error("determining rows must be linear in the ansatz parameters");
        }
        row.emplace_back(column_of.at(packed_atom(vars[0])), term.c);
      }
      std::sort(row.begin(), row.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      const Scalar lead = row.front().second;
      if (!lead.is_one()) {
        for (auto& entry : row) entry.second /= lead;
      }
      rows.push_back(std::move(row));
    }
  });
  std::set<Row> unique_rows;
  for (auto& rows : row_sets) {
    for (auto& row : rows) unique_rows.insert(std::move(row));
  }
  std::vector<Row> ordered(std::make_move_iterator(unique_rows.begin()),
                           std::make_move_iterator(unique_rows.end()));
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const Row& a, const Row& b) { return a.size() < b.size(); });
  SparseEliminator eliminator;
  for (auto& row : ordered) eliminator.add_row(std::move(row));
  std::vector<int> all_columns(problem.params.size());
  std::iota(all_columns.begin(), all_columns.end(), 0);
  const auto kernel = eliminator.nullspace(all_columns);
  SolutionSpace space;
  space.dimension = static_cast<int>(kernel.size());
  space.basis.resize(kernel.size());
  parallel_for(static_cast<int>(kernel.size()), threads, [&](int i) {
    std::map<AtomId, Expr> instantiation;
    for (std::size_t j = 0; j < problem.params.size(); ++j) {
      instantiation.emplace(problem.params[j], Expr(kernel[static_cast<std::size_t>(i)][j]));
    }
    Generator g;
    for (const auto& component : problem.generator.h) {
      g.h.push_back(substitute_all(component, instantiation));
    }
    for (const auto& component : problem.generator.phi) {
      g.phi.push_back(substitute_all(component, instantiation));
    }
    const auto report = verify_generator(sys, g, gauge);
    if (!report.pass) {
      throw Error("solver produced a generator with nonzero residual at " + report.witness);
    }
    if (gauge) {
      for (const auto& residual : gauge_constraint_residual(sys, g)) {
        if (!residual.is_zero()) {
          throw Error("solver produced a generator that violates the gauge constraint");
        }
      }
    }
    space.basis[static_cast<std::size_t>(i)] = std::move(g);
  });
  return space;
}

std::vector<Expr> gauge_constraint_residual(const YMSystem& sys, const Generator& g) {
  const GaugeCondition gauge = build_gauge(sys.sc);
  const auto pc = prolong_coefficients(g);
  const auto rules = on_shell_rules(sys, &gauge);
  std::vector<Expr> out;
  out.reserve(gauge.equations.size());
  for (const auto& eq : gauge.equations) {
    out.push_back(reduce_on_shell(apply_pr2(g, pc, eq), rules));
  }
  return out;
}

}  // namespace ymsym
