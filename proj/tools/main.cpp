#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ymsym/catalog.hpp"
#include "ymsym/detsys.hpp"
#include "ymsym/error.hpp"
#include "ymsym/grammar.hpp"
#include "ymsym/liealgebra.hpp"
#include "ymsym/report.hpp"
#include "ymsym/yangmills.hpp"

using namespace ymsym;

namespace {

// Reports go to --out when given, otherwise to stdout after the summary line.
void emit(const Report& r, const std::string& out_path) {
  const std::string body = render_json(r);
  if (out_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw DomainError("cannot write report to " + out_path);
  out << body;
}

int run_verify(const std::string& algebra, const std::string& spec, bool lorentz_gauge,
               const std::string& out_path) {
  const StructureConstants sc = algebra_by_name(algebra);
  const YMSystem sys = build_system(sc);
  const Generator g = resolve_generator_spec(spec, sc, algebra);

  Report r;
  r.mode = "verify";
  r.algebra = algebra;
  bool pass = true;
  if (!lorentz_gauge) {
    const VerifyReport rep = verify_generator(sys, g);
    pass = rep.pass;
    for (const Expr& res : rep.residuals) r.equations.emplace_back("residual", to_string(res));
  } else {
    const GaugeCondition gc = build_gauge(sc);
    const VerifyReport rep = verify_generator(sys, g, &gc);
    pass = rep.pass;
    for (const Expr& res : rep.residuals) r.equations.emplace_back("residual", to_string(res));
    for (const Expr& res : gauge_constraint_residual(sys, g)) {
      if (!res.is_zero()) pass = false;
      r.equations.emplace_back("gauge-residual", to_string(res));
    }
  }
  r.residual_zero = pass;
  std::cout << (pass ? "pass" : "fail") << "\n";
  emit(r, out_path);
  return pass ? 0 : 1;
}

int run_detsys(const std::string& algebra, bool lorentz_gauge, bool alternate, int threads,
               const std::string& out_path) {
  const StructureConstants sc = algebra_by_name(algebra);
  const YMSystem sys = build_system(sc);
  DeterminingSystem ds;
  if (lorentz_gauge) {
    const GaugeCondition gc = build_gauge(sc);
    ds = extract_determining(sys, &gc, alternate, threads);
  } else {
    ds = extract_determining(sys, nullptr, alternate, threads);
  }

  Report r;
  r.mode = "detsys";
  r.algebra = algebra;
  r.dimension = static_cast<int>(ds.equations.size());
  r.residual_zero = true;
  for (const DeterminingEquation& eq : ds.equations) {
    r.equations.emplace_back(eq.klass, to_string(eq.lhs));
  }
  std::cout << "equations " << r.dimension << "\n";
  emit(r, out_path);
  return 0;
}

int run_solve(const std::string& algebra, const AnsatzSpec& spec, bool lorentz_gauge, int threads,
              const std::string& out_path, const std::string& basis_dir) {
  const StructureConstants sc = algebra_by_name(algebra);
  const YMSystem sys = build_system(sc);
  SolutionSpace space;
  if (lorentz_gauge) {
    const GaugeCondition gc = build_gauge(sc);
    space = solve_ansatz(sys, spec, &gc, threads);
  } else {
    space = solve_ansatz(sys, spec, nullptr, threads);
  }

  Report r;
  r.mode = "solve";
  r.algebra = algebra;
  r.has_ansatz = true;
  r.ansatz = spec;
  r.dimension = space.dimension;
  r.residual_zero = true;  // every basis member was re-verified by the solver
  std::cout << "dimension " << space.dimension << "\n";
  emit(r, out_path);

  if (!basis_dir.empty()) {
    for (std::size_t i = 0; i < space.basis.size(); ++i) {
      std::string name = std::to_string(i);
      while (name.size() < 3) name.insert(name.begin(), '0');
      const std::string path = basis_dir + "/basis_" + name + ".gen";
      std::ofstream out(path);
      if (!out) throw DomainError("cannot write basis file " + path);
      out << print_generator_file(space.basis[i], algebra);
    }
  }
  return 0;
}

int run_check(const std::string& what, const std::string& algebra, const std::string& out_path) {
  const StructureConstants sc = algebra_by_name(algebra);
  Report r;
  r.algebra = algebra;
  bool pass = false;
  if (what == "divergence") {
    r.mode = "check-divergence";
    const DivergenceIdentity div = divergence_identity_check(build_system(sc));
    pass = div.ok;
    for (const Expr& res : div.residuals) r.equations.emplace_back("residual", to_string(res));
    std::cout << (pass ? "identity holds" : "identity violated") << "\n";
  } else if (what == "mixing") {
    r.mode = "check-mixing";
    const B1SolutionSpace space = b1_solution_space(sc);
    pass = space.antisymmetric && space.adjoint_span && space.particular_ok &&
           space.membership_ok;
    r.dimension = space.nullity;
    std::cout << "nullity " << space.nullity << "\n";
  } else {
    throw DomainError("unknown check: " + what + " (expected divergence or mixing)");
  }
  r.residual_zero = pass;
  emit(r, out_path);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact point-symmetry analysis of compact gauge field equations"};
  app.require_subcommand(1);

  std::string algebra;
  std::string generator_spec;
  std::string out_path;
  std::string basis_dir;
  std::string check_what;
  bool lorentz_gauge = false;
  bool alternate = false;
  int threads = 1;
  AnsatzSpec ansatz;

  CLI::App* verify = app.add_subcommand("verify", "check one generator against the equations");
  verify->add_option("--algebra", algebra, "algebra name (su2, su2+su2)")->required();
  verify->add_option("--generator", generator_spec, "catalog name or generator file")->required();
  verify->add_flag("--lorentz-gauge", lorentz_gauge, "restrict to the divergence-free slice");
  verify->add_option("--out", out_path, "write the JSON report here");

  CLI::App* detsys = app.add_subcommand("detsys", "extract the determining equations");
  detsys->add_option("--algebra", algebra, "algebra name")->required();
  detsys->add_flag("--lorentz-gauge", lorentz_gauge, "include the gauge constraint");
  detsys->add_flag("--alternate-elimination", alternate, "use the alternate gauge atoms");
  detsys->add_option("--threads", threads, "parallel extraction threads");
  detsys->add_option("--out", out_path, "write the JSON report here")->required();

  CLI::App* solve = app.add_subcommand("solve", "solve the equations within a polynomial ansatz");
  solve->add_option("--algebra", algebra, "algebra name")->required();
  solve->add_option("--deg-h", ansatz.deg_h, "coordinate component degree")->required();
  solve->add_option("--deg-phi", ansatz.deg_phi_linear, "field-linear coefficient degree")
      ->required();
  solve->add_option("--deg-inhom", ansatz.deg_phi_inhom, "field-free part degree")->required();
  solve->add_flag("--lorentz-gauge", lorentz_gauge, "include the gauge constraint");
  solve->add_option("--threads", threads, "parallel extraction threads");
  solve->add_option("--out", out_path, "write the JSON report here");
  solve->add_option("--basis-dir", basis_dir, "write one generator file per basis member");

  CLI::App* check = app.add_subcommand("check", "run a built-in consistency check");
  check->add_option("what", check_what, "divergence | mixing")->required();
  check->add_option("--algebra", algebra, "algebra name")->required();
  check->add_option("--out", out_path, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return run_verify(algebra, generator_spec, lorentz_gauge, out_path);
    if (detsys->parsed()) return run_detsys(algebra, lorentz_gauge, alternate, threads, out_path);
    if (solve->parsed()) {
      return run_solve(algebra, ansatz, lorentz_gauge, threads, out_path, basis_dir);
    }
    if (check->parsed()) return run_check(check_what, algebra, out_path);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
