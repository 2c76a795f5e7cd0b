// Command-line front end: family, verify, classify, solve, reduce, limit,
// nonexistence. Exit codes: 0 ok, 2 domain or usage error, 3 solver failure.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cnoidal/cnoidal.hpp"

using namespace cnoidal;

namespace {

constexpr int kExitDomain = 2;
constexpr int kExitSolver = 3;

struct Common {
  std::string out;  // JSON path, stdout when empty
  bool check_physical = false;
};

struct ParamFlags {
  std::string a = "0", b = "0", c = "0", d = "0";

  void add(CLI::App* app) {
    app->add_option("--a", a, "a (rational, p/q allowed)");
    app->add_option("--b", b, "b");
    app->add_option("--c", c, "c");
    app->add_option("--d", d, "d");
  }
  ParameterSet parse() const {
    return {parse_rational(a), parse_rational(b), parse_rational(c), parse_rational(d), {}};
  }
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return json::parse(in);
}

void emit(const Common& common, const json& out) {
  if (common.out.empty()) {
    std::cout << out.dump(2) << '\n';
    return;
  }
  std::ofstream f(common.out);
  if (!f) throw UsageError("cannot write " + common.out);
  f << out.dump(2) << '\n';
}

void warn_physical(const Common& common, const ParameterSet& p) {
  if (!common.check_physical) return;
  try {
    const double theta = check_physical_constraint(p);
    std::cerr << "physical constraint holds, theta = " << theta << '\n';
  } catch (const ConstraintError& e) {
    std::cerr << "warning: " << e.what() << '\n';
  }
}

json run_config(const std::string& command, const std::vector<std::string>& argv, json fields) {
  fields["command"] = command;
  fields["argv"] = argv;
  return fields;
}

// "m=0.7,lambda=1" -> pins
Pins parse_pins(const std::string& text) {
  Pins pins;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("pin '" + item + "' must look like name=value");
    const Var v = parse_var(item.substr(0, eq));
    pins[v] = std::stod(item.substr(eq + 1));
  }
  return pins;
}

HSystem named_system(const std::string& name, const ParameterSet& p) {
  if (name == "coeffs1") return build_h_system(2, 2, EquationCoefficients::numeric(p.a, p.b, p.c, p.d));
  if (p.c != 0) throw DomainError("system '" + name + "' requires c = 0");
  HSystem full = build_h_system(4, 2, EquationCoefficients::numeric(p.a, p.b, p.c, p.d));
  if (name == "coeffs2") return full;
  if (name == "coeffs2red") {
    for (Var v : {vars::j(1), vars::j(3), vars::k(1)}) full = full.substitute(v, Rational(0));
    return full;
  }
  throw UsageError("unknown system '" + name + "' (coeffs1, coeffs2, coeffs2red)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jacobi-cnoidal traveling waves of the abcd-system"};
  app.require_subcommand(1);
  const std::vector<std::string> args(argv, argv + argc);

  Common common;
  ParamFlags params;
  FamilyRequest req;
  std::string family_set = "4.1.2", sign = "top", input, system = "coeffs1", pins_text, kind, pattern;
  std::string constrained = "j1";
  int periods = 2, points = 801, samples = 1024, starts = 2000, n_max = 5;
  std::uint64_t seed = 42;
  bool solitary = false;
  std::string prefix;
  double delta = 1e-3, nonexist_m = 0.7;
  std::optional<double> pinned_value;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out,-o", common.out, "write JSON here instead of stdout");
    sub->add_flag("--check-physical", common.check_physical, "warn when a+b+c+d = 1/3 etc. fails");
  };
  auto add_wave = [&](CLI::App* sub) {
    params.add(sub);
    sub->add_option("--lambda", req.lambda, "wave number");
    sub->add_option("--sigma", req.sigma, "speed");
    sub->add_option("--m", req.m, "elliptic modulus");
    sub->add_option("--sign", sign, "top or bottom (4.1.2)");
    sub->add_option("--tau1", req.branch.tau1, "+1 or -1 (4.1.1)");
    sub->add_option("--tau2", req.branch.tau2, "+1 or -1 (4.1.1)");
  };

  auto* family = app.add_subcommand("family", "evaluate a closed-form family, write JSON, CSV and SVG");
  family->add_option("--set", family_set, "4.1.1, 4.1.2, 4.2.1, 4.2.2 or 4.3")->required();
  add_wave(family);
  add_common(family);
  family->add_flag("--solitary", solitary, "take the m = 1 limit");
  family->add_option("--prefix", prefix, "write <prefix>.json, <prefix>.csv and <prefix>.svg");
  family->add_option("--periods", periods, "periods in the CSV/SVG");
  family->add_option("--points", points, "samples in the CSV/SVG");

  auto* verify = app.add_subcommand("verify", "ODE residual of a solution JSON");
  verify->add_option("--input,-i", input, "solution JSON (from family or solve)")->required();
  verify->add_option("--samples", samples, "sample count (>= 64)");
  params.add(verify);
  add_common(verify);

  auto* classify = app.add_subcommand("classify", "admissible ansatz degrees for a, b, c, d");
  params.add(classify);
  add_common(classify);

  auto* solve = app.add_subcommand("solve", "multistart Newton on a coefficient system");
  solve->add_option("--system", system, "coeffs1, coeffs2 or coeffs2red");
  solve->add_option("--pin", pins_text, "comma list name=value, e.g. m=0.7071,lambda=1,sigma=1");
  solve->add_option("--starts", starts, "number of random starts");
  solve->add_option("--seed", seed, "rng seed");
  solve->add_option("--input,-i", input, "family JSON to use as a single Newton seed");
  params.add(solve);
  add_common(solve);

  auto* reduce = app.add_subcommand("reduce", "run the degree-reduction chains");
  reduce->add_option("--pattern", pattern, "symbolic or c_zero (otherwise use --a..--d)");
  reduce->add_option("--n-max", n_max, "largest ansatz degree, 3..8");
  params.add(reduce);
  add_common(reduce);

  auto* limit = app.add_subcommand("limit", "convergence table for c_to_zero, a_to_zero or m_to_one");
  limit->add_option("--kind", kind, "c_to_zero, a_to_zero or m_to_one")->required();
  limit->add_option("--set", family_set, "source family for m_to_one");
  add_wave(limit);
  add_common(limit);

  auto* nonexist = app.add_subcommand("nonexistence", "odd-coefficient sweeps of the c = 0 system");
  nonexist->add_option("--constrained", constrained, "j1, j3 or k1");
  nonexist->add_option("--pinned-value", pinned_value, "pin the constrained coefficient instead");
  nonexist->add_option("--delta", delta, "exclusion band");
  nonexist->add_option("--m", nonexist_m, "pinned modulus");
  nonexist->add_option("--starts", starts, "starts per grid point");
  nonexist->add_option("--seed", seed, "rng seed");
  add_common(nonexist);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitDomain;
  }

  try {
    if (*family) {
      req.family = parse_family(family_set);
      req.params = params.parse();
      req.branch.pm = detail::parse_sign(sign);
      warn_physical(common, req.params);
      const SolutionParams s = solitary ? m1_limit(req) : build_family(req);
      const ResidualReport res = ode_residual(s, req.params);
      json out{{"config", run_config("family", args, {{"set", family_set},
                                                       {"params", to_json(req.params)},
                                                       {"lambda", req.lambda},
                                                       {"sigma", req.sigma},
                                                       {"m", req.m},
                                                       {"sign", sign},
                                                       {"tau1", req.branch.tau1},
                                                       {"tau2", req.branch.tau2},
                                                       {"solitary", solitary}})},
               {"params", to_json(req.params)},
               {"solution", to_json(s)},
               {"residual", to_json(res)}};
      if (!prefix.empty()) {
        const auto prof = sample_profile(s, periods, points);
        std::ofstream(prefix + ".csv", std::ios::binary) << [&] {
          std::ostringstream os;
          write_csv(os, prof);
          return os.str();
        }();
        std::ofstream svg(prefix + ".svg");
        write_svg(svg, prof, std::string(family_name(s.limit_of.value_or(s.family))) + (solitary ? " (m = 1)" : ""));
        std::ofstream(prefix + ".json") << out.dump(2) << '\n';
      }
      emit(common, out);
    } else if (*verify) {
      const json in = read_json(input);
      const json sol = in.contains("solution") ? in.at("solution") : in;
      const ParameterSet p = in.contains("params") ? parameters_from_json(in.at("params")) : params.parse();
      warn_physical(common, p);
      const SolutionParams s = solution_from_json(sol);
      const ResidualReport res = ode_residual(s, p, samples);
      std::cerr << "relative residual " << res.relative << '\n';
      emit(common, {{"config", run_config("verify", args, {{"input", input}, {"samples", samples}})},
                    {"params", to_json(p)},
                    {"residual", to_json(res)}});
    } else if (*classify) {
      const ParameterSet p = params.parse();
      warn_physical(common, p);
      const AnsatzShape shape = classify_ansatz(p);
      std::cerr << shape_name(shape.kind) << '\n';
      emit(common, {{"config", run_config("classify", args, {{"params", to_json(p)}})}, {"shape", to_json(shape)}});
    } else if (*solve) {
      ParameterSet p = params.parse();
      std::optional<SolutionParams> seed_solution;
      if (!input.empty()) {
        const json in = read_json(input);
        if (in.contains("params")) p = parameters_from_json(in.at("params"));
        seed_solution = solution_from_json(in.contains("solution") ? in.at("solution") : in);
      }
      warn_physical(common, p);
      Pins pins = parse_pins(pins_text);
      if (pins_text.empty() && seed_solution) {
        pins = {{vars::m, seed_solution->m}, {vars::lambda, seed_solution->lambda}, {vars::sigma, seed_solution->sigma}};
      }
      const HSystemNumeric sys = pin_and_square(named_system(system, p), pins);
      json config = run_config("solve", args, {{"system", system},
                                               {"pin", pins_text},
                                               {"params", to_json(p)},
                                               {"starts", starts},
                                               {"seed", seed},
                                               {"input", input}});
      if (seed_solution) {
        try {
          const Root r = solve_newton(sys, seed_from(sys, *seed_solution));
          emit(common, {{"config", config},
                        {"root", to_json(sys, r.x)},
                        {"iterations", r.diagnostics.iterations},
                        {"residual_history", r.diagnostics.residual_history},
                        {"residual_inf", r.residual_inf}});
        } catch (const SolverError& e) {
          std::cerr << "error: " << e.what() << '\n';
          return kExitSolver;
        }
      } else {
        const BranchSet set = multistart(sys, starts, SamplerRanges{}, seed);
        std::cerr << set.count(RootClass::NonTrivial) << " non-trivial, " << set.count(RootClass::SemiTrivial)
                  << " semi-trivial, " << set.count(RootClass::Trivial) << " trivial branches\n";
        emit(common, {{"config", config}, {"branch_set", to_json(set, sys)}});
      }
    } else if (*reduce) {
      ParameterPattern pat;
      if (pattern == "symbolic") {
        pat = ParameterPattern::symbolic();
      } else if (pattern == "c_zero") {
        pat = ParameterPattern::c_zero();
      } else if (pattern.empty()) {
        pat = ParameterPattern::from(params.parse());
      } else {
        throw UsageError("unknown pattern '" + pattern + "'");
      }
      const TerminationReport rep = verify_termination(pat, n_max);
      std::cerr << (rep.passed ? "passed" : "FAILED") << ": " << pat.describe() << '\n';
      emit(common, {{"config", run_config("reduce", args, {{"pattern", pat.describe()}, {"n_max", n_max}})},
                    {"report", to_json(rep)}});
    } else if (*limit) {
      req.family = parse_family(family_set);
      req.params = params.parse();
      req.branch.pm = detail::parse_sign(sign);
      const ConvergenceTable t = limit_consistency(parse_limit(kind), req);
      emit(common, {{"config", run_config("limit", args, {{"kind", kind},
                                                          {"set", family_set},
                                                          {"params", to_json(req.params)},
                                                          {"lambda", req.lambda},
                                                          {"sigma", req.sigma},
                                                          {"m", req.m},
                                                          {"sign", sign}})},
                    {"table", to_json(t)}});
    } else if (*nonexist) {
      NonexistenceOptions o;
      o.constrained = parse_var(constrained);
      o.pinned_value = pinned_value;
      o.delta = delta;
      o.m = nonexist_m;
      o.starts = starts;
      o.seed = seed;
      const NonexistenceReport rep = reproduce_nonexistence(o);
      if (rep.counterexamples > 0) {
        std::cerr << "COUNTEREXAMPLE: " << rep.counterexamples << " roots with sigma != 0\n";
      } else {
        std::cerr << rep.roots.size() << " roots, none with sigma != 0\n";
      }
      emit(common, {{"config", run_config("nonexistence", args, {{"constrained", constrained}, {"starts", starts}, {"seed", seed}})},
                    {"report", to_json(rep)}});
    }
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const ChainBrokenError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return 0;
}
