#pragma once

// Which ansatz degrees the abcd-system admits, and a machine check of the
// series-termination argument behind it.
//
// verify_termination builds the symbolic coefficient system for a degree-n
// ansatz in both components and runs a forced-vanishing chain: whenever an
// equation h[p,q] factors as (monomial) * (something that cannot vanish),
// one of the unknown factors of the monomial must vanish. A lone unknown
// factor is forced to zero; several unknown factors (a product such as
// j4*k3) split the chain, and every branch is followed to its end. If the
// chain stalls above the target degrees, an unknown appearing linearly with
// a nonzero coefficient is eliminated and the search resumes. The chain
// succeeds when every branch terminates at or below the degrees predicted by
// classify_ansatz; the classification is an upper bound, which particular
// parameter values (e.g. c = b = 0) can sharpen.

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cnoidal/cn_algebra.hpp"
#include "cnoidal/errors.hpp"
#include "cnoidal/parameters.hpp"
#include "cnoidal/polynomial.hpp"

namespace cnoidal {

enum class ShapeKind { GenericQuadratic, SemiTrivialEtaConstant, QuarticEtaQuadraticW, TrivialOnly };

struct AnsatzShape {
  ShapeKind kind = ShapeKind::GenericQuadratic;
  int max_eta_degree = 2;
  int max_w_degree = 2;

  friend bool operator==(const AnsatzShape&, const AnsatzShape&) = default;
};

inline std::string_view shape_name(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::GenericQuadratic: return "GenericQuadratic";
    case ShapeKind::SemiTrivialEtaConstant: return "SemiTrivialEtaConstant";
    case ShapeKind::QuarticEtaQuadraticW: return "QuarticEtaQuadraticW";
    case ShapeKind::TrivialOnly: return "TrivialOnly";
  }
  return "?";
}

namespace detail {

inline AnsatzShape shape_from_zero_pattern(bool a_zero, bool b_zero, bool c_zero, bool d_zero) {
  if (!c_zero) {
    if (a_zero && b_zero) return {ShapeKind::SemiTrivialEtaConstant, 0, 2};
    return {ShapeKind::GenericQuadratic, 2, 2};
  }
  if (b_zero && d_zero) return {ShapeKind::TrivialOnly, 0, 0};
  return {ShapeKind::QuarticEtaQuadraticW, 4, 2};
}

}  // namespace detail

/// Exact classification of the admissible ansatz degrees.
inline AnsatzShape classify_ansatz(const ParameterSet& p) {
  return detail::shape_from_zero_pattern(p.a == 0, p.b == 0, p.c == 0, p.d == 0);
}

/// a, b, c, d each either a fixed rational or symbolic. Symbolic entries are
/// treated as generic, i.e. nonzero.
struct ParameterPattern {
  std::optional<Rational> a, b, c, d;

  static ParameterPattern from(const ParameterSet& p) { return {p.a, p.b, p.c, p.d}; }
  /// a, b, c, d all symbolic (c != 0 case).
  static ParameterPattern symbolic() { return {}; }
  /// a, b, d symbolic with c = 0.
  static ParameterPattern c_zero() {
    ParameterPattern p;
    p.c = Rational(0);
    return p;
  }

  AnsatzShape shape() const {
    auto is_zero = [](const std::optional<Rational>& v) { return v && *v == 0; };
    return detail::shape_from_zero_pattern(is_zero(a), is_zero(b), is_zero(c), is_zero(d));
  }

  EquationCoefficients coefficients() const {
    EquationCoefficients co;
    if (a) co.a = RationalPoly(*a);
    if (b) co.b = RationalPoly(*b);
    if (c) co.c = RationalPoly(*c);
    if (d) co.d = RationalPoly(*d);
    return co;
  }

  /// Variables assumed nonzero by the chain: lambda, m, sigma and every
  /// symbolic parameter.
  std::set<Var> nonzero() const {
    std::set<Var> out{vars::lambda, vars::m, vars::sigma};
    if (!a) out.insert(vars::a);
    if (!b) out.insert(vars::b);
    if (!c) out.insert(vars::c);
    if (!d) out.insert(vars::d);
    return out;
  }

  std::string describe() const {
    auto one = [](const char* name, const std::optional<Rational>& v) {
      return std::string(name) + "=" + (v ? v->str() : std::string("symbolic"));
    };
    return one("a", a) + ", " + one("b", b) + ", " + one("c", c) + ", " + one("d", d);
  }
};

/// Orders rho of eta', w', eta''', w''', (eta w)', w w' at given ansatz
/// degrees: the highest cn power after sn/dn elimination.
using RhoTable = std::array<int, 6>;
inline constexpr std::array<const char*, 6> kRhoLabels = {"eta'", "w'", "eta'''", "w'''", "(eta w)'", "w w'"};

/// rho from the derivative rules: d/dxi lowers the cn power by one, d^3/dxi^3
/// raises it by one, products add degrees. A constant component gives -1.
inline RhoTable expected_rho(int n_eta, int n_w) {
  auto first = [](int n) { return n >= 1 ? n - 1 : -1; };
  auto third = [](int n) { return n >= 1 ? n + 1 : -1; };
  const int product = n_eta + n_w >= 1 ? n_eta + n_w - 1 : -1;
  const int square = n_w >= 1 ? 2 * n_w - 1 : -1;
  return {first(n_eta), first(n_w), third(n_eta), third(n_w), product, square};
}

/// rho measured on the symbolic ansatz of the given degrees.
inline RhoTable measured_rho(int n_eta, int n_w) {
  const ResidualTerms t = residual_terms(ansatz(n_eta, Component::Eta), ansatz(n_w, Component::W));
  auto rho = [](const CnExpression& e) { return e.is_zero() ? -1 : e.rho(); };
  return {rho(t.eta_1), rho(t.w_1), rho(t.eta_3), rho(t.w_3), rho(t.eta_w_1), rho(t.w_w_1)};
}

struct ChainStep {
  /// "force" (single unknown factor), "branch" (one choice of a product) or
  /// "eliminate" (unknown solved from a linear equation; polynomial holds
  /// the substitution).
  std::string kind;
  Var variable;
  std::string equation;
  std::string polynomial;
  /// Degrees of (eta, w) after this step and the rho table there.
  int eta_degree = 0;
  int w_degree = 0;
  RhoTable rho_measured{};
  RhoTable rho_expected{};
};

struct ChainBranch {
  std::vector<ChainStep> steps;
  int eta_degree = 0;
  int w_degree = 0;
};

struct DegreeCheck {
  int n = 0;
  std::vector<ChainBranch> branches;
  int stabilized_eta = 0;
  int stabilized_w = 0;
  /// Stabilized degrees equal min(n, classified degree) in both components.
  bool sharp = false;
  bool rho_consistent = true;
};

struct TerminationReport {
  ParameterPattern pattern;
  AnsatzShape shape;
  int n_max = 0;
  std::vector<DegreeCheck> degrees;
  std::vector<std::string> notes;
  bool passed = false;
};

namespace detail {

struct ChainState {
  HSystem system;
  std::set<Var> zero;
  /// Unknowns eliminated as u = expression in the remaining unknowns.
  std::vector<std::pair<Var, RationalPoly>> eliminated;
  std::vector<ChainStep> steps;
};

inline bool is_unknown(Var v) {
  return is_j(v) || is_k(v);
}

inline int top_degree(const std::set<Var>& zero, bool eta, int n) {
  for (int r = n; r >= 1; --r) {
    if (!zero.count(eta ? vars::j(r) : vars::k(r))) return r;
  }
  return 0;
}

inline bool only_nonzero_vars(const RationalPoly::Monomial& mono, const std::set<Var>& nonzero) {
  for (std::uint8_t i = 0; i < kNumVars; ++i) {
    if (mono[i] != 0 && !nonzero.count(Var{i})) return false;
  }
  return true;
}

/// True when the polynomial cannot vanish for real variables: either a
/// single term in nonzero quantities, or a sum of even-power terms with
/// coefficients of one sign, one of which involves nonzero quantities only
/// (e.g. 4*lambda^2*m^2 + 3*k1^2).
inline bool definitely_nonzero(const RationalPoly& poly, const std::set<Var>& nonzero) {
  if (poly.is_zero()) return false;
  if (poly.size() == 1) return only_nonzero_vars(poly.terms().begin()->first, nonzero);
  const bool positive = poly.terms().begin()->second > 0;
  bool anchored = false;
  for (const auto& [mono, coef] : poly.terms()) {
    if ((coef > 0) != positive) return false;
    for (auto e : mono) {
      if (e % 2 != 0) return false;
    }
    anchored = anchored || only_nonzero_vars(mono, nonzero);
  }
  return anchored;
}

/// When poly = g * cofactor with g the monomial gcd and the cofactor
/// definitely nonzero, returns the unknown factors of g (which must contain
/// a vanishing one). Empty optional if the equation does not split that way.
inline std::optional<std::vector<Var>> forced_factors(const RationalPoly& poly, const std::set<Var>& nonzero) {
  const auto g = poly.monomial_gcd();
  if (!definitely_nonzero(poly.divide_monomial(g), nonzero)) return std::nullopt;
  std::vector<Var> out;
  for (std::uint8_t i = 0; i < kNumVars; ++i) {
    if (g[i] != 0 && !nonzero.count(Var{i})) out.push_back(Var{i});
  }
  return out;
}

struct Candidate {
  const HEquation* equation = nullptr;
  std::vector<Var> unknowns;
};

// Order in which equations are used: highest cn power first, the second
// equation before the first, matching the order in which leading
// coefficients appear as the degrees drop.
inline bool earlier(const HEquation& x, const HEquation& y) {
  if (x.power != y.power) return x.power > y.power;
  return x.equation > y.equation;
}

inline ChainStep make_step(const char* kind, Var v, const HEquation& eq, const std::set<Var>& zero, int n) {
  ChainStep step;
  step.kind = kind;
  step.variable = v;
  step.equation = eq.label();
  step.polynomial = eq.poly.to_string();
  step.eta_degree = top_degree(zero, true, n);
  step.w_degree = top_degree(zero, false, n);
  step.rho_measured = measured_rho(step.eta_degree, step.w_degree);
  step.rho_expected = expected_rho(step.eta_degree, step.w_degree);
  return step;
}

inline void set_zero(ChainState& state, Var v) {
  state.system = state.system.substitute(v, Rational(0));
  state.zero.insert(v);
  for (auto& [u, expr] : state.eliminated) expr = expr.substitute(v, Rational(0));
  // An eliminated unknown whose expression has collapsed to zero is zero too.
  for (auto& [u, expr] : state.eliminated) {
    if (expr.is_zero()) state.zero.insert(u);
  }
}

/// u := -rest / coefficient, for an equation linear in u whose coefficient
/// is a nonzero constant times a monomial in nonzero quantities dividing rest.
inline std::optional<std::pair<Var, RationalPoly>> elimination(const HEquation& eq, const std::set<Var>& nonzero) {
  for (Var u : eq.poly.variables()) {
    if (!is_unknown(u) || eq.poly.degree_in(u) != 1) continue;
    const RationalPoly coef = eq.poly.coefficient_of(u, 1);
    if (coef.size() != 1 || !only_nonzero_vars(coef.terms().begin()->first, nonzero)) continue;
    const RationalPoly rest = eq.poly.coefficient_of(u, 0);
    const auto& [mono, value] = *coef.terms().begin();
    try {
      return std::make_pair(u, RationalPoly(Rational(-1) / value) * rest.divide_monomial(mono));
    } catch (const UsageError&) {
      continue;  // coefficient monomial does not divide the rest
    }
  }
  return std::nullopt;
}

inline void run_chain(ChainState state, int n, const AnsatzShape& target, const std::set<Var>& nonzero,
                      std::vector<ChainBranch>& out, int depth = 0) {
  if (depth > 4 * kNumVars) throw ChainBrokenError("forced-vanishing chain did not terminate");
  for (;;) {
    std::optional<Candidate> single;
    std::optional<Candidate> product;
    for (const auto& eq : state.system.equations) {
      if (eq.poly.is_zero()) continue;
      auto unknowns = forced_factors(eq.poly, nonzero);
      if (!unknowns) continue;
      // A definitely nonzero equation: this branch is inconsistent and
      // contributes no solutions.
      if (unknowns->empty()) return;
      auto& slot = unknowns->size() == 1 ? single : product;
      if (!slot || earlier(eq, *slot->equation)) slot = Candidate{&eq, *unknowns};
    }

    if (single) {
      const Var v = single->unknowns.front();
      const HEquation eq = *single->equation;
      if (!is_unknown(v)) {
        throw ChainBrokenError(eq.label() + " = " + eq.poly.to_string() + " requires " + var_name(v) +
                               " = 0, a parameter case split the chain does not handle");
      }
      set_zero(state, v);
      state.steps.push_back(make_step("force", v, eq, state.zero, n));
      continue;
    }
    if (product) {
      const HEquation eq = *product->equation;
      for (Var v : product->unknowns) {
        if (!is_unknown(v)) {
          throw ChainBrokenError(eq.label() + " = " + eq.poly.to_string() + " requires " + var_name(v) +
                                 " = 0, a parameter case split the chain does not handle");
        }
        ChainState next = state;
        set_zero(next, v);
        next.steps.push_back(make_step("branch", v, eq, next.zero, n));
        run_chain(std::move(next), n, target, nonzero, out, depth + 1);
      }
      return;
    }

    // Still above the target degrees: eliminate an unknown that appears
    // linearly, which may expose new definite equations.
    const bool above = top_degree(state.zero, true, n) > target.max_eta_degree ||
                       top_degree(state.zero, false, n) > target.max_w_degree;
    if (!above) break;
    const HEquation* chosen = nullptr;
    std::optional<std::pair<Var, RationalPoly>> elim;
    for (const auto& eq : state.system.equations) {
      if (eq.poly.is_zero()) continue;
      if (chosen && !earlier(eq, *chosen)) continue;
      if (auto e = elimination(eq, nonzero)) {
        chosen = &eq;
        elim = std::move(e);
      }
    }
    if (!elim) break;
    const HEquation eq = *chosen;
    state.system = state.system.substitute(elim->first, elim->second);
    state.eliminated.push_back(*elim);
    ChainStep step = make_step("eliminate", elim->first, eq, state.zero, n);
    step.polynomial = var_name(elim->first) + " = " + elim->second.to_string();
    state.steps.push_back(std::move(step));
  }
  ChainBranch branch;
  branch.steps = std::move(state.steps);
  branch.eta_degree = top_degree(state.zero, true, n);
  branch.w_degree = top_degree(state.zero, false, n);
  out.push_back(std::move(branch));
}

}  // namespace detail

/// Runs the chain for every n in 3..n_max.
inline TerminationReport verify_termination(const ParameterPattern& pattern, int n_max) {
  if (n_max < 3 || n_max > kMaxAnsatzDegree) {
    throw UsageError("verify_termination: n_max must lie in [3, " + std::to_string(kMaxAnsatzDegree) + "]");
  }
  TerminationReport report;
  report.pattern = pattern;
  report.shape = pattern.shape();
  report.n_max = n_max;
  if (pattern.c && *pattern.c == 0) {
    report.notes.push_back(
        "c = 0 reading: the sub-case b^2 + d^2 = 0 is checked with c = 0; a statement of it with c != 0 "
        "would contradict the case assumption");
  }
  const std::set<Var> nonzero = pattern.nonzero();
  const EquationCoefficients coeffs = pattern.coefficients();

  bool all_ok = true;
  for (int n = 3; n <= n_max; ++n) {
    DegreeCheck check;
    check.n = n;
    detail::ChainState start;
    start.system = build_h_system(n, n, coeffs);
    detail::run_chain(std::move(start), n, report.shape, nonzero, check.branches);
    if (check.branches.empty()) throw ChainBrokenError("every branch was inconsistent at n = " + std::to_string(n));

    for (const auto& branch : check.branches) {
      if (branch.eta_degree > report.shape.max_eta_degree || branch.w_degree > report.shape.max_w_degree) {
        std::string msg = "chain stalled at degrees (" + std::to_string(branch.eta_degree) + ", " +
                          std::to_string(branch.w_degree) + ") for n = " + std::to_string(n) + " (" +
                          pattern.describe() + ") after:";
        for (const auto& s : branch.steps) {
          msg += " " + (s.kind == "eliminate" ? s.polynomial : var_name(s.variable) + " = 0") + " [" + s.equation + "]";
        }
        throw ChainBrokenError(msg);
      }
      check.stabilized_eta = std::max(check.stabilized_eta, branch.eta_degree);
      check.stabilized_w = std::max(check.stabilized_w, branch.w_degree);
      for (const auto& s : branch.steps) {
        if (s.rho_measured != s.rho_expected) check.rho_consistent = false;
      }
    }
    check.sharp = check.stabilized_eta == std::min(n, report.shape.max_eta_degree) &&
                  check.stabilized_w == std::min(n, report.shape.max_w_degree);
    all_ok = all_ok && check.rho_consistent;
    report.degrees.push_back(std::move(check));
  }
  report.passed = all_ok;
  return report;
}

inline TerminationReport verify_termination(const ParameterSet& p, int n_max) {
  return verify_termination(ParameterPattern::from(p), n_max);
}

}  // namespace cnoidal
