#pragma once

// Numerical solution of the coefficient systems h_{p,q} = 0.
//
// pin_and_square fixes a subset of variables and compiles the remaining
// polynomials into double-precision evaluators with an exact Jacobian.
// solve_newton is a Gauss-Newton iteration (SVD pseudo-inverse, so square
// and overdetermined systems are handled alike) with backtracking on |h|^2.
// multistart runs it from random seeds and merges the roots
// deterministically.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cnoidal/cn_algebra.hpp"
#include "cnoidal/errors.hpp"
#include "cnoidal/polynomial.hpp"
#include "cnoidal/solution_families.hpp"

namespace cnoidal {

using Pins = std::map<Var, double>;

class HSystemNumeric {
 public:
  struct Term {
    double coefficient = 0.0;
    /// (position in unknowns, exponent)
    std::vector<std::pair<int, int>> factors;
  };
  struct Equation {
    std::string label;
    std::vector<Term> terms;
  };

  HSystemNumeric(std::vector<Equation> equations, std::vector<Var> unknowns, Pins pins)
      : equations_(std::move(equations)), unknowns_(std::move(unknowns)), pins_(std::move(pins)) {}

  int n_equations() const noexcept { return static_cast<int>(equations_.size()); }
  int n_unknowns() const noexcept { return static_cast<int>(unknowns_.size()); }
  const std::vector<Var>& unknowns() const noexcept { return unknowns_; }
  const std::vector<Equation>& equations() const noexcept { return equations_; }
  const Pins& pins() const noexcept { return pins_; }

  int index_of(Var v) const {
    auto it = std::find(unknowns_.begin(), unknowns_.end(), v);
    return it == unknowns_.end() ? -1 : static_cast<int>(it - unknowns_.begin());
  }

  Eigen::VectorXd evaluate(const Eigen::VectorXd& x) const {
    Eigen::VectorXd out(n_equations());
    for (int i = 0; i < n_equations(); ++i) {
      double sum = 0.0;
      for (const auto& term : equations_[i].terms) {
        double value = term.coefficient;
        for (auto [k, e] : term.factors) value *= ipow(x[k], e);
        sum += value;
      }
      out[i] = sum;
    }
    return out;
  }

  /// Exact polynomial derivative, no differencing.
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n_equations(), n_unknowns());
    for (int i = 0; i < n_equations(); ++i) {
      for (const auto& term : equations_[i].terms) {
        for (std::size_t f = 0; f < term.factors.size(); ++f) {
          const auto [k, e] = term.factors[f];
          double value = term.coefficient * e * ipow(x[k], e - 1);
          for (std::size_t g = 0; g < term.factors.size(); ++g) {
            if (g != f) value *= ipow(x[term.factors[g].first], term.factors[g].second);
          }
          jac(i, k) += value;
        }
      }
    }
    return jac;
  }

  /// Full assignment (pins plus unknowns) for promoting a root.
  Assignment assignment(const Eigen::VectorXd& x) const {
    Assignment a{};
    for (const auto& [v, value] : pins_) a[v.index] = value;
    for (int k = 0; k < n_unknowns(); ++k) a[unknowns_[k].index] = x[k];
    return a;
  }

 private:
  static double ipow(double base, int e) {
    double out = 1.0;
    for (int i = 0; i < e; ++i) out *= base;
    return out;
  }

  std::vector<Equation> equations_;
  std::vector<Var> unknowns_;
  Pins pins_;
};

namespace detail {

inline void check_pin_domain(Var v, double value) {
  if (v == vars::lambda && !(value > 0.0)) throw DomainError("pinned lambda must be positive");
  if (v == vars::m && !(value > 0.0 && value <= 1.0)) throw DomainError("pinned m must lie in (0, 1]");
  if (v == vars::sigma && value == 0.0) throw DomainError("pinned sigma must be nonzero");
}

}  // namespace detail

/// Substitutes the pins and returns the remaining system in the unpinned
/// variables. Equations that vanish identically after pinning are dropped.
inline HSystemNumeric pin_and_square(const HSystem& sys, const Pins& pins) {
  for (const auto& [v, value] : pins) detail::check_pin_domain(v, value);

  std::vector<Var> unknowns;
  std::vector<const HEquation*> kept;
  for (const auto& eq : sys.equations) {
    bool has_free = false;
    bool nonzero = false;
    for (const auto& [mono, coef] : eq.poly.terms()) {
      double value = coef.convert_to<double>();
      bool free_term = false;
      for (std::uint8_t i = 0; i < kNumVars; ++i) {
        if (mono[i] == 0) continue;
        auto pin = pins.find(Var{i});
        if (pin != pins.end()) {
          value *= std::pow(pin->second, mono[i]);
        } else {
          free_term = true;
        }
      }
      if (value != 0.0) {
        nonzero = true;
        has_free = has_free || free_term;
      }
    }
    if (!nonzero) continue;
    kept.push_back(&eq);
    for (Var v : eq.poly.variables()) {
      if (!pins.count(v) && std::find(unknowns.begin(), unknowns.end(), v) == unknowns.end()) unknowns.push_back(v);
    }
    (void)has_free;
  }
  std::sort(unknowns.begin(), unknowns.end());

  std::vector<HSystemNumeric::Equation> equations;
  for (const HEquation* eq : kept) {
    std::map<std::vector<std::pair<int, int>>, double> merged;
    for (const auto& [mono, coef] : eq->poly.terms()) {
      double value = coef.convert_to<double>();
      std::vector<std::pair<int, int>> factors;
      for (std::uint8_t i = 0; i < kNumVars; ++i) {
        if (mono[i] == 0) continue;
        auto pin = pins.find(Var{i});
        if (pin != pins.end()) {
          value *= std::pow(pin->second, mono[i]);
        } else {
          const int k = static_cast<int>(std::find(unknowns.begin(), unknowns.end(), Var{i}) - unknowns.begin());
          factors.emplace_back(k, mono[i]);
        }
      }
      if (value != 0.0) merged[factors] += value;
    }
    HSystemNumeric::Equation out{eq->label(), {}};
    for (const auto& [factors, value] : merged) {
      if (value != 0.0) out.terms.push_back({value, factors});
    }
    if (!out.terms.empty()) equations.push_back(std::move(out));
  }

  const int deficit = static_cast<int>(unknowns.size()) - static_cast<int>(equations.size());
  if (deficit > 0) {
    throw UnderdeterminedError("pinned system has " + std::to_string(equations.size()) + " equations in " +
                                   std::to_string(unknowns.size()) + " unknowns; pin " + std::to_string(deficit) +
                                   " more",
                               deficit);
  }
  return HSystemNumeric(std::move(equations), std::move(unknowns), pins);
}

struct NewtonOptions {
  double tolerance = 1e-12;
  int max_iterations = 200;
  double condition_limit = 1e14;
  /// Singular values below this fraction of the largest are truncated.
  double rank_cutoff = 1e-13;
  /// Iterates beyond this norm count as divergence.
  double blowup_norm = 1e8;
};

struct NewtonDiagnostics {
  int iterations = 0;
  /// |h|_inf before each iteration and at the end.
  std::vector<double> residual_history;
  /// Iterates, starting with the seed.
  std::vector<Eigen::VectorXd> iterates;
  double condition = 0.0;
};

struct Root {
  Eigen::VectorXd x;
  double residual_inf = 0.0;
  NewtonDiagnostics diagnostics;
};

/// Damped Gauss-Newton on |h|^2; converged when |h|_inf <= tolerance.
inline Root solve_newton(const HSystemNumeric& sys, const Eigen::VectorXd& seed, const NewtonOptions& opts = {}) {
  if (seed.size() != sys.n_unknowns()) {
    throw UsageError("solve_newton: seed has " + std::to_string(seed.size()) + " entries, system has " +
                     std::to_string(sys.n_unknowns()) + " unknowns");
  }
  Root root;
  root.x = seed;
  NewtonDiagnostics& diag = root.diagnostics;
  Eigen::VectorXd h = sys.evaluate(root.x);
  diag.iterates.push_back(root.x);
  for (int it = 0;; ++it) {
    const double inf = h.lpNorm<Eigen::Infinity>();
    diag.residual_history.push_back(inf);
    if (!std::isfinite(inf)) throw Divergence("non-finite residual", it);
    if (inf <= opts.tolerance) {
      root.residual_inf = inf;
      diag.iterations = it;
      return root;
    }
    if (it >= opts.max_iterations) throw Divergence("no convergence within iteration limit", it);

    const Eigen::MatrixXd jac = sys.jacobian(root.x);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv[0] : 0.0;
    const double smin = sv.size() ? sv[sv.size() - 1] : 0.0;
    diag.condition = smin > 0.0 ? smax / smin : INFINITY;
    if (smax == 0.0) throw SingularJacobian("Jacobian vanishes", diag.condition);
    svd.setThreshold(opts.rank_cutoff);
    const Eigen::VectorXd step = -svd.solve(h);

    const double f0 = h.squaredNorm();
    double alpha = 1.0;
    bool accepted = false;
    Eigen::VectorXd trial, h_trial;
    while (alpha >= 1e-10) {
      trial = root.x + alpha * step;
      h_trial = sys.evaluate(trial);
      const double f1 = h_trial.squaredNorm();
      if (std::isfinite(f1) && f1 <= (1.0 - 1e-4 * alpha) * f0) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      if (diag.condition > opts.condition_limit) {
        throw SingularJacobian("step collapse at an ill-conditioned Jacobian", diag.condition);
      }
      throw Divergence("line search step collapse", it);
    }
    root.x = trial;
    h = h_trial;
    diag.iterates.push_back(root.x);
    if (root.x.lpNorm<Eigen::Infinity>() > opts.blowup_norm) throw Divergence("iterate blew up", it + 1);
  }
}

enum class RootClass { Trivial, SemiTrivial, NonTrivial };

inline std::string_view root_class_name(RootClass c) {
  switch (c) {
    case RootClass::Trivial: return "trivial";
    case RootClass::SemiTrivial: return "semi-trivial";
    case RootClass::NonTrivial: return "non-trivial";
  }
  return "?";
}

struct Branch {
  Eigen::VectorXd x;
  double residual_inf = 0.0;
  RootClass kind = RootClass::NonTrivial;
  /// Number of starts that converged to this root.
  int hits = 1;
};

struct BranchSet {
  std::vector<Var> unknowns;
  std::vector<Branch> branches;
  int starts = 0;
  int converged = 0;
  int failed = 0;

  int count(RootClass kind) const {
    return static_cast<int>(std::count_if(branches.begin(), branches.end(), [&](const Branch& b) { return b.kind == kind; }));
  }
};

struct SamplerRanges {
  /// Seeds are sign * 10^u with u uniform in [log10(min), log10(max)].
  double min_magnitude = 1e-3;
  double max_magnitude = 10.0;
  double zero_tolerance = 1e-8;
};

/// Trivial when every j_r, k_r (r >= 1) vanishes, semi-trivial when exactly
/// one component is constant. Pinned coefficients count with their values.
inline RootClass classify_root(const HSystemNumeric& sys, const Eigen::VectorXd& x, double zero_tolerance = 1e-8) {
  const Assignment a = sys.assignment(x);
  bool eta_varies = false, w_varies = false;
  for (int r = 1; r <= kMaxAnsatzDegree; ++r) {
    eta_varies = eta_varies || std::abs(a[vars::j(r).index]) > zero_tolerance;
    w_varies = w_varies || std::abs(a[vars::k(r).index]) > zero_tolerance;
  }
  if (!eta_varies && !w_varies) return RootClass::Trivial;
  if (eta_varies != w_varies) return RootClass::SemiTrivial;
  return RootClass::NonTrivial;
}

namespace detail {

// lambda and m only enter through their squares; report the positive root.
inline void canonicalize(const HSystemNumeric& sys, Eigen::VectorXd& x) {
  for (Var v : {vars::lambda, vars::m}) {
    const int k = sys.index_of(v);
    if (k >= 0) x[k] = std::abs(x[k]);
  }
}

inline bool same_root(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const double scale = std::max(x.lpNorm<Eigen::Infinity>(), y.lpNorm<Eigen::Infinity>());
  return (x - y).lpNorm<Eigen::Infinity>() <= std::max(1e-6 * scale, 1e-9);
}

}  // namespace detail

inline Eigen::VectorXd sample_seed(const HSystemNumeric& sys, std::mt19937_64& rng, const SamplerRanges& ranges) {
  std::uniform_real_distribution<double> exponent(std::log10(ranges.min_magnitude), std::log10(ranges.max_magnitude));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  Eigen::VectorXd x(sys.n_unknowns());
  for (int k = 0; k < sys.n_unknowns(); ++k) {
    const Var v = sys.unknowns()[k];
    if (v == vars::m) {
      x[k] = unit(rng);
      continue;
    }
    const double magnitude = std::pow(10.0, exponent(rng));
    x[k] = (v == vars::lambda || coin(rng)) ? magnitude : -magnitude;
  }
  return x;
}

/// Runs solve_newton from n_starts seeds. Start i draws from an mt19937_64
/// seeded with seed_seq{seed, i}, so results do not depend on run order;
/// roots are sorted before deduplication.
inline BranchSet multistart(const HSystemNumeric& sys, int n_starts, const SamplerRanges& ranges, std::uint64_t seed,
                            const NewtonOptions& opts = {}) {
  if (n_starts < 1) throw UsageError("multistart: n_starts must be >= 1");
  BranchSet set;
  set.unknowns = sys.unknowns();
  set.starts = n_starts;
  std::vector<Branch> found;
  for (int i = 0; i < n_starts; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    const Eigen::VectorXd x0 = sample_seed(sys, rng, ranges);
    try {
      Root r = solve_newton(sys, x0, opts);
      detail::canonicalize(sys, r.x);
      found.push_back({r.x, r.residual_inf, classify_root(sys, r.x, ranges.zero_tolerance), 1});
      ++set.converged;
    } catch (const SolverError&) {
      ++set.failed;
    }
  }
  std::sort(found.begin(), found.end(), [](const Branch& p, const Branch& q) {
    if (p.kind != q.kind) return static_cast<int>(p.kind) > static_cast<int>(q.kind);
    return std::lexicographical_compare(p.x.begin(), p.x.end(), q.x.begin(), q.x.end());
  });
  for (auto& b : found) {
    auto dup = std::find_if(set.branches.begin(), set.branches.end(),
                            [&](const Branch& kept) { return kept.kind == b.kind && detail::same_root(kept.x, b.x); });
    if (dup != set.branches.end()) {
      ++dup->hits;
      dup->residual_inf = std::min(dup->residual_inf, b.residual_inf);
    } else {
      set.branches.push_back(std::move(b));
    }
  }
  return set;
}

/// Reads j, k, lambda, m, sigma out of a root (pins included).
inline SolutionParams to_solution(const HSystemNumeric& sys, const Eigen::VectorXd& x, FamilyTag tag) {
  const Assignment a = sys.assignment(x);
  SolutionParams s;
  for (int r = 0; r < 5; ++r) s.j[r] = a[vars::j(r).index];
  for (int r = 0; r < 3; ++r) s.k[r] = a[vars::k(r).index];
  s.lambda = std::abs(a[vars::lambda.index]);
  s.m = std::abs(a[vars::m.index]);
  s.sigma = a[vars::sigma.index];
  s.family = tag;
  return s;
}

/// Seed vector for sys taken from a solution's coefficients.
inline Eigen::VectorXd seed_from(const HSystemNumeric& sys, const SolutionParams& s) {
  Eigen::VectorXd x(sys.n_unknowns());
  for (int k = 0; k < sys.n_unknowns(); ++k) {
    const Var v = sys.unknowns()[k];
    const int r = ansatz_power(v);
    if (is_j(v)) {
      x[k] = r < 5 ? s.j[r] : 0.0;
    } else if (is_k(v)) {
      x[k] = r < 3 ? s.k[r] : 0.0;
    } else if (v == vars::lambda) {
      x[k] = s.lambda;
    } else if (v == vars::m) {
      x[k] = s.m;
    } else if (v == vars::sigma) {
      x[k] = s.sigma;
    } else {
      x[k] = 0.0;
    }
  }
  return x;
}

// ---------------------------------------------------------------------------
// Non-existence sweeps for the c = 0 system with odd powers present.

struct NonexistenceOptions {
  /// The odd-power coefficient kept away from zero: j1, j3 or k1.
  Var constrained = vars::j(1);
  /// Unset: reformulate constrained = s (delta + t^2) for s = +1 and -1.
  /// Set: pin the constrained coefficient to this value (0 is the control run).
  std::optional<double> pinned_value;
  double delta = 1e-3;
  double m = 0.7;
  /// lambda = 0 makes every equation degenerate, so it is pinned by
  /// default; sigma stays free so sigma = 0 roots can show up.
  std::optional<double> lambda = 1.0;
  std::optional<double> sigma;
  std::vector<Rational> a_grid{Rational(-1), Rational(1, 3), Rational(1)};
  std::vector<Rational> b_grid{Rational(-1), Rational(1, 6), Rational(2)};
  std::vector<Rational> d_grid{Rational(-1, 3), Rational(1, 3), Rational(2)};
  /// Starts per grid point; the two sign runs each take half.
  int starts = 500;
  std::uint64_t seed = 20240601;
  /// Converged roots with |sigma| at most this count as the sigma = 0 family.
  double sigma_zero_tolerance = 1e-10;
  /// Roots with lambda below this are the degenerate lambda = 0 limit.
  double lambda_floor = 1e-6;
};

struct NonexistenceRoot {
  ParameterSet params;
  int sign = 0;
  double constrained_value = 0.0;
  double sigma = 0.0;
  double lambda = 0.0;
  double residual_inf = 0.0;
  Eigen::VectorXd x;
  std::vector<Var> unknowns;
};

struct NonexistenceReport {
  NonexistenceOptions options;
  int grid_points = 0;
  int runs = 0;
  int total_starts = 0;
  int converged = 0;
  std::vector<NonexistenceRoot> roots;
  /// Converged roots with |sigma| > tolerance and lambda above the floor.
  int counterexamples = 0;
  double max_abs_sigma = 0.0;
};

namespace detail {

inline HSystem c_zero_full_system(const ParameterSet& p) {
  return build_h_system(4, 2, EquationCoefficients::numeric(p.a, p.b, 0, p.d));
}

}  // namespace detail

/// Multistart sweep over the (a, b, d) grid of the full c = 0 system with
/// one odd coefficient held away from zero (or pinned).
inline NonexistenceReport reproduce_nonexistence(const NonexistenceOptions& opts) {
  if (opts.constrained != vars::j(1) && opts.constrained != vars::j(3) && opts.constrained != vars::k(1)) {
    throw UsageError("reproduce_nonexistence: constrained variable must be j1, j3 or k1");
  }
  NonexistenceReport report;
  report.options = opts;
  const std::vector<int> signs = opts.pinned_value ? std::vector<int>{0} : std::vector<int>{1, -1};
  const int starts_per_run = std::max(1, opts.starts / static_cast<int>(signs.size()));
  std::uint64_t run_index = 0;
  for (const auto& a : opts.a_grid) {
    for (const auto& b : opts.b_grid) {
      for (const auto& d : opts.d_grid) {
        ++report.grid_points;
        const ParameterSet p{a, b, 0, d, {}};
        const HSystem full = detail::c_zero_full_system(p);
        for (int sign : signs) {
          HSystem sys = full;
          Pins pins{{vars::m, opts.m}};
          if (opts.lambda) pins[vars::lambda] = *opts.lambda;
          if (opts.sigma) pins[vars::sigma] = *opts.sigma;
          if (opts.pinned_value) {
            pins[opts.constrained] = *opts.pinned_value;
          } else {
            const RationalPoly t = RationalPoly::variable(vars::t);
            sys = sys.substitute(opts.constrained, RationalPoly(Rational(sign)) * (RationalPoly(Rational(opts.delta)) + t * t));
          }
          const HSystemNumeric numeric = pin_and_square(sys, pins);
          const BranchSet set =
              multistart(numeric, starts_per_run, SamplerRanges{}, opts.seed + 7919 * run_index++, NewtonOptions{});
          ++report.runs;
          report.total_starts += set.starts;
          report.converged += set.converged;
          for (const auto& br : set.branches) {
            const Assignment values = numeric.assignment(br.x);
            NonexistenceRoot root;
            root.params = p;
            root.sign = sign;
            root.sigma = values[vars::sigma.index];
            root.lambda = std::abs(values[vars::lambda.index]);
            root.constrained_value =
                opts.pinned_value ? *opts.pinned_value
                                  : sign * (opts.delta + values[vars::t.index] * values[vars::t.index]);
            root.residual_inf = br.residual_inf;
            root.x = br.x;
            root.unknowns = numeric.unknowns();
            report.max_abs_sigma = std::max(report.max_abs_sigma, std::abs(root.sigma));
            if (std::abs(root.sigma) > opts.sigma_zero_tolerance && root.lambda > opts.lambda_floor) {
              ++report.counterexamples;
            }
            report.roots.push_back(std::move(root));
          }
        }
      }
    }
  }
  return report;
}

}  // namespace cnoidal
