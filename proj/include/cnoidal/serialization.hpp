#pragma once

// JSON records for the library types. Rationals are written as "p/q"
// strings so exact parameters survive a round trip.

#include <string>

#include "json.hpp"

#include "cnoidal/coeff_solver.hpp"
#include "cnoidal/parameters.hpp"
#include "cnoidal/reduction.hpp"
#include "cnoidal/residual.hpp"
#include "cnoidal/solution_families.hpp"

namespace cnoidal {

using json = nlohmann::ordered_json;

inline json to_json(const ParameterSet& p) {
  json out{{"a", to_string(p.a)}, {"b", to_string(p.b)}, {"c", to_string(p.c)}, {"d", to_string(p.d)}};
  if (p.theta) out["theta"] = *p.theta;
  return out;
}

namespace detail {

inline Rational rational_field(const json& j, const char* key) {
  if (!j.contains(key)) return Rational(0);
  const auto& v = j.at(key);
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number()) return Rational(v.get<double>());
  throw UsageError(std::string("field '") + key + "' must be a number or a p/q string");
}

inline std::string_view sign_name(SignChoice s) { return s == SignChoice::Top ? "top" : "bottom"; }

inline SignChoice parse_sign(std::string_view s) {
  if (s == "top" || s == "+") return SignChoice::Top;
  if (s == "bottom" || s == "-") return SignChoice::Bottom;
  throw UsageError("sign must be top or bottom, got '" + std::string(s) + "'");
}

}  // namespace detail

inline ParameterSet parameters_from_json(const json& j) {
  ParameterSet p{detail::rational_field(j, "a"), detail::rational_field(j, "b"), detail::rational_field(j, "c"),
                 detail::rational_field(j, "d"), {}};
  if (j.contains("theta")) p.theta = j.at("theta").get<double>();
  return p;
}

inline json to_json(const SolutionParams& s) {
  json out{{"family_tag", family_name(s.family)},
           {"branch", {{"tau1", s.branch.tau1}, {"tau2", s.branch.tau2}, {"sign", detail::sign_name(s.branch.pm)}}},
           {"j", s.j},
           {"k", s.k},
           {"lambda", s.lambda},
           {"m", s.m},
           {"sigma", s.sigma}};
  out["limit_of"] = s.limit_of ? json(family_name(*s.limit_of)) : json(nullptr);
  return out;
}

inline SolutionParams solution_from_json(const json& j) {
  SolutionParams s;
  s.family = parse_family(j.at("family_tag").get<std::string>());
  if (j.contains("branch")) {
    const auto& b = j.at("branch");
    s.branch.tau1 = b.value("tau1", 1);
    s.branch.tau2 = b.value("tau2", 1);
    s.branch.pm = detail::parse_sign(b.value("sign", std::string("top")));
  }
  const auto jj = j.at("j").get<std::vector<double>>();
  const auto kk = j.at("k").get<std::vector<double>>();
  if (jj.size() != s.j.size() || kk.size() != s.k.size()) throw UsageError("solution JSON needs 5 j and 3 k entries");
  std::copy(jj.begin(), jj.end(), s.j.begin());
  std::copy(kk.begin(), kk.end(), s.k.begin());
  s.lambda = j.at("lambda").get<double>();
  s.m = j.at("m").get<double>();
  s.sigma = j.at("sigma").get<double>();
  if (j.contains("limit_of") && !j.at("limit_of").is_null()) {
    s.limit_of = parse_family(j.at("limit_of").get<std::string>());
  }
  return s;
}

inline json to_json(const ResidualReport& r) {
  return {{"max_abs_eq1", r.max_abs_eq1}, {"max_abs_eq2", r.max_abs_eq2}, {"scale", r.scale},
          {"relative", r.relative},       {"n_samples", r.n_samples},     {"period", r.period}};
}

inline json to_json(const PeriodicityReport& r) {
  return {{"period", r.period},
          {"defect", r.defect},
          {"half_period_defect", r.half_period_defect},
          {"half_periodic", r.half_periodic}};
}

inline json to_json(const ConvergenceTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) rows.push_back({{"parameter", r.parameter}, {"error", r.error}});
  json out{{"kind", limit_name(t.kind)},
           {"source", family_name(t.source)},
           {"target", family_name(t.target)},
           {"rows", rows},
           {"monotone", t.monotone},
           {"order", t.order}};
  out["at_limit"] = t.at_limit ? json(*t.at_limit) : json(nullptr);
  return out;
}

inline json to_json(const AnsatzShape& s) {
  return {{"kind", shape_name(s.kind)}, {"max_eta_degree", s.max_eta_degree}, {"max_w_degree", s.max_w_degree}};
}

inline json to_json(const ChainStep& s) {
  json rho_m = s.rho_measured, rho_e = s.rho_expected;
  return {{"kind", s.kind},
          {"variable", var_name(s.variable)},
          {"equation", s.equation},
          {"polynomial", s.polynomial},
          {"eta_degree", s.eta_degree},
          {"w_degree", s.w_degree},
          {"rho_measured", rho_m},
          {"rho_expected", rho_e}};
}

inline json to_json(const TerminationReport& r) {
  json degrees = json::array();
  for (const auto& d : r.degrees) {
    json branches = json::array();
    for (const auto& b : d.branches) {
      json steps = json::array();
      for (const auto& s : b.steps) steps.push_back(to_json(s));
      branches.push_back({{"eta_degree", b.eta_degree}, {"w_degree", b.w_degree}, {"steps", steps}});
    }
    degrees.push_back({{"n", d.n},
                       {"stabilized_eta", d.stabilized_eta},
                       {"stabilized_w", d.stabilized_w},
                       {"sharp", d.sharp},
                       {"rho_consistent", d.rho_consistent},
                       {"branches", branches}});
  }
  return {{"pattern", r.pattern.describe()}, {"shape", to_json(r.shape)}, {"n_max", r.n_max},
          {"degrees", degrees},              {"notes", r.notes},          {"passed", r.passed}};
}

inline json to_json(const HSystemNumeric& sys, const Eigen::VectorXd& x) {
  json out = json::object();
  for (int i = 0; i < sys.n_unknowns(); ++i) out[var_name(sys.unknowns()[i])] = x[i];
  return out;
}

inline json to_json(const BranchSet& set, const HSystemNumeric& sys) {
  json branches = json::array();
  for (const auto& b : set.branches) {
    branches.push_back({{"class", root_class_name(b.kind)},
                        {"values", to_json(sys, b.x)},
                        {"residual_inf", b.residual_inf},
                        {"hits", b.hits}});
  }
  json pins = json::object();
  for (const auto& [v, value] : sys.pins()) pins[var_name(v)] = value;
  json unknowns = json::array();
  for (Var v : set.unknowns) unknowns.push_back(var_name(v));
  return {{"pins", pins},
          {"unknowns", unknowns},
          {"starts", set.starts},
          {"converged", set.converged},
          {"failed", set.failed},
          {"counts",
           {{"trivial", set.count(RootClass::Trivial)},
            {"semi-trivial", set.count(RootClass::SemiTrivial)},
            {"non-trivial", set.count(RootClass::NonTrivial)}}},
          {"branches", branches}};
}

inline json to_json(const NonexistenceReport& r) {
  json roots = json::array();
  for (const auto& root : r.roots) {
    json values = json::object();
    for (std::size_t i = 0; i < root.unknowns.size(); ++i) values[var_name(root.unknowns[i])] = root.x[i];
    roots.push_back({{"params", to_json(root.params)},
                     {"sign", root.sign},
                     {"constrained_value", root.constrained_value},
                     {"sigma", root.sigma},
                     {"lambda", root.lambda},
                     {"residual_inf", root.residual_inf},
                     {"values", values}});
  }
  const auto& o = r.options;
  json opts{{"constrained", var_name(o.constrained)},
            {"delta", o.delta},
            {"m", o.m},
            {"starts_per_grid_point", o.starts},
            {"seed", o.seed},
            {"sigma_zero_tolerance", o.sigma_zero_tolerance}};
  opts["pinned_value"] = o.pinned_value ? json(*o.pinned_value) : json(nullptr);
  opts["lambda"] = o.lambda ? json(*o.lambda) : json(nullptr);
  opts["sigma"] = o.sigma ? json(*o.sigma) : json(nullptr);
  return {{"options", opts},
          {"grid_points", r.grid_points},
          {"runs", r.runs},
          {"total_starts", r.total_starts},
          {"converged", r.converged},
          {"counterexamples", r.counterexamples},
          {"max_abs_sigma", r.max_abs_sigma},
          {"roots", roots}};
}

}  // namespace cnoidal
