#pragma once

// Exact arithmetic in the ring Q[vars][cn] (+) sn*dn*Q[vars][cn].
//
// sn^2 and dn^2 are always eliminated through
//   sn^2 = 1 - cn^2,   dn^2 = 1 - m^2 + m^2 cn^2,
// so every expression is an "even" cn-polynomial plus sn*dn times an "odd"
// cn-polynomial. Differentiation is with respect to xi for cn(lambda*xi, m).

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cnoidal/elliptic.hpp"
#include "cnoidal/errors.hpp"
#include "cnoidal/polynomial.hpp"

namespace cnoidal {

class CnExpression {
 public:
  CnExpression() = default;

  static CnExpression constant(const RationalPoly& value) {
    return cn_power(0, value);
  }

  /// coefficient * cn^power
  static CnExpression cn_power(int power, const RationalPoly& coefficient = RationalPoly(1)) {
    CnExpression e;
    e.even_.resize(power + 1);
    e.even_[power] = coefficient;
    e.normalize();
    return e;
  }

  /// coefficient * sn * dn * cn^power
  static CnExpression sn_dn_cn_power(int power, const RationalPoly& coefficient = RationalPoly(1)) {
    CnExpression e;
    e.odd_.resize(power + 1);
    e.odd_[power] = coefficient;
    e.normalize();
    return e;
  }

  static CnExpression from_parts(std::vector<RationalPoly> even, std::vector<RationalPoly> odd) {
    CnExpression e;
    e.even_ = std::move(even);
    e.odd_ = std::move(odd);
    e.normalize();
    return e;
  }

  const std::vector<RationalPoly>& even_part() const noexcept { return even_; }
  const std::vector<RationalPoly>& odd_part() const noexcept { return odd_; }

  bool is_zero() const noexcept { return even_.empty() && odd_.empty(); }

  int even_degree() const noexcept { return static_cast<int>(even_.size()) - 1; }
  int odd_degree() const noexcept { return static_cast<int>(odd_.size()) - 1; }

  /// Highest cn power with a nonzero coefficient in either part (the sn*dn
  /// factor does not count); -1 for the zero expression.
  int rho() const noexcept { return std::max(even_degree(), odd_degree()); }

  const RationalPoly& even_coefficient(int power) const { return coefficient(even_, power); }
  const RationalPoly& odd_coefficient(int power) const { return coefficient(odd_, power); }

  CnExpression& operator+=(const CnExpression& rhs) {
    accumulate(even_, rhs.even_);
    accumulate(odd_, rhs.odd_);
    normalize();
    return *this;
  }
  CnExpression& operator-=(const CnExpression& rhs) { return *this += -rhs; }

  friend CnExpression operator+(CnExpression lhs, const CnExpression& rhs) { return lhs += rhs; }
  friend CnExpression operator-(CnExpression lhs, const CnExpression& rhs) { return lhs -= rhs; }
  friend CnExpression operator-(const CnExpression& e) {
    CnExpression out = e;
    for (auto& p : out.even_) p = -p;
    for (auto& p : out.odd_) p = -p;
    return out;
  }

  friend CnExpression operator*(const RationalPoly& scalar, const CnExpression& e) {
    CnExpression out = e;
    for (auto& p : out.even_) p = scalar * p;
    for (auto& p : out.odd_) p = scalar * p;
    out.normalize();
    return out;
  }

  /// Ring product; two odd parts meet through (sn dn)^2 = (1 - cn^2)(1 - m^2 + m^2 cn^2).
  friend CnExpression operator*(const CnExpression& lhs, const CnExpression& rhs) {
    CnExpression out;
    out.even_ = convolve(lhs.even_, rhs.even_);
    out.odd_ = convolve(lhs.even_, rhs.odd_);
    accumulate(out.odd_, convolve(lhs.odd_, rhs.even_));
    if (!lhs.odd_.empty() && !rhs.odd_.empty()) {
      accumulate(out.even_, convolve(convolve(lhs.odd_, rhs.odd_), sn_dn_squared()));
    }
    out.normalize();
    return out;
  }

  friend bool operator==(const CnExpression&, const CnExpression&) = default;

  /// d/dxi, using
  ///   (cn^r)'        = -r lambda cn^{r-1} sn dn
  ///   (sn dn cn^r)'  = lambda cn^{r+1} (1 - 2m^2 + 2m^2 cn^2)
  ///                    - r lambda cn^{r-1} (1 - cn^2)(1 - m^2 + m^2 cn^2)
  CnExpression differentiate() const {
    const RationalPoly lam = RationalPoly::variable(vars::lambda);
    const RationalPoly m2 = RationalPoly::variable(vars::m).pow(2);
    const RationalPoly one_minus_2m2 = RationalPoly(1) - RationalPoly(2) * m2;
    const RationalPoly one_minus_m2 = RationalPoly(1) - m2;
    const RationalPoly two_m2_minus_1 = RationalPoly(2) * m2 - RationalPoly(1);

    std::vector<RationalPoly> even;
    std::vector<RationalPoly> odd;
    auto add = [](std::vector<RationalPoly>& part, int power, const RationalPoly& value) {
      if (static_cast<int>(part.size()) <= power) part.resize(power + 1);
      part[power] += value;
    };
    for (int r = 1; r < static_cast<int>(even_.size()); ++r) {
      if (even_[r].is_zero()) continue;
      add(odd, r - 1, RationalPoly(-r) * lam * even_[r]);
    }
    for (int r = 0; r < static_cast<int>(odd_.size()); ++r) {
      const RationalPoly& q = odd_[r];
      if (q.is_zero()) continue;
      const RationalPoly lq = lam * q;
      add(even, r + 1, one_minus_2m2 * lq);
      add(even, r + 3, RationalPoly(2) * m2 * lq);
      if (r >= 1) {
        add(even, r - 1, RationalPoly(-r) * one_minus_m2 * lq);
        add(even, r + 1, RationalPoly(-r) * two_m2_minus_1 * lq);
        add(even, r + 3, RationalPoly(r) * m2 * lq);
      }
    }
    return from_parts(std::move(even), std::move(odd));
  }

  CnExpression substitute(Var v, const Rational& value) const {
    CnExpression out = *this;
    for (auto& p : out.even_) p = p.substitute(v, value);
    for (auto& p : out.odd_) p = p.substitute(v, value);
    out.normalize();
    return out;
  }

  CnExpression substitute(Var v, const RationalPoly& value) const {
    CnExpression out = *this;
    for (auto& p : out.even_) p = p.substitute(v, value);
    for (auto& p : out.odd_) p = p.substitute(v, value);
    out.normalize();
    return out;
  }

  /// Numeric value at xi. lambda and m are read from the assignment.
  double evaluate(const Assignment& values, double xi) const {
    const double lambda = values[vars::lambda.index];
    const elliptic::JacobiPoint p = elliptic::jacobi_eval(lambda * xi, values[vars::m.index]);
    auto horner = [&](const std::vector<RationalPoly>& part) {
      double acc = 0.0;
      for (auto it = part.rbegin(); it != part.rend(); ++it) acc = acc * p.cn + it->evaluate(values);
      return acc;
    };
    return horner(even_) + p.sn * p.dn * horner(odd_);
  }

  std::string to_string() const {
    std::ostringstream out;
    auto write = [&](const std::vector<RationalPoly>& part, const char* prefix) {
      for (int q = 0; q < static_cast<int>(part.size()); ++q) {
        if (part[q].is_zero()) continue;
        if (out.tellp() > 0) out << " + ";
        out << prefix << "(" << part[q].to_string() << ")*cn^" << q;
      }
    };
    write(even_, "");
    write(odd_, "sn*dn*");
    return out.tellp() > 0 ? out.str() : "0";
  }

 private:
  static const RationalPoly& coefficient(const std::vector<RationalPoly>& part, int power) {
    static const RationalPoly kZero;
    if (power < 0 || power >= static_cast<int>(part.size())) return kZero;
    return part[power];
  }

  static void accumulate(std::vector<RationalPoly>& into, const std::vector<RationalPoly>& from) {
    if (into.size() < from.size()) into.resize(from.size());
    for (std::size_t i = 0; i < from.size(); ++i) into[i] += from[i];
  }

  static std::vector<RationalPoly> convolve(const std::vector<RationalPoly>& x, const std::vector<RationalPoly>& y) {
    if (x.empty() || y.empty()) return {};
    std::vector<RationalPoly> out(x.size() + y.size() - 1);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t k = 0; k < y.size(); ++k) {
        if (y[k].is_zero()) continue;
        out[i + k] += x[i] * y[k];
      }
    }
    return out;
  }

  // (1 - cn^2)(1 - m^2 + m^2 cn^2) = (1 - m^2) + (2m^2 - 1) cn^2 - m^2 cn^4
  static const std::vector<RationalPoly>& sn_dn_squared() {
    static const std::vector<RationalPoly> kValue = [] {
      const RationalPoly m2 = RationalPoly::variable(vars::m).pow(2);
      return std::vector<RationalPoly>{RationalPoly(1) - m2, RationalPoly(), RationalPoly(2) * m2 - RationalPoly(1),
                                       RationalPoly(), -m2};
    }();
    return kValue;
  }

  void normalize() {
    while (!even_.empty() && even_.back().is_zero()) even_.pop_back();
    while (!odd_.empty() && odd_.back().is_zero()) odd_.pop_back();
  }

  std::vector<RationalPoly> even_;
  std::vector<RationalPoly> odd_;
};

enum class Component { Eta, W };

/// sum_{r=0}^{n} j_r cn^r (Eta) or k_r cn^r (W) with symbolic coefficients.
inline CnExpression ansatz(int degree, Component which) {
  if (degree < 0 || degree > kMaxAnsatzDegree) {
    throw UsageError("ansatz degree must lie in [0, " + std::to_string(kMaxAnsatzDegree) + "]");
  }
  std::vector<RationalPoly> even(degree + 1);
  for (int r = 0; r <= degree; ++r) {
    even[r] = RationalPoly::variable(which == Component::Eta ? vars::j(r) : vars::k(r));
  }
  return CnExpression::from_parts(std::move(even), {});
}

/// Coefficients a, b, c, d of the traveling-wave ODE system, each either a
/// symbol or an exact rational.
struct EquationCoefficients {
  RationalPoly a = RationalPoly::variable(vars::a);
  RationalPoly b = RationalPoly::variable(vars::b);
  RationalPoly c = RationalPoly::variable(vars::c);
  RationalPoly d = RationalPoly::variable(vars::d);

  static EquationCoefficients symbolic() { return {}; }
  static EquationCoefficients numeric(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
    return {RationalPoly(a), RationalPoly(b), RationalPoly(c), RationalPoly(d)};
  }
};

/// The six building blocks of the ODE residuals for a given ansatz pair.
struct ResidualTerms {
  CnExpression eta_1;   // eta'
  CnExpression w_1;     // w'
  CnExpression eta_3;   // eta'''
  CnExpression w_3;     // w'''
  CnExpression eta_w_1; // (eta w)'
  CnExpression w_w_1;   // w w'
};

inline ResidualTerms residual_terms(const CnExpression& eta, const CnExpression& w) {
  ResidualTerms t;
  t.eta_1 = eta.differentiate();
  t.w_1 = w.differentiate();
  t.eta_3 = t.eta_1.differentiate().differentiate();
  t.w_3 = t.w_1.differentiate().differentiate();
  t.eta_w_1 = (eta * w).differentiate();
  t.w_w_1 = w * t.w_1;
  return t;
}

/// Both ODE residuals
///   -sigma eta' + w' + (eta w)' + a w''' + b sigma eta'''
///   -sigma w' + eta' + w w' + c eta''' + d sigma w'''
inline std::pair<CnExpression, CnExpression> ode_residuals(const CnExpression& eta, const CnExpression& w,
                                                           const EquationCoefficients& coeffs) {
  const RationalPoly sigma = RationalPoly::variable(vars::sigma);
  const ResidualTerms t = residual_terms(eta, w);
  CnExpression first = (-sigma) * t.eta_1 + t.w_1 + t.eta_w_1 + coeffs.a * t.w_3 +
                       (coeffs.b * sigma) * t.eta_3;
  CnExpression second = (-sigma) * t.w_1 + t.eta_1 + t.w_w_1 + coeffs.c * t.eta_3 +
                        (coeffs.d * sigma) * t.w_3;
  return {std::move(first), std::move(second)};
}

struct HEquation {
  int equation = 1;  // 1 or 2
  int power = 0;     // q, the cn power
  RationalPoly poly;

  std::string label() const { return "h[" + std::to_string(equation) + "," + std::to_string(power) + "]"; }
};

/// The coefficient system h_{p,q} = 0 with residual_p = -lambda sn dn sum_q h_{p,q} cn^q.
struct HSystem {
  int n_eta = 0;
  int n_w = 0;
  std::vector<HEquation> equations;

  const RationalPoly& at(int equation, int power) const {
    static const RationalPoly kZero;
    for (const auto& e : equations) {
      if (e.equation == equation && e.power == power) return e.poly;
    }
    return kZero;
  }

  std::vector<HEquation> nonzero_equations() const {
    std::vector<HEquation> out;
    std::copy_if(equations.begin(), equations.end(), std::back_inserter(out),
                 [](const HEquation& e) { return !e.poly.is_zero(); });
    return out;
  }

  HSystem substitute(Var v, const Rational& value) const {
    HSystem out = *this;
    for (auto& e : out.equations) e.poly = e.poly.substitute(v, value);
    return out;
  }

  HSystem substitute(Var v, const RationalPoly& value) const {
    HSystem out = *this;
    for (auto& e : out.equations) e.poly = e.poly.substitute(v, value);
    return out;
  }

  /// One "h[p,q] = poly" line per equation, ordered by (p, descending q).
  std::string canonical_text() const {
    std::vector<const HEquation*> order;
    for (const auto& e : equations) order.push_back(&e);
    std::sort(order.begin(), order.end(), [](const HEquation* x, const HEquation* y) {
      return x->equation != y->equation ? x->equation < y->equation : x->power > y->power;
    });
    std::string out;
    for (const auto* e : order) out += e->label() + " = " + e->poly.to_string() + "\n";
    return out;
  }
};

namespace detail {

inline std::vector<RationalPoly> extract_h(const CnExpression& residual, int equation) {
  for (int q = 0; q <= residual.even_degree(); ++q) {
    if (!residual.even_coefficient(q).is_zero()) {
      throw FactorizationError("residual " + std::to_string(equation) + " has a term without sn*dn at cn^" +
                               std::to_string(q) + ": " + residual.even_coefficient(q).to_string());
    }
  }
  std::vector<RationalPoly> h;
  for (int q = 0; q <= residual.odd_degree(); ++q) {
    auto divided = residual.odd_coefficient(q).divide_by(vars::lambda);
    if (!divided) {
      throw FactorizationError("residual " + std::to_string(equation) + " coefficient of sn*dn*cn^" +
                               std::to_string(q) + " is not divisible by lambda");
    }
    h.push_back(-*divided);
  }
  return h;
}

}  // namespace detail

/// Substitutes the degree-(n_eta, n_w) ansatz into the ODE system and returns
/// the coefficient polynomials h_{p,q}.
inline HSystem build_h_system(int n_eta, int n_w,
                              const EquationCoefficients& coeffs = EquationCoefficients::symbolic()) {
  if (n_eta < 0 || n_w < 0 || std::max(n_eta, n_w) < 1) throw UsageError("build_h_system: degrees must be >= 1");
  const CnExpression eta = ansatz(n_eta, Component::Eta);
  const CnExpression w = ansatz(n_w, Component::W);
  auto [first, second] = ode_residuals(eta, w, coeffs);

  HSystem sys;
  sys.n_eta = n_eta;
  sys.n_w = n_w;
  int equation = 1;
  for (const CnExpression* residual : {&first, &second}) {
    std::vector<RationalPoly> h = detail::extract_h(*residual, equation);
    for (int q = 0; q < static_cast<int>(h.size()); ++q) sys.equations.push_back({equation, q, std::move(h[q])});
    ++equation;
  }
  return sys;
}

}  // namespace cnoidal
