#pragma once

// Sparse multivariate polynomials with exact rational coefficients over the
// fixed variable set {a, b, c, d, lambda, m, sigma, j0..j8, k0..k8, t}.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cnoidal/errors.hpp"
#include "cnoidal/rational.hpp"

namespace cnoidal {

/// Highest cn power supported for the ansatz coefficients j_r, k_r.
inline constexpr int kMaxAnsatzDegree = 8;
inline constexpr int kNumVars = 7 + 2 * (kMaxAnsatzDegree + 1) + 1;

/// Index into the fixed variable table. Ordering is the canonical print
/// order: a, b, c, d, lambda, m, sigma, j0.., k0.., t.
struct Var {
  std::uint8_t index = 0;

  friend constexpr bool operator==(Var, Var) = default;
  friend constexpr auto operator<=>(Var, Var) = default;
};

namespace vars {

inline constexpr Var a{0};
inline constexpr Var b{1};
inline constexpr Var c{2};
inline constexpr Var d{3};
inline constexpr Var lambda{4};
inline constexpr Var m{5};
inline constexpr Var sigma{6};
/// Auxiliary variable used by reformulations such as j1 = +-(delta + t^2).
inline constexpr Var t{kNumVars - 1};

constexpr Var j(int r) {
  return Var{static_cast<std::uint8_t>(7 + r)};
}
constexpr Var k(int r) {
  return Var{static_cast<std::uint8_t>(7 + kMaxAnsatzDegree + 1 + r)};
}

}  // namespace vars

inline bool is_j(Var v) {
  return v.index >= vars::j(0).index && v.index <= vars::j(kMaxAnsatzDegree).index;
}
inline bool is_k(Var v) {
  return v.index >= vars::k(0).index && v.index <= vars::k(kMaxAnsatzDegree).index;
}
/// Power r of cn that an ansatz coefficient multiplies.
inline int ansatz_power(Var v) {
  if (is_j(v)) return v.index - vars::j(0).index;
  if (is_k(v)) return v.index - vars::k(0).index;
  return -1;
}

inline std::string var_name(Var v) {
  static constexpr std::array<std::string_view, 7> kFixed = {"a", "b", "c", "d", "lambda", "m", "sigma"};
  if (v.index < kFixed.size()) return std::string(kFixed[v.index]);
  if (is_j(v)) return "j" + std::to_string(ansatz_power(v));
  if (is_k(v)) return "k" + std::to_string(ansatz_power(v));
  if (v == vars::t) return "t";
  throw UsageError("unknown variable index " + std::to_string(v.index));
}

inline Var parse_var(std::string_view name) {
  for (std::uint8_t i = 0; i < kNumVars; ++i) {
    if (var_name(Var{i}) == name) return Var{i};
  }
  if (name == "l" || name == "L") return vars::lambda;
  if (name == "s") return vars::sigma;
  throw UsageError("unknown variable '" + std::string(name) + "'");
}

/// Numeric values for every variable, indexed by Var::index.
using Assignment = std::array<double, kNumVars>;

class RationalPoly {
 public:
  using Monomial = std::array<std::uint8_t, kNumVars>;
  using Terms = std::map<Monomial, Rational>;

  RationalPoly() = default;
  RationalPoly(const Rational& constant) {  // NOLINT(google-explicit-constructor)
    if (constant != 0) terms_.emplace(Monomial{}, constant);
  }
  RationalPoly(int constant) : RationalPoly(Rational(constant)) {}  // NOLINT(google-explicit-constructor)

  static RationalPoly variable(Var v) {
    RationalPoly p;
    Monomial mono{};
    mono[v.index] = 1;
    p.terms_.emplace(mono, Rational(1));
    return p;
  }

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const Terms& terms() const noexcept { return terms_; }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{});
  }
  Rational constant_value() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  bool contains(Var v) const {
    for (const auto& [mono, coef] : terms_) {
      if (mono[v.index] != 0) return true;
    }
    return false;
  }

  int degree_in(Var v) const {
    int deg = -1;
    for (const auto& [mono, coef] : terms_) deg = std::max(deg, static_cast<int>(mono[v.index]));
    return deg;
  }

  /// Variables that occur in at least one term, in canonical order.
  std::vector<Var> variables() const {
    std::vector<Var> out;
    for (std::uint8_t i = 0; i < kNumVars; ++i) {
      if (contains(Var{i})) out.push_back(Var{i});
    }
    return out;
  }

  RationalPoly& operator+=(const RationalPoly& rhs) {
    for (const auto& [mono, coef] : rhs.terms_) add_term(mono, coef);
    return *this;
  }
  RationalPoly& operator-=(const RationalPoly& rhs) {
    for (const auto& [mono, coef] : rhs.terms_) add_term(mono, -coef);
    return *this;
  }
  RationalPoly& operator*=(const RationalPoly& rhs) {
    *this = *this * rhs;
    return *this;
  }

  friend RationalPoly operator+(RationalPoly lhs, const RationalPoly& rhs) { return lhs += rhs; }
  friend RationalPoly operator-(RationalPoly lhs, const RationalPoly& rhs) { return lhs -= rhs; }
  friend RationalPoly operator-(const RationalPoly& p) {
    RationalPoly out;
    for (const auto& [mono, coef] : p.terms_) out.terms_.emplace(mono, -coef);
    return out;
  }
  friend RationalPoly operator*(const RationalPoly& lhs, const RationalPoly& rhs) {
    RationalPoly out;
    for (const auto& [ma, ca] : lhs.terms_) {
      for (const auto& [mb, cb] : rhs.terms_) {
        Monomial mono;
        for (int i = 0; i < kNumVars; ++i) mono[i] = static_cast<std::uint8_t>(ma[i] + mb[i]);
        out.add_term(mono, ca * cb);
      }
    }
    return out;
  }
  friend bool operator==(const RationalPoly&, const RationalPoly&) = default;

  RationalPoly pow(unsigned exponent) const {
    RationalPoly out(1);
    for (unsigned i = 0; i < exponent; ++i) out *= *this;
    return out;
  }

  /// Coefficient of v^power viewed as a polynomial in v.
  RationalPoly coefficient_of(Var v, int power) const {
    RationalPoly out;
    for (const auto& [mono, coef] : terms_) {
      if (mono[v.index] == power) {
        Monomial rest = mono;
        rest[v.index] = 0;
        out.add_term(rest, coef);
      }
    }
    return out;
  }

  RationalPoly substitute(Var v, const Rational& value) const {
    RationalPoly out;
    for (const auto& [mono, coef] : terms_) {
      Monomial rest = mono;
      rest[v.index] = 0;
      Rational factor = coef;
      for (int e = 0; e < mono[v.index]; ++e) factor *= value;
      out.add_term(rest, factor);
    }
    return out;
  }

  RationalPoly substitute(Var v, const RationalPoly& value) const {
    RationalPoly out;
    std::vector<RationalPoly> powers{RationalPoly(1)};
    for (const auto& [mono, coef] : terms_) {
      const int e = mono[v.index];
      while (static_cast<int>(powers.size()) <= e) powers.push_back(powers.back() * value);
      Monomial rest = mono;
      rest[v.index] = 0;
      RationalPoly term;
      term.terms_.emplace(rest, coef);
      out += term * powers[e];
    }
    return out;
  }

  /// Exact division by v; nullopt when some term lacks a factor of v.
  std::optional<RationalPoly> divide_by(Var v) const {
    RationalPoly out;
    for (const auto& [mono, coef] : terms_) {
      if (mono[v.index] == 0) return std::nullopt;
      Monomial rest = mono;
      --rest[v.index];
      out.terms_.emplace(rest, coef);
    }
    return out;
  }

  /// Largest monomial dividing every term (zero for the zero polynomial).
  Monomial monomial_gcd() const {
    Monomial g{};
    if (terms_.empty()) return g;
    g = terms_.begin()->first;
    for (const auto& [mono, coef] : terms_) {
      for (int i = 0; i < kNumVars; ++i) g[i] = std::min(g[i], mono[i]);
    }
    return g;
  }

  RationalPoly divide_monomial(const Monomial& divisor) const {
    RationalPoly out;
    for (const auto& [mono, coef] : terms_) {
      Monomial rest = mono;
      for (int i = 0; i < kNumVars; ++i) {
        if (rest[i] < divisor[i]) throw UsageError("divide_monomial: not a divisor");
        rest[i] = static_cast<std::uint8_t>(rest[i] - divisor[i]);
      }
      out.terms_.emplace(rest, coef);
    }
    return out;
  }

  double evaluate(const Assignment& values) const {
    double sum = 0.0;
    for (const auto& [mono, coef] : terms_) {
      double term = coef.convert_to<double>();
      for (int i = 0; i < kNumVars; ++i) {
        for (int e = 0; e < mono[i]; ++e) term *= values[i];
      }
      sum += term;
    }
    return sum;
  }

  /// Canonical text: terms in descending monomial order, factors in
  /// variable-table order, e.g. "-24*b*lambda^2*m^2*sigma*j2 + 4*j2*k2".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [mono, coef] = *it;
      const bool negative = coef < 0;
      const Rational magnitude = negative ? Rational(-coef) : coef;
      if (first) {
        if (negative) out << '-';
      } else {
        out << (negative ? " - " : " + ");
      }
      first = false;
      bool wrote = false;
      if (magnitude != 1 || mono == Monomial{}) {
        out << magnitude.str();
        wrote = true;
      }
      for (int i = 0; i < kNumVars; ++i) {
        if (mono[i] == 0) continue;
        if (wrote) out << '*';
        out << var_name(Var{static_cast<std::uint8_t>(i)});
        if (mono[i] > 1) out << '^' << static_cast<int>(mono[i]);
        wrote = true;
      }
    }
    return out.str();
  }

 private:
  void add_term(const Monomial& mono, const Rational& coef) {
    if (coef == 0) return;
    auto [it, inserted] = terms_.try_emplace(mono, coef);
    if (!inserted) {
      it->second += coef;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const RationalPoly& p) {
  return os << p.to_string();
}

}  // namespace cnoidal
