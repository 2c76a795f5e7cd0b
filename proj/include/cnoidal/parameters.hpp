#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "cnoidal/errors.hpp"
#include "cnoidal/rational.hpp"

namespace cnoidal {

/// The constants a, b, c, d of the abcd-system, plus an optional theta.
struct ParameterSet {
  Rational a;
  Rational b;
  Rational c;
  Rational d;
  std::optional<double> theta;

  template <class T = double>
  T a_as() const { return to_scalar<T>(a); }
  template <class T = double>
  T b_as() const { return to_scalar<T>(b); }
  template <class T = double>
  T c_as() const { return to_scalar<T>(c); }
  template <class T = double>
  T d_as() const { return to_scalar<T>(d); }
};

inline bool operator==(const ParameterSet& x, const ParameterSet& y) {
  return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d && x.theta == y.theta;
}

/// Returns theta = sqrt(1 - 2(c + d)) when
///   a + b = (theta^2 - 1/3)/2,  c + d = (1 - theta^2)/2 >= 0,  a + b + c + d = 1/3
/// all hold with theta in [0, 1]; otherwise throws ConstraintError listing
/// every violated relation.
inline double check_physical_constraint(const ParameterSet& p) {
  const Rational third(1, 3);
  const Rational theta_sq = 1 - 2 * (p.c + p.d);
  std::vector<std::string> violated;
  if (p.c + p.d < 0) violated.push_back("c + d = (1 - theta^2)/2 >= 0 (c + d is negative)");
  if (theta_sq < 0 || theta_sq > 1) violated.push_back("theta in [0, 1] (1 - 2(c + d) = " + theta_sq.str() + ")");
  if (p.a + p.b != (theta_sq - third) / 2) violated.push_back("a + b = (theta^2 - 1/3)/2");
  if (p.a + p.b + p.c + p.d != third) violated.push_back("a + b + c + d = 1/3");

  double theta = theta_sq >= 0 ? std::sqrt(theta_sq.convert_to<double>()) : 0.0;
  if (p.theta && violated.empty() && std::abs(*p.theta - theta) > 1e-12) {
    violated.push_back("supplied theta " + std::to_string(*p.theta) + " differs from sqrt(1 - 2(c + d))");
  }
  if (!violated.empty()) {
    std::string msg = "physical constraint violated:";
    for (const auto& v : violated) msg += "\n  " + v;
    throw ConstraintError(msg);
  }
  return theta;
}

}  // namespace cnoidal
