#pragma once

// Jacobi elliptic functions sn, cn, dn and the complete integral K.
//
// Modulus convention: every function here takes the elliptic *modulus*
// k (called m throughout this library), which enters the identities as m^2:
//
//   dn^2 = 1 - m^2 + m^2 cn^2,   K(m) = int_0^{pi/2} dt / sqrt(1 - m^2 sin^2 t).
//
// References that parameterize by the "parameter" (k^2) must be given
// sqrt(parameter) here.

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "cnoidal/errors.hpp"

namespace cnoidal::elliptic {

class Modulus {
 public:
  explicit Modulus(double m) : m_(m) {
    if (!(m >= 0.0 && m <= 1.0)) {
      throw DomainError("elliptic modulus must lie in [0, 1], got " + std::to_string(m));
    }
  }
  double value() const noexcept { return m_; }

 private:
  double m_;
};

struct JacobiPoint {
  double v = 0.0;
  double m = 0.0;
  double sn = 0.0;
  double cn = 1.0;
  double dn = 1.0;
};

namespace detail {

inline constexpr double kAgmTolerance = 1e-15;
inline constexpr int kMaxAgmLevels = 32;

}  // namespace detail

/// Quarter period K(m) by the arithmetic-geometric mean.
inline double complete_k(Modulus modulus) {
  const double m = modulus.value();
  if (m >= 1.0) throw DomainError("K(m) diverges at m = 1");
  double a = 1.0;
  double b = std::sqrt((1.0 - m) * (1.0 + m));
  for (int i = 0; i < detail::kMaxAgmLevels && std::abs(a - b) > detail::kAgmTolerance * a; ++i) {
    const double next_a = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = next_a;
  }
  return std::numbers::pi / (a + b);
}

inline double complete_k(double m) {
  return complete_k(Modulus(m));
}

/// sn, cn, dn at (v, m) by descending Landen (AGM) recursion.
inline JacobiPoint jacobi_eval(double v, Modulus modulus) {
  if (!std::isfinite(v)) throw DomainError("jacobi_eval: non-finite argument");
  const double m = modulus.value();
  JacobiPoint p{v, m, 0.0, 1.0, 1.0};
  if (m == 0.0) {
    p.sn = std::sin(v);
    p.cn = std::cos(v);
    return p;
  }
  if (m == 1.0) {
    p.sn = std::tanh(v);
    p.cn = 1.0 / std::cosh(v);
    p.dn = p.cn;
    return p;
  }

  std::array<double, detail::kMaxAgmLevels + 1> a{};
  std::array<double, detail::kMaxAgmLevels + 1> c{};
  a[0] = 1.0;
  c[0] = m;
  double b = std::sqrt((1.0 - m) * (1.0 + m));
  int n = 0;
  while (std::abs(c[n]) > detail::kAgmTolerance * a[n] && n < detail::kMaxAgmLevels) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * v, n);
  for (int i = n; i > 0; --i) {
    phi = 0.5 * (phi + std::asin(c[i] / a[i] * std::sin(phi)));
  }
  p.sn = std::sin(phi);
  p.cn = std::cos(phi);
  p.dn = std::sqrt(1.0 - m * m * p.sn * p.sn);
  return p;
}

inline JacobiPoint jacobi_eval(double v, double m) {
  return jacobi_eval(v, Modulus(m));
}

namespace detail {

// Powers with a zero coefficient are dropped so cn^{-1}, cn^{-2} never
// get evaluated.
inline double weighted_power(double coefficient, double base, int exponent) {
  if (coefficient == 0.0) return 0.0;
  return coefficient * std::pow(base, exponent);
}

}  // namespace detail

/// d^order/dxi^order of cn^r(lambda*xi, m), order in {1, 2, 3}, from the
/// closed derivative formulas (no numerical differentiation). p must be
/// jacobi_eval(lambda*xi, m).
inline double cn_power_derivative(int r, int order, double lambda, const JacobiPoint& p) {
  if (r < 1) throw UsageError("cn_power_derivative: r must be >= 1");
  if (order < 1 || order > 3) throw UsageError("cn_power_derivative: order must be 1, 2 or 3");
  const double m2 = p.m * p.m;
  const double cn = p.cn;
  const double rr = r;
  switch (order) {
    case 1:
      return -rr * lambda * detail::weighted_power(1.0, cn, r - 1) * p.sn * p.dn;
    case 2:
      return -rr * lambda * lambda *
             (detail::weighted_power((rr + 1) * m2, cn, r + 2) +
              detail::weighted_power(rr * (1 - 2 * m2), cn, r) +
              detail::weighted_power((rr - 1) * (m2 - 1), cn, r - 2));
    default:
      return rr * lambda * lambda * lambda * p.sn * p.dn *
             (detail::weighted_power((rr + 1) * (rr + 2) * m2, cn, r + 1) +
              detail::weighted_power(rr * rr * (1 - 2 * m2), cn, r - 1) +
              detail::weighted_power((rr - 1) * (rr - 2) * (m2 - 1), cn, r - 3));
  }
}

/// d^order/dxi^order of cn^r(lambda*xi, m), order in {1, 2, 3}.
inline double cn_power_derivative(int r, int order, double lambda, Modulus modulus, double xi) {
  if (r < 1) throw UsageError("cn_power_derivative: r must be >= 1");
  if (order < 1 || order > 3) throw UsageError("cn_power_derivative: order must be 1, 2 or 3");
  return cn_power_derivative(r, order, lambda, jacobi_eval(lambda * xi, modulus));
}

inline double cn_power_derivative(int r, int order, double lambda, double m, double xi) {
  return cn_power_derivative(r, order, lambda, Modulus(m), xi);
}

}  // namespace cnoidal::elliptic
