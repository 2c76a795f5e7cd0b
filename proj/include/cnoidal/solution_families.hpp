#pragma once

// Closed-form cnoidal solution families of the abcd-system
//
//   eta(xi) = sum_r j_r cn^r(lambda xi, m),   w(xi) = sum_r k_r cn^r(lambda xi, m)
//
// Family tags:
//   S411  c != 0, eta and w quadratic in cn incl. odd powers; lambda, sigma are outputs
//   S412  c != 0, even powers only; lambda, sigma, m free
//   S421  c == 0, eta quartic in cn, w quadratic
//   S422  c == 0, both quadratic in cn
//   S43   eta == -1 (a = b = 0), w quadratic: the BBM-type semi-trivial branch
//
// All builders are templated on the scalar so that limits which suffer
// catastrophic cancellation (c -> 0 in S412) can be evaluated in extended
// precision.

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "cnoidal/errors.hpp"
#include "cnoidal/parameters.hpp"
#include "cnoidal/rational.hpp"

namespace cnoidal {

enum class FamilyTag { S411, S412, S421, S422, S43, SolitaryLimit };
enum class SignChoice { Top, Bottom };

struct BranchSelector {
  int tau1 = 1;
  int tau2 = 1;
  SignChoice pm = SignChoice::Top;

  friend bool operator==(const BranchSelector&, const BranchSelector&) = default;
};

template <class T>
struct BasicSolution {
  std::array<T, 5> j{};
  std::array<T, 3> k{};
  T lambda{1};
  T m{1};
  T sigma{1};
  FamilyTag family = FamilyTag::S412;
  BranchSelector branch;
  /// Set on m = 1 solitary limits: the family the limit was taken from.
  std::optional<FamilyTag> limit_of;
};

using SolutionParams = BasicSolution<double>;
using SolitaryParams = SolutionParams;

template <class T>
SolutionParams to_double(const BasicSolution<T>& s) {
  SolutionParams out;
  for (std::size_t i = 0; i < s.j.size(); ++i) out.j[i] = static_cast<double>(s.j[i]);
  for (std::size_t i = 0; i < s.k.size(); ++i) out.k[i] = static_cast<double>(s.k[i]);
  out.lambda = static_cast<double>(s.lambda);
  out.m = static_cast<double>(s.m);
  out.sigma = static_cast<double>(s.sigma);
  out.family = s.family;
  out.branch = s.branch;
  out.limit_of = s.limit_of;
  return out;
}

inline std::string_view family_name(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::S411: return "4.1.1";
    case FamilyTag::S412: return "4.1.2";
    case FamilyTag::S421: return "4.2.1";
    case FamilyTag::S422: return "4.2.2";
    case FamilyTag::S43: return "4.3";
    case FamilyTag::SolitaryLimit: return "solitary";
  }
  return "?";
}

inline FamilyTag parse_family(std::string_view name) {
  for (FamilyTag tag : {FamilyTag::S411, FamilyTag::S412, FamilyTag::S421, FamilyTag::S422, FamilyTag::S43,
                        FamilyTag::SolitaryLimit}) {
    if (family_name(tag) == name) return tag;
  }
  if (name == "S411") return FamilyTag::S411;
  if (name == "S412") return FamilyTag::S412;
  if (name == "S421") return FamilyTag::S421;
  if (name == "S422") return FamilyTag::S422;
  if (name == "S43") return FamilyTag::S43;
  throw UsageError("unknown solution family '" + std::string(name) + "'");
}

namespace detail {

inline constexpr double kDenominatorTolerance = 1e-12;

template <class T>
T abs_of(const T& x) {
  using std::abs;
  return abs(x);
}

template <class T>
T sqrt_of(const T& x) {
  using std::sqrt;
  return sqrt(x);
}

/// Rejects |value| <= 1e-12 * scale, where scale is the magnitude of the
/// terms that make up the denominator.
template <class T>
void require_denominator(std::string_view name, const T& value, const T& scale) {
  if (abs_of(value) <= T(kDenominatorTolerance) * scale) {
    throw DomainError("vanishing denominator: " + std::string(name) + " = 0");
  }
}

inline void require_nonzero(std::string_view name, const Rational& value) {
  if (value == 0) throw DomainError("vanishing denominator: " + std::string(name) + " = 0");
}

template <class T>
void require_free_parameters(const T& lambda, const T& sigma, const T& m) {
  if (m == T(0)) throw DomainError("m=0 excluded: the ansatz degenerates to a cosine series");
  if (!(m > T(0) && m <= T(1))) throw DomainError("m must lie in (0, 1]");
  if (!(lambda > T(0))) throw DomainError("lambda must be positive");
  if (sigma == T(0)) throw DomainError("sigma must be nonzero");
}

template <class T>
void require_modulus(const T& m) {
  if (m == T(0)) throw DomainError("m=0 excluded: the ansatz degenerates to a cosine series");
  if (!(m > T(0) && m <= T(1))) throw DomainError("m must lie in (0, 1]");
}

}  // namespace detail

/// Family S411. lambda and sigma are determined by (a, b, c, d, m, tau1).
/// Requires a c (b - 6d)(3b - 2d) < 0, c (2m^2 - 1)(b + 2d)(3b + 2d) < 0 and
/// (2m^2 - 1)(3b + 2d)(b - d) >= 0.
template <class T = double>
BasicSolution<T> build_4_1_1(const ParameterSet& p, const T& m, int tau1, int tau2) {
  using detail::sqrt_of;
  if (tau1 != 1 && tau1 != -1) throw UsageError("tau1 must be +1 or -1");
  if (tau2 != 1 && tau2 != -1) throw UsageError("tau2 must be +1 or -1");
  detail::require_modulus(m);
  detail::require_nonzero("c", p.c);
  detail::require_nonzero("b - 6d", p.b - 6 * p.d);
  detail::require_nonzero("3b - 2d", 3 * p.b - 2 * p.d);
  detail::require_nonzero("b + 2d", p.b + 2 * p.d);

  const Rational b6d = p.b - 6 * p.d;
  const Rational b3d2 = 3 * p.b - 2 * p.d;
  const Rational b3p2 = 3 * p.b + 2 * p.d;
  const Rational first_radicand_q = -2 * p.a * p.c * b6d * b3d2;
  if (!(p.a * p.c * b6d * b3d2 < 0)) throw DomainError("validity violated: a c (b - 6d)(3b - 2d) < 0");

  const T m2 = m * m;
  const T mm = T(2) * m2 - T(1);
  detail::require_denominator("2m^2 - 1", mm, T(2) * m2 + T(1));

  const T a = p.a_as<T>(), b = p.b_as<T>(), c = p.c_as<T>(), d = p.d_as<T>();
  const T B6D = to_scalar<T>(b6d), B3D2 = to_scalar<T>(b3d2), B3P2 = to_scalar<T>(b3p2);
  if (!(c * mm * (b + T(2) * d) * B3P2 < T(0))) {
    throw DomainError("validity violated: c (2m^2 - 1)(b + 2d)(3b + 2d) < 0");
  }
  const T second_radicand = mm * B3P2 * to_scalar<T>(p.b - p.d);
  if (second_radicand < T(0)) throw DomainError("validity violated: (2m^2 - 1)(3b + 2d)(b - d) >= 0");

  const T first_root = sqrt_of(to_scalar<T>(first_radicand_q));
  const T second_root = sqrt_of(second_radicand);
  const T common = c * B6D * B3D2;

  BasicSolution<T> s;
  s.family = FamilyTag::S411;
  s.branch = BranchSelector{tau1, tau2, SignChoice::Top};
  s.m = m;
  const Rational j0 = -(p.a * b3p2 * (21 * p.b - 46 * p.d) + 2 * p.c * b3d2 * b6d) / (2 * p.c * b3d2 * b6d);
  s.j[0] = to_scalar<T>(j0);
  s.j[1] = -T(tau1 * tau2) * T(12) * a * m * B3P2 * second_root / (common * mm);
  s.j[2] = T(9) * a * m2 * B3P2 / (c * B3D2 * mm);
  s.k[0] = T(tau1) * to_scalar<T>(21 * p.b + 8 * p.c + 14 * p.d) * first_root / (T(2) * common);
  s.k[1] = T(tau2) * T(6) * m * first_root * second_root / (common * mm);
  s.k[2] = -T(tau1) * T(9) * m2 * B3P2 * first_root / (common * mm);
  s.lambda = sqrt_of(-T(6) * B3P2 / (c * mm * (b + T(2) * d))) / T(2);
  s.sigma = T(tau1) * T(4) * first_root / (B6D * B3D2);
  return s;
}

/// Family S412 (j1 = k1 = 0); requires 8ac + sigma^2 (b - 2d)^2 > 0. The
/// +-/-+ signs inside the formulas are chosen together (Top or Bottom).
template <class T = double>
BasicSolution<T> build_4_1_2(const ParameterSet& p, const T& lambda, const T& sigma, const T& m, SignChoice pm) {
  using detail::abs_of;
  using detail::sqrt_of;
  detail::require_free_parameters(lambda, sigma, m);
  detail::require_nonzero("c", p.c);
  const T a = p.a_as<T>(), b = p.b_as<T>(), c = p.c_as<T>(), d = p.d_as<T>();
  const T s = pm == SignChoice::Top ? T(1) : T(-1);
  const T l2 = lambda * lambda, m2 = m * m;
  const T sg = sigma, sg2 = sigma * sigma, sg4 = sg2 * sg2;

  const T radicand = T(8) * a * c + sg2 * (b - T(2) * d) * (b - T(2) * d);
  if (!(radicand > T(0))) throw DomainError("validity violated: 8ac + sigma^2 (b - 2d)^2 > 0");
  const T root = sqrt_of(radicand);

  const T j_bracket = T(4) * a * c + sg2 * (b * b + T(4) * d * d) + s * sg * (b + T(2) * d) * root;
  detail::require_denominator("4ac + sigma^2 (b^2 + 4d^2) +- sigma (b + 2d) sqrt(8ac + sigma^2 (b - 2d)^2)",
                              j_bracket,
                              abs_of(T(4) * a * c) + sg2 * (b * b + T(4) * d * d) + abs_of(sg * (b + T(2) * d) * root));
  const T k_bracket = sg * (b + T(2) * d) + s * root;
  detail::require_denominator("sigma (b + 2d) +- sqrt(8ac + sigma^2 (b - 2d)^2)", k_bracket,
                              abs_of(sg * (b + T(2) * d)) + root);

  const T b2 = b * b, b3 = b2 * b, b4 = b2 * b2;
  const T c2 = c * c, c3 = c2 * c;
  const T d2 = d * d;
  const T a2 = a * a;
  const T l2m2 = l2 * m2;

  const T j_main = -T(8) * b4 * c * l2m2 * sg4 + T(16) * b3 * c * d * l2m2 * sg4 - T(64) * a * b2 * c2 * l2m2 * sg2 -
                   T(32) * a * b * c2 * d * l2m2 * sg2 - T(64) * a * c2 * d2 * l2m2 * sg2 + T(4) * b4 * c * l2 * sg4 -
                   T(8) * b3 * c * d * l2 * sg4 - T(64) * a2 * c3 * l2m2 + T(32) * a * b2 * c2 * l2 * sg2 +
                   T(16) * a * b * c2 * d * l2 * sg2 + T(32) * a * c2 * d2 * l2 * sg2 + b4 * sg4 -
                   T(4) * b3 * d * sg4 + T(4) * b2 * d2 * sg4 + T(32) * a2 * c3 * l2 + T(8) * a * b2 * c * sg2 -
                   T(8) * a * b * c * d * sg2 - T(4) * b2 * c2 * sg2 - T(16) * c2 * d2 * sg2 + T(8) * a2 * c2 -
                   T(16) * a * c3;
  const T j_root_part = T(8) * b3 * c * l2m2 * sg2 + T(32) * a * b * c2 * l2m2 + T(32) * a * c2 * d * l2m2 -
                        T(4) * b3 * c * l2 * sg2 - T(16) * a * b * c2 * l2 - T(16) * a * c2 * d * l2 - b3 * sg2 +
                        T(2) * b2 * d * sg2 - T(4) * a * b * c + T(4) * b * c2 + T(8) * c2 * d;

  const T k_main = -T(8) * b2 * c * l2m2 * sg2 - T(32) * c * d2 * l2m2 * sg2 - T(32) * a * c2 * l2m2 +
                   T(4) * b2 * c * l2 * sg2 + T(16) * c * d2 * l2 * sg2 + T(16) * a * l2 * c2 - b2 * sg2 +
                   T(2) * b * c * sg2 + T(2) * b * d * sg2 + T(4) * c * d * sg2 - T(4) * a * c;
  const T k_root_part = T(8) * b * c * l2m2 + T(16) * c * d * l2m2 - T(4) * b * c * l2 - T(8) * c * d * l2 + b - T(2) * c;

  BasicSolution<T> out;
  out.family = FamilyTag::S412;
  out.branch = BranchSelector{1, 1, pm};
  out.lambda = lambda;
  out.sigma = sigma;
  out.m = m;
  out.j[0] = (j_main - s * sg * root * j_root_part) / (T(4) * c2 * j_bracket);
  out.j[2] = T(3) * l2m2 / (T(2) * c) * (T(4) * a * c + b * sg2 * (b - T(2) * d) + s * b * sg * root);
  out.k[0] = (k_main - s * sg * root * k_root_part) / (T(2) * c * k_bracket);
  out.k[2] = T(3) * l2m2 * k_bracket;
  return out;
}

/// Family S421 (c = 0): eta = j0 + j2 cn^2 + j4 cn^4, w = k0 + k2 cn^2.
template <class T = double>
BasicSolution<T> build_4_2_1(const ParameterSet& p, const T& lambda, const T& sigma, const T& m) {
  detail::require_free_parameters(lambda, sigma, m);
  if (p.c != 0) throw DomainError("family 4.2.1 requires c = 0");
  detail::require_nonzero("4b - d", 4 * p.b - p.d);
  const T a = p.a_as<T>(), b = p.b_as<T>(), d = p.d_as<T>();
  const T l2 = lambda * lambda, l4 = l2 * l2, m2 = m * m, m4 = m2 * m2;
  const T sg2 = sigma * sigma, sg4 = sg2 * sg2;
  const T f = to_scalar<T>(4 * p.b - p.d);
  const T g = to_scalar<T>(5 * p.b - 3 * p.d);
  const T mm = T(2) * m2 - T(1);

  BasicSolution<T> s;
  s.family = FamilyTag::S421;
  s.lambda = lambda;
  s.sigma = sigma;
  s.m = m;
  // Leading coefficient -8 comes from solving the reduced coefficient system
  // directly; -32 in its place leaves an O(lambda^4 sigma^2) residual.
  s.j[0] = (-T(8) * b * l4 * sg4 * f * f * g * (T(11) * m4 - T(11) * m2 - T(4)) +
            T(3) * sg2 * f * (T(3) * d - T(4) * b * (T(3) + T(5) * a * l2 * mm)) + T(9) * a * a) /
           (T(9) * sg2 * f * f);
  s.j[2] = T(20) * b * l2 * m2 * (T(3) * a + T(4) * l2 * sg2 * f * g * mm) / (T(3) * f);
  s.j[4] = -T(40) * b * l4 * m4 * sg2 * g;
  s.k[0] = (-T(3) * a + sg2 * f * (T(3) - T(20) * b * l2 * mm)) / (T(3) * sigma * f);
  s.k[2] = T(20) * b * l2 * m2 * sigma;
  return s;
}

/// Family S422 (c = 0): eta = j0 + j2 cn^2, w = k0 + k2 cn^2.
template <class T = double>
BasicSolution<T> build_4_2_2(const ParameterSet& p, const T& lambda, const T& sigma, const T& m) {
  detail::require_free_parameters(lambda, sigma, m);
  if (p.c != 0) throw DomainError("family 4.2.2 requires c = 0");
  detail::require_nonzero("b - 2d", p.b - 2 * p.d);
  const T a = p.a_as<T>(), d = p.d_as<T>();
  const T l2 = lambda * lambda, m2 = m * m, sg2 = sigma * sigma;
  const T e = to_scalar<T>(p.b - 2 * p.d);
  const T b = p.b_as<T>();
  const T mm = T(2) * m2 - T(1);

  BasicSolution<T> s;
  s.family = FamilyTag::S422;
  s.lambda = lambda;
  s.sigma = sigma;
  s.m = m;
  s.j[0] = (a * a - sg2 * e * (b - T(2) * d * (T(1) + T(2) * a * l2 * mm))) / (sg2 * e * e);
  s.j[2] = -T(12) * a * d * l2 * m2 / e;
  s.k[0] = (a + sg2 * e * (T(1) - T(4) * d * l2 * mm)) / (sigma * e);
  s.k[2] = T(12) * d * l2 * m2 * sigma;
  return s;
}

/// Family S43: eta = -1 and w = k0 + k2 cn^2 (a = b = 0).
template <class T = double>
BasicSolution<T> build_4_3(const Rational& d_value, const T& lambda, const T& sigma, const T& m) {
  detail::require_free_parameters(lambda, sigma, m);
  const T d = to_scalar<T>(d_value);
  const T l2 = lambda * lambda, m2 = m * m;
  BasicSolution<T> s;
  s.family = FamilyTag::S43;
  s.lambda = lambda;
  s.sigma = sigma;
  s.m = m;
  s.j[0] = T(-1);
  s.k[0] = -T(8) * d * l2 * m2 * sigma + T(4) * d * l2 * sigma + sigma;
  s.k[2] = T(12) * d * l2 * m2 * sigma;
  return s;
}

/// Uniform description of a family evaluation, used by the CLI, the limit
/// checks and the property tests.
struct FamilyRequest {
  FamilyTag family = FamilyTag::S412;
  ParameterSet params;
  double lambda = 1.0;
  double sigma = 1.0;
  double m = 1.0;
  BranchSelector branch;
};

template <class T = double>
BasicSolution<T> build_family(const FamilyRequest& req, const T& m) {
  const T lambda = T(req.lambda), sigma = T(req.sigma);
  switch (req.family) {
    case FamilyTag::S411: return build_4_1_1<T>(req.params, m, req.branch.tau1, req.branch.tau2);
    case FamilyTag::S412: return build_4_1_2<T>(req.params, lambda, sigma, m, req.branch.pm);
    case FamilyTag::S421: return build_4_2_1<T>(req.params, lambda, sigma, m);
    case FamilyTag::S422: return build_4_2_2<T>(req.params, lambda, sigma, m);
    case FamilyTag::S43: return build_4_3<T>(req.params.d, lambda, sigma, m);
    case FamilyTag::SolitaryLimit: break;
  }
  throw UsageError("build_family: a solitary limit is not a family; use m1_limit");
}

inline SolutionParams build_family(const FamilyRequest& req) {
  return build_family<double>(req, req.m);
}

/// The m = 1 (sech-profile) limit of a family: the family formulas evaluated
/// at m = 1, where cn(v, 1) = sech(v).
inline SolitaryParams m1_limit(const FamilyRequest& req) {
  FamilyRequest at_one = req;
  at_one.m = 1.0;
  SolitaryParams s = build_family(at_one);
  s.limit_of = s.family;
  s.family = FamilyTag::SolitaryLimit;
  return s;
}

}  // namespace cnoidal
