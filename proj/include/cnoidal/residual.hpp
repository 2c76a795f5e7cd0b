#pragma once

// Numerical ground truth for solutions: the traveling-wave ODE residuals
//
//   eq1 = -sigma eta' + w' + (eta w)' + a w''' + b sigma eta'''
//   eq2 = -sigma w' + eta' + w w' + c eta''' + d sigma w'''
//
// evaluated with the elliptic kernel only. Nothing here touches the symbolic
// cn algebra, so an algebra bug and a family/solver bug cannot cancel.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "cnoidal/elliptic.hpp"
#include "cnoidal/errors.hpp"
#include "cnoidal/parameters.hpp"
#include "cnoidal/solution_families.hpp"

namespace cnoidal {

struct ResidualReport {
  double max_abs_eq1 = 0.0;
  double max_abs_eq2 = 0.0;
  /// Largest magnitude of any single term of either equation.
  double scale = 0.0;
  double relative = 0.0;
  int n_samples = 0;
  /// Sampled window length: 4K(m)/lambda, or the sech window width at m = 1.
  double period = 0.0;
};

/// Value and first three xi-derivatives of sum_r c_r cn^r(lambda xi, m).
struct ProfileJet {
  double value = 0.0;
  std::array<double, 4> d{};  // d[1..3]
};

namespace detail {

inline constexpr double kSolitaryHalfWidth = 16.0;

template <std::size_t N>
ProfileJet profile_jet(const std::array<double, N>& coeffs, double lambda, const elliptic::JacobiPoint& p) {
  ProfileJet jet;
  jet.value = coeffs[0];
  double cn_pow = 1.0;
  for (std::size_t r = 1; r < N; ++r) {
    cn_pow *= p.cn;
    if (coeffs[r] == 0.0) continue;
    jet.value += coeffs[r] * cn_pow;
    for (int order = 1; order <= 3; ++order) {
      jet.d[order] += coeffs[r] * elliptic::cn_power_derivative(static_cast<int>(r), order, lambda, p);
    }
  }
  return jet;
}

}  // namespace detail

inline double profile_eta(const SolutionParams& s, double xi) {
  return detail::profile_jet(s.j, s.lambda, elliptic::jacobi_eval(s.lambda * xi, s.m)).value;
}

inline double profile_w(const SolutionParams& s, double xi) {
  return detail::profile_jet(s.k, s.lambda, elliptic::jacobi_eval(s.lambda * xi, s.m)).value;
}

/// Period 4K(m)/lambda of the profile (m < 1).
inline double profile_period(const SolutionParams& s) {
  return 4.0 * elliptic::complete_k(s.m) / s.lambda;
}

/// Samples n_samples points uniformly over one period [0, 4K/lambda) plus the
/// four quarter-period points where sn*dn vanishes or cn does. At m = 1 the
/// window is [-16/lambda, 16/lambda] around the crest instead.
inline ResidualReport ode_residual(const SolutionParams& s, const ParameterSet& p, int n_samples = 1024) {
  if (n_samples < 64) throw UsageError("ode_residual: at least 64 samples required");
  const double a = p.a_as(), b = p.b_as(), c = p.c_as(), d = p.d_as();
  const double sigma = s.sigma;

  std::vector<double> xs;
  xs.reserve(n_samples + 4);
  ResidualReport rep;
  rep.n_samples = n_samples;
  if (s.m < 1.0) {
    const double quarter = elliptic::complete_k(s.m) / s.lambda;
    rep.period = 4.0 * quarter;
    for (int i = 0; i < n_samples; ++i) xs.push_back(rep.period * i / n_samples);
    for (int q = 0; q < 4; ++q) xs.push_back(q * quarter);
  } else {
    const double half = detail::kSolitaryHalfWidth / s.lambda;
    rep.period = 2.0 * half;
    for (int i = 0; i < n_samples; ++i) xs.push_back(-half + rep.period * i / (n_samples - 1));
    xs.push_back(0.0);
  }

  for (double xi : xs) {
    const auto point = elliptic::jacobi_eval(s.lambda * xi, s.m);
    const ProfileJet eta = detail::profile_jet(s.j, s.lambda, point);
    const ProfileJet w = detail::profile_jet(s.k, s.lambda, point);
    const std::array<double, 5> t1 = {-sigma * eta.d[1], w.d[1], eta.d[1] * w.value + eta.value * w.d[1],
                                      a * w.d[3], b * sigma * eta.d[3]};
    const std::array<double, 5> t2 = {-sigma * w.d[1], eta.d[1], w.value * w.d[1], c * eta.d[3],
                                      d * sigma * w.d[3]};
    double e1 = 0.0, e2 = 0.0;
    for (double t : t1) {
      e1 += t;
      rep.scale = std::max(rep.scale, std::abs(t));
    }
    for (double t : t2) {
      e2 += t;
      rep.scale = std::max(rep.scale, std::abs(t));
    }
    rep.max_abs_eq1 = std::max(rep.max_abs_eq1, std::abs(e1));
    rep.max_abs_eq2 = std::max(rep.max_abs_eq2, std::abs(e2));
  }
  rep.relative = rep.scale > 0.0 ? std::max(rep.max_abs_eq1, rep.max_abs_eq2) / rep.scale : 0.0;
  return rep;
}

struct PeriodicityReport {
  double period = 0.0;
  /// max |eta(xi+T) - eta(xi)| + |w(xi+T) - w(xi)| over the test points.
  double defect = 0.0;
  double half_period_defect = 0.0;
  bool half_periodic = false;
};

inline PeriodicityReport periodicity_check(const SolutionParams& s, int n_points = 257) {
  if (s.m >= 1.0) throw DomainError("periodicity_check: no finite period at m = 1");
  PeriodicityReport rep;
  rep.period = profile_period(s);
  double amplitude = 0.0;
  for (int i = 0; i < n_points; ++i) {
    const double xi = -rep.period + 3.0 * rep.period * i / (n_points - 1);
    const double e0 = profile_eta(s, xi), w0 = profile_w(s, xi);
    amplitude = std::max({amplitude, std::abs(e0), std::abs(w0)});
    rep.defect = std::max(rep.defect, std::abs(profile_eta(s, xi + rep.period) - e0) +
                                          std::abs(profile_w(s, xi + rep.period) - w0));
    const double h = 0.5 * rep.period;
    rep.half_period_defect = std::max(rep.half_period_defect,
                                      std::abs(profile_eta(s, xi + h) - e0) + std::abs(profile_w(s, xi + h) - w0));
  }
  rep.half_periodic = rep.half_period_defect <= 1e-9 * std::max(1.0, amplitude);
  return rep;
}

/// Residual of the full system for an eta == -1 solution with a = b = 0:
/// the first equation collapses to w' - w' = 0 and the second is the BBM
/// equation in w. c is arbitrary since eta''' = 0.
inline ResidualReport bbm_reduction_check(const SolutionParams& s, const Rational& d, int n_samples = 1024) {
  const bool is_bbm = s.family == FamilyTag::S43 ||
                      (s.family == FamilyTag::SolitaryLimit && s.limit_of == FamilyTag::S43);
  if (!is_bbm) throw UsageError("bbm_reduction_check: expects an eta = -1 (4.3) solution");
  ParameterSet p{0, 0, 0, d, {}};
  return ode_residual(s, p, n_samples);
}

enum class LimitKind { CToZero, AToZero, MToOne };

inline std::string_view limit_name(LimitKind kind) {
  switch (kind) {
    case LimitKind::CToZero: return "c_to_zero";
    case LimitKind::AToZero: return "a_to_zero";
    case LimitKind::MToOne: return "m_to_one";
  }
  return "?";
}

inline LimitKind parse_limit(std::string_view name) {
  for (LimitKind k : {LimitKind::CToZero, LimitKind::AToZero, LimitKind::MToOne}) {
    if (limit_name(k) == name) return k;
  }
  throw UsageError("unknown limit kind '" + std::string(name) + "'");
}

struct ConvergenceRow {
  /// Distance of the limit parameter from its limit value (c, a or 1 - m).
  double parameter = 0.0;
  /// Max absolute coefficient difference against the target family.
  double error = 0.0;
};

struct ConvergenceTable {
  LimitKind kind = LimitKind::CToZero;
  FamilyTag source = FamilyTag::S412;
  FamilyTag target = FamilyTag::S422;
  std::vector<ConvergenceRow> rows;
  bool monotone = true;
  /// Least-squares slope of log(error) against log(parameter).
  double order = 0.0;
  /// Error exactly at the limit when the source family can be evaluated there.
  std::optional<double> at_limit;
};

namespace detail {

template <class T>
double coefficient_distance(const BasicSolution<T>& x, const BasicSolution<T>& y) {
  T worst = 0;
  for (std::size_t i = 0; i < x.j.size(); ++i) worst = std::max<T>(worst, abs_of<T>(x.j[i] - y.j[i]));
  for (std::size_t i = 0; i < x.k.size(); ++i) worst = std::max<T>(worst, abs_of<T>(x.k[i] - y.k[i]));
  return static_cast<double>(worst);
}

inline void finish_table(ConvergenceTable& table) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (i > 0 && !(table.rows[i].error < table.rows[i - 1].error)) table.monotone = false;
    if (table.rows[i].error > 0 && table.rows[i].parameter > 0) {
      const double x = std::log(table.rows[i].parameter), y = std::log(table.rows[i].error);
      sx += x, sy += y, sxx += x * x, sxy += x * y;
      ++n;
    }
  }
  if (n >= 2 && n * sxx - sx * sx != 0) table.order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline Rational power_of_ten(int exponent) {
  Rational ten_pow = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
  return exponent < 0 ? Rational(1 / ten_pow) : ten_pow;
}

}  // namespace detail

/// Tabulates how a family approaches its limiting family:
///   CToZero  4.1.2 (bottom signs) at c = 1e-3..1e-8  ->  4.2.2, needs sigma (b - 2d) > 0
///   AToZero  4.2.2 at a = 1e-2..1e-7                ->  4.3, plus the exact a = 0 row
///   MToOne   req.family at m = 1 - 1e-2..1e-7       ->  its m = 1 solitary limit
/// CToZero is evaluated in 50-digit arithmetic: the j0 formula divides by c^2.
inline ConvergenceTable limit_consistency(LimitKind kind, const FamilyRequest& req) {
  using Wide = boost::multiprecision::cpp_bin_float_50;
  ConvergenceTable table;
  table.kind = kind;
  switch (kind) {
    case LimitKind::CToZero: {
      const Rational side = Rational(req.sigma) * (req.params.b - 2 * req.params.d);
      if (!(side > 0)) throw DomainError("c -> 0 limit requires sigma (b - 2d) > 0");
      table.source = FamilyTag::S412;
      table.target = FamilyTag::S422;
      ParameterSet at_zero = req.params;
      at_zero.c = 0;
      const auto target = build_4_2_2<Wide>(at_zero, Wide(req.lambda), Wide(req.sigma), Wide(req.m));
      for (int e = 3; e <= 8; ++e) {
        ParameterSet near = req.params;
        near.c = detail::power_of_ten(-e);
        const auto source =
            build_4_1_2<Wide>(near, Wide(req.lambda), Wide(req.sigma), Wide(req.m), SignChoice::Bottom);
        table.rows.push_back({std::pow(10.0, -e), detail::coefficient_distance(source, target)});
      }
      break;
    }
    case LimitKind::AToZero: {
      table.source = FamilyTag::S422;
      table.target = FamilyTag::S43;
      const auto target = build_4_3<Wide>(req.params.d, Wide(req.lambda), Wide(req.sigma), Wide(req.m));
      ParameterSet p = req.params;
      p.c = 0;
      for (int e = 2; e <= 7; ++e) {
        p.a = detail::power_of_ten(-e);
        const auto source = build_4_2_2<Wide>(p, Wide(req.lambda), Wide(req.sigma), Wide(req.m));
        table.rows.push_back({std::pow(10.0, -e), detail::coefficient_distance(source, target)});
      }
      p.a = 0;
      table.at_limit =
          detail::coefficient_distance(to_double(build_4_2_2<Wide>(p, Wide(req.lambda), Wide(req.sigma), Wide(req.m))),
                                       to_double(target));
      break;
    }
    case LimitKind::MToOne: {
      table.source = req.family;
      table.target = FamilyTag::SolitaryLimit;
      const SolitaryParams target = m1_limit(req);
      for (int e = 2; e <= 7; ++e) {
        const double m = 1.0 - std::pow(10.0, -e);
        const auto source = build_family<double>(req, m);
        table.rows.push_back({1.0 - m, detail::coefficient_distance(source, target)});
      }
      table.at_limit = 0.0;
      break;
    }
  }
  detail::finish_table(table);
  return table;
}

}  // namespace cnoidal
