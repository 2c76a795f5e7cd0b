#pragma once

// Reference parameter sets (one per figure panel), shared by the unit tests and the
// acceptance runner.

#include <cmath>
#include <string>
#include <vector>

#include "cnoidal/reduction.hpp"
#include "cnoidal/solution_families.hpp"

namespace cnoidal::figures {

struct Figure {
  std::string name;
  FamilyRequest request;
  /// m = 1 panels are evaluated through m1_limit.
  bool solitary = false;
};

inline ParameterSet params(Rational a, Rational b, Rational c, Rational d) { return {a, b, c, d, {}}; }

inline FamilyRequest fig1a() {
  return {FamilyTag::S411, params(Rational(-5, 6), 1, Rational(-5, 6), 1), 1, 1, 0.75, {1, 1, SignChoice::Top}};
}
inline FamilyRequest fig1b() {
  return {FamilyTag::S411, params(-7, 2, Rational(4, 3), 4), 1, 1, 0.25, {-1, 1, SignChoice::Top}};
}
inline FamilyRequest fig2a() {
  return {FamilyTag::S412, params(1, Rational(-8, 3), 1, 1), 1, 1, std::sqrt(0.5), {1, 1, SignChoice::Top}};
}
inline FamilyRequest fig2b() {
  return {FamilyTag::S412, params(0, -1, Rational(-2, 3), 2), 0.5, -1.0 / 3.0, 0.25, {1, 1, SignChoice::Bottom}};
}
inline FamilyRequest fig3a() {
  return {FamilyTag::S421, params(1, -1, 0, Rational(1, 3)), 0.5, -2, 0.5, {}};
}
inline FamilyRequest fig3b() {
  return {FamilyTag::S421, params(0, Rational(1, 6), 0, Rational(1, 6)), 1, 1, 0.9, {}};
}
inline FamilyRequest fig4a() {
  return {FamilyTag::S422, params(Rational(-11, 3), 2, 0, 2), 1, -1, std::sqrt(0.5), {}};
}
inline FamilyRequest fig4b() {
  return {FamilyTag::S422, params(0, Rational(-5, 3), 0, 2), 2, 0.125, 0.75, {}};
}
inline FamilyRequest fig6b(int tau1 = 1, int tau2 = -1) {
  return {FamilyTag::S411, params(Rational(-5, 6), 1, Rational(-1, 6), Rational(1, 3)), 1, 1, 1.0,
          {tau1, tau2, SignChoice::Top}};
}

/// The eight cnoidal panels.
inline std::vector<Figure> cnoidal_panels() {
  return {{"1a", fig1a()}, {"1b", fig1b()}, {"2a", fig2a()}, {"2b", fig2b()},
          {"3a", fig3a()}, {"3b", fig3b()}, {"4a", fig4a()}, {"4b", fig4b()}};
}

/// The m = 1 panels: limits of 2a, 4a and 3b, and 4.1.1 at m = 1.
inline std::vector<Figure> solitary_panels() {
  return {{"5a", fig2a(), true}, {"5b", fig4a(), true}, {"6a", fig3b(), true}, {"6b", fig6b(), true}};
}

struct ClassificationCase {
  ParameterSet params;
  ShapeKind expected;
  int eta_degree;
  int w_degree;
};

/// 20 rational points, five per region, with the expected shape written out
/// by hand.
inline std::vector<ClassificationCase> classification_grid() {
  using Q = Rational;
  const auto G = ShapeKind::GenericQuadratic, S = ShapeKind::SemiTrivialEtaConstant,
             Qw = ShapeKind::QuarticEtaQuadraticW, T = ShapeKind::TrivialOnly;
  return {
      {params(Q(-5, 6), 1, Q(-5, 6), 1), G, 2, 2},
      {params(-7, 2, Q(4, 3), 4), G, 2, 2},
      {params(1, Q(-8, 3), 1, 1), G, 2, 2},
      {params(0, -1, Q(-2, 3), 2), G, 2, 2},
      {params(Q(1, 7), 0, Q(1, 2), 0), G, 2, 2},
      {params(0, 0, Q(1, 2), Q(-1, 6)), S, 0, 2},
      {params(0, 0, Q(1, 2), 0), S, 0, 2},
      {params(0, 0, -3, Q(5, 2)), S, 0, 2},
      {params(0, 0, Q(1, 1000), Q(1, 3)), S, 0, 2},
      {params(0, 0, Q(-2, 3), 2), S, 0, 2},
      {params(1, -1, 0, Q(1, 3)), Qw, 4, 2},
      {params(0, Q(1, 6), 0, Q(1, 6)), Qw, 4, 2},
      {params(Q(-11, 3), 2, 0, 2), Qw, 4, 2},
      {params(0, 0, 0, Q(1, 3)), Qw, 4, 2},
      {params(Q(1, 3), Q(2, 5), 0, 0), Qw, 4, 2},
      {params(Q(1, 3), 0, 0, 0), T, 0, 0},
      {params(0, 0, 0, 0), T, 0, 0},
      {params(5, 0, 0, 0), T, 0, 0},
      {params(Q(7, 9), 0, 0, 0), T, 0, 0},
      {params(Q(1, 100), 0, 0, 0), T, 0, 0},
  };
}

}  // namespace cnoidal::figures
