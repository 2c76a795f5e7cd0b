#include <gtest/gtest.h>

#include "cnoidal/reduction.hpp"
#include "cnoidal/residual.hpp"
#include "figures.hpp"

using namespace cnoidal;

namespace {

std::vector<std::string> first_steps(const DegreeCheck& check) {
  std::vector<std::string> out;
  for (const auto& s : check.branches.front().steps) out.push_back(s.kind + ":" + var_name(s.variable) + "@" + s.equation);
  return out;
}

ParameterPattern pattern(std::optional<Rational> a, std::optional<Rational> b, std::optional<Rational> c,
                         std::optional<Rational> d) {
  return {a, b, c, d};
}

}  // namespace

TEST(Classify, FigureOneA) {
  const AnsatzShape s = classify_ansatz(figures::params(Rational(-5, 6), 1, Rational(-5, 6), 1));
  EXPECT_EQ(s.kind, ShapeKind::GenericQuadratic);
  EXPECT_EQ(s.max_eta_degree, 2);
  EXPECT_EQ(s.max_w_degree, 2);
}

TEST(Classify, SemiTrivial) {
  EXPECT_EQ(classify_ansatz(figures::params(0, 0, Rational(1, 2), Rational(-1, 6))).kind,
            ShapeKind::SemiTrivialEtaConstant);
}

TEST(Classify, TrivialOnly) {
  const AnsatzShape s = classify_ansatz(figures::params(Rational(1, 3), 0, 0, 0));
  EXPECT_EQ(s.kind, ShapeKind::TrivialOnly);
  EXPECT_EQ(s.max_eta_degree, 0);
  EXPECT_EQ(s.max_w_degree, 0);
}

TEST(Classify, RationalGrid) {
  for (const auto& cs : figures::classification_grid()) {
    const AnsatzShape s = classify_ansatz(cs.params);
    EXPECT_EQ(s.kind, cs.expected) << to_string(cs.params.a) << ' ' << to_string(cs.params.b) << ' '
                                   << to_string(cs.params.c) << ' ' << to_string(cs.params.d);
    EXPECT_EQ(s.max_eta_degree, cs.eta_degree);
    EXPECT_EQ(s.max_w_degree, cs.w_degree);
  }
}

TEST(Classify, TinyButNonzeroIsNotZero) {
  EXPECT_EQ(classify_ansatz(figures::params(0, 0, Rational(1, 1000000000), 1)).kind,
            ShapeKind::SemiTrivialEtaConstant);
}

TEST(Rho, MeasuredMatchesTableUpToSix) {
  for (int ne = 0; ne <= 6; ++ne) {
    for (int nw = 0; nw <= 6; ++nw) {
      if (std::max(ne, nw) < 1) continue;
      EXPECT_EQ(measured_rho(ne, nw), expected_rho(ne, nw)) << ne << ' ' << nw;
    }
  }
}

TEST(Termination, SymbolicCNonzeroDegreeFourStartsWithK4) {
  const TerminationReport rep = verify_termination(ParameterPattern::symbolic(), 4);
  ASSERT_EQ(rep.degrees.size(), 2u);
  const auto steps = first_steps(rep.degrees[1]);
  EXPECT_EQ(steps.front(), "force:k4@h[2,7]");
  EXPECT_TRUE(rep.passed);
  // both factors of h[1,6] are explored
  ASSERT_EQ(rep.degrees[1].branches.size(), 2u);
  EXPECT_EQ(rep.degrees[1].branches[0].steps[1].kind, "branch");
  EXPECT_NE(rep.degrees[1].branches[0].steps[1].variable, rep.degrees[1].branches[1].steps[1].variable);
}

TEST(Termination, SymbolicCZeroDegreeFiveForcesK5ThenJ5) {
  const TerminationReport rep = verify_termination(ParameterPattern::c_zero(), 5);
  const auto steps = first_steps(rep.degrees.back());
  EXPECT_EQ(steps.front(), "force:k5@h[2,9]");
  EXPECT_EQ(steps.back(), "force:j5@h[2,4]");
  EXPECT_EQ(rep.degrees.back().stabilized_eta, 4);
  EXPECT_EQ(rep.degrees.back().stabilized_w, 2);
  ASSERT_EQ(rep.notes.size(), 1u);
}

TEST(Termination, SemiTrivialEndsWithConstantEta) {
  const TerminationReport rep = verify_termination(pattern(Rational(0), Rational(0), std::nullopt, std::nullopt), 3);
  ASSERT_TRUE(rep.passed);
  const DegreeCheck& check = rep.degrees.front();
  EXPECT_EQ(check.stabilized_eta, 0);
  EXPECT_EQ(check.stabilized_w, 2);
  for (const auto& b : check.branches) EXPECT_EQ(b.eta_degree, 0);
}

TEST(Termination, BothShapesPassForThreeToFive) {
  for (const auto& pat : {ParameterPattern::symbolic(), ParameterPattern::c_zero()}) {
    const TerminationReport rep = verify_termination(pat, 5);
    EXPECT_TRUE(rep.passed) << pat.describe();
    for (const auto& d : rep.degrees) {
      EXPECT_TRUE(d.sharp) << pat.describe() << " n=" << d.n;
      EXPECT_TRUE(d.rho_consistent);
    }
  }
}

TEST(Termination, RhoConsistentAlongChainsUpToSix) {
  for (const auto& pat : {ParameterPattern::symbolic(), ParameterPattern::c_zero()}) {
    const TerminationReport rep = verify_termination(pat, 6);
    for (const auto& d : rep.degrees) EXPECT_TRUE(d.rho_consistent) << pat.describe() << " n=" << d.n;
  }
}

TEST(Termination, TrivialCaseWithPositiveA) {
  const TerminationReport rep = verify_termination(figures::params(Rational(1, 3), 0, 0, 0), 4);
  EXPECT_TRUE(rep.passed);
  for (const auto& d : rep.degrees) {
    EXPECT_EQ(d.stabilized_eta, 0);
    EXPECT_EQ(d.stabilized_w, 0);
  }
}

TEST(Termination, TrivialCaseWithSymbolicAStalls) {
  // Closing the chain needs the sign of a; with a symbolic it stops at j2 = -k1^2/2.
  EXPECT_THROW(verify_termination(pattern(std::nullopt, Rational(0), Rational(0), Rational(0)), 3), ChainBrokenError);
}

TEST(Termination, NegativeAWithoutConstraintHasAWave) {
  // b = c = d = 0 with a < 0 (excluded by a + b + c + d = 1/3): the chain stalls
  // because w = sigma + k1 cn, eta = j0 - k1^2 cn^2 / 2 with k1^2 = -4 a lambda^2 m^2
  // really solves the system.
  const ParameterSet p = figures::params(-2, 0, 0, 0);
  EXPECT_THROW(verify_termination(p, 3), ChainBrokenError);
  SolutionParams s;
  s.lambda = 0.8;
  s.m = 0.6;
  s.sigma = 0.3;
  s.k[0] = s.sigma;
  s.k[1] = std::sqrt(8.0) * s.lambda * s.m;
  s.j[2] = -0.5 * s.k[1] * s.k[1];
  s.j[0] = -1.0 + 2.0 * s.lambda * s.lambda * (2 * s.m * s.m - 1);
  EXPECT_LE(ode_residual(s, p).relative, 1e-12);
}

TEST(Termination, StabilizedDegreesNeverExceedClassification) {
  for (const auto& cs : figures::classification_grid()) {
    const TerminationReport rep = verify_termination(cs.params, 4);
    for (const auto& d : rep.degrees) {
      EXPECT_LE(d.stabilized_eta, cs.eta_degree) << to_string(cs.params.a) << ' ' << to_string(cs.params.b) << ' '
                                                 << to_string(cs.params.c) << ' ' << to_string(cs.params.d);
      EXPECT_LE(d.stabilized_w, cs.w_degree);
    }
  }
}

TEST(Termination, BZeroAndDZeroSubcasesAreSharperThanTheTable) {
  // b = c = 0 stops at (2,2); the table allows (4,2).
  const TerminationReport bc = verify_termination(pattern(std::nullopt, Rational(0), Rational(0), std::nullopt), 4);
  EXPECT_EQ(bc.degrees.back().stabilized_eta, 2);
  EXPECT_FALSE(bc.degrees.back().sharp);
  // d = c = 0 reaches (4,2) once n >= 4.
  const TerminationReport dc = verify_termination(pattern(std::nullopt, std::nullopt, Rational(0), Rational(0)), 4);
  EXPECT_TRUE(dc.degrees.back().sharp);
}

TEST(Termination, DegreeBoundsEnforced) {
  EXPECT_THROW(verify_termination(ParameterPattern::symbolic(), 2), UsageError);
  EXPECT_THROW(verify_termination(ParameterPattern::symbolic(), 9), UsageError);
}
