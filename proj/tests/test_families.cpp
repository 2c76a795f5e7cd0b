#include <cmath>

#include <gtest/gtest.h>

#include "cnoidal/parameters.hpp"
#include "cnoidal/residual.hpp"
#include "cnoidal/solution_families.hpp"
#include "figures.hpp"

using namespace cnoidal;
using namespace cnoidal::figures;

namespace {

double residual_of(const SolutionParams& s, const ParameterSet& p) { return ode_residual(s, p).relative; }

std::string domain_message(auto&& f) {
  try {
    f();
  } catch (const DomainError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(PhysicalConstraint, Fig1aParameters) {
  EXPECT_NEAR(check_physical_constraint(params(Rational(-5, 6), 1, Rational(-5, 6), 1)), std::sqrt(2.0 / 3.0), 1e-15);
}

TEST(PhysicalConstraint, Fig3bParameters) {
  EXPECT_NEAR(check_physical_constraint(params(0, Rational(1, 6), 0, Rational(1, 6))), std::sqrt(2.0 / 3.0), 1e-15);
}

TEST(PhysicalConstraint, SumViolated) {
  EXPECT_THROW(check_physical_constraint(params(1, 1, 1, 1)), ConstraintError);
}

TEST(Figures, CnoidalPanelsSolveTheOde) {
  for (const auto& fig : cnoidal_panels()) {
    const SolutionParams s = build_family(fig.request);
    EXPECT_LE(residual_of(s, fig.request.params), 1e-9) << fig.name;
  }
}

TEST(Figures, SolitaryPanelsSolveTheOde) {
  for (const auto& fig : solitary_panels()) {
    const SolitaryParams s = m1_limit(fig.request);
    EXPECT_EQ(s.family, FamilyTag::SolitaryLimit);
    EXPECT_EQ(s.m, 1.0);
    EXPECT_LE(residual_of(s, fig.request.params), 1e-9) << fig.name;
  }
}

TEST(Family411, SingularModulusRejected) {
  const std::string msg = domain_message([] { build_4_1_1(fig1a().params, std::sqrt(0.5), 1, 1); });
  EXPECT_NE(msg.find("2m^2 - 1"), std::string::npos) << msg;
}

TEST(Family411, VanishingDenominatorsNamed) {
  EXPECT_NE(domain_message([] { build_4_1_1(params(1, 6, 1, 1), 0.5, 1, 1); }).find("b - 6d"), std::string::npos);
  EXPECT_NE(domain_message([] { build_4_1_1(params(1, 2, 1, 3), 0.5, 1, 1); }).find("3b - 2d"), std::string::npos);
  EXPECT_NE(domain_message([] { build_4_1_1(params(1, 2, 0, 3), 0.5, 1, 1); }).find("c = 0"), std::string::npos);
}

TEST(Family411, ValidityPredicateReported) {
  // a c (b - 6d)(3b - 2d) > 0
  const std::string msg = domain_message([] { build_4_1_1(params(1, 1, 1, 1), 0.75, 1, 1); });
  EXPECT_NE(msg.find("validity violated"), std::string::npos) << msg;
}

TEST(Family411, TauMustBeUnitSign) {
  EXPECT_THROW(build_4_1_1(fig1a().params, 0.75, 2, 1), UsageError);
}

TEST(Family411, AllFourTauCombinationsAtFigurePoints) {
  for (const auto& base : {fig1a(), fig1b(), fig6b()}) {
    for (int tau1 : {1, -1}) {
      for (int tau2 : {1, -1}) {
        const SolutionParams s = build_4_1_1(base.params, base.m, tau1, tau2);
        EXPECT_LE(residual_of(s, base.params), 1e-9) << tau1 << ' ' << tau2 << " m=" << base.m;
      }
    }
  }
}

TEST(Family411, SigmaCarriesTau1Only) {
  const auto p = fig1b().params;
  EXPECT_EQ(build_4_1_1(p, 0.25, 1, 1).sigma, build_4_1_1(p, 0.25, 1, -1).sigma);
  EXPECT_EQ(build_4_1_1(p, 0.25, 1, 1).sigma, -build_4_1_1(p, 0.25, -1, 1).sigma);
}

TEST(Family411, EqualBAndDRemoveOddPowers) {
  const SolutionParams s = build_family(fig1a());
  EXPECT_EQ(s.j[1], 0.0);
  EXPECT_EQ(s.k[1], 0.0);
}

TEST(Family412, Fig2aValues) {
  const SolutionParams top = build_family(fig2a());
  EXPECT_NEAR(top.j[0], -0.960971, 1e-6);
  EXPECT_NEAR(top.j[2], 1.41953, 1e-5);
  EXPECT_NEAR(top.k[0], 0.802441, 1e-6);
  EXPECT_NEAR(top.k[2], 7.18535, 1e-5);
  EXPECT_EQ(top.j[1], 0.0);
  EXPECT_EQ(top.k[1], 0.0);
  FamilyRequest bottom = fig2a();
  bottom.branch.pm = SignChoice::Bottom;
  EXPECT_LE(residual_of(build_family(bottom), bottom.params), 1e-9);
}

TEST(Family412, Fig2bIsTheBbmFamily) {
  const SolutionParams s = build_family(fig2b());
  EXPECT_NEAR(s.j[0], -1.0, 1e-13);
  EXPECT_NEAR(s.j[2], 0.0, 1e-13);
  const SolutionParams bbm = build_4_3(Rational(2), 0.5, -1.0 / 3.0, 0.25);
  for (int r = 0; r < 3; ++r) EXPECT_NEAR(s.k[r], bbm.k[r], 1e-13) << r;
}

TEST(Family412, NegativeRadicandRejected) {
  const std::string msg = domain_message([] { build_4_1_2(params(-10, 2, 10, 1), 1.0, 0.1, 0.5, SignChoice::Top); });
  EXPECT_NE(msg.find("8ac"), std::string::npos) << msg;
}

TEST(Family412, ZeroModulusExcluded) {
  const std::string msg = domain_message([] { build_4_1_2(fig2a().params, 1.0, 1.0, 0.0, SignChoice::Top); });
  EXPECT_NE(msg.find("m=0 excluded"), std::string::npos);
}

TEST(Family412, MixedSignsBreakTheSolution) {
  // Top j-coefficients with bottom k-coefficients.
  FamilyRequest req = fig2a();
  SolutionParams mixed = build_family(req);
  req.branch.pm = SignChoice::Bottom;
  const SolutionParams bottom = build_family(req);
  mixed.k = bottom.k;
  EXPECT_GT(residual_of(mixed, req.params), 1e-3);
}

TEST(Family421, Fig3aValues) {
  const SolutionParams s = build_family(fig3a());
  EXPECT_NEAR(s.j[4], -3.75, 1e-13);
  EXPECT_NEAR(s.j[0], 7.28895, 1e-5);
  EXPECT_NEAR(s.j[2], -4.71154, 1e-5);
  EXPECT_NEAR(s.k[0], -0.448718, 1e-6);
  EXPECT_NEAR(s.k[2], 2.5, 1e-13);
}

TEST(Family421, PrintedLeadingCoefficientFails) {
  // Negative control: the -32 leading coefficient of j0 leaves a residual.
  for (const auto& req : {fig3a(), fig3b()}) {
    SolutionParams s = build_family(req);
    const double l4 = std::pow(req.lambda, 4), s4 = std::pow(req.sigma, 4), m2 = req.m * req.m;
    const double b = req.params.b_as(), d = req.params.d_as();
    const double f = 4 * b - d, g = 5 * b - 3 * d;
    const double leading = b * l4 * s4 * f * f * g * (11 * m2 * m2 - 11 * m2 - 4) / (9 * req.sigma * req.sigma * f * f);
    s.j[0] += (-32.0 + 8.0) * leading;
    EXPECT_GT(residual_of(s, req.params), 0.1);
  }
}

TEST(Family421, FourBEqualsDRejected) {
  const std::string msg = domain_message([] { build_4_2_1(params(1, Rational(1, 4), 0, 1), 1.0, 1.0, 0.5); });
  EXPECT_NE(msg.find("4b - d"), std::string::npos);
}

TEST(Family421, RequiresCZero) {
  EXPECT_THROW(build_4_2_1(params(1, 1, 1, 1), 1.0, 1.0, 0.5), DomainError);
  EXPECT_THROW(build_4_2_1(fig3b().params, 1.0, 0.0, 0.5), DomainError);
}

TEST(Family422, Fig4bEqualsBbmFamily) {
  const SolutionParams s = build_family(fig4b());
  EXPECT_EQ(s.j[2], 0.0);
  EXPECT_NEAR(s.j[0], -1.0, 1e-14);
  EXPECT_NEAR(s.k[0], -0.375, 1e-14);
  EXPECT_NEAR(s.k[2], 6.75, 1e-14);
}

TEST(Family422, BEqualsTwoDRejected) {
  EXPECT_NE(domain_message([] { build_4_2_2(params(1, 2, 0, 1), 1.0, 1.0, 0.5); }).find("b - 2d"), std::string::npos);
}

TEST(Family43, DirectValues) {
  const SolutionParams s = build_4_3(Rational(2), 2.0, 0.125, 0.75);
  EXPECT_EQ(s.j[0], -1.0);
  for (int r = 1; r < 5; ++r) EXPECT_EQ(s.j[r], 0.0);
  EXPECT_EQ(s.k[1], 0.0);
  EXPECT_DOUBLE_EQ(s.k[0], -0.375);
  EXPECT_DOUBLE_EQ(s.k[2], 6.75);
}

TEST(Family43, ZeroDispersionGivesConstantW) {
  const SolutionParams s = build_4_3(Rational(0), 1.3, 0.4, 0.6);
  EXPECT_EQ(s.k[0], 0.4);
  EXPECT_EQ(s.k[2], 0.0);
}

TEST(Family43, MatchesFamily412BottomAtAZero) {
  const SolutionParams bbm = build_4_3(Rational(2), 0.5, -1.0 / 3.0, 0.25);
  const SolutionParams s = build_4_1_2(params(0, -1, Rational(-2, 3), 2), 0.5, -1.0 / 3.0, 0.25, SignChoice::Bottom);
  for (int r = 0; r < 5; ++r) EXPECT_NEAR(s.j[r], bbm.j[r], 1e-13);
  for (int r = 0; r < 3; ++r) EXPECT_NEAR(s.k[r], bbm.k[r], 1e-13);
}

TEST(Families, ShapeConstraints) {
  for (const auto& fig : cnoidal_panels()) {
    const SolutionParams s = build_family(fig.request);
    if (s.family == FamilyTag::S411 || s.family == FamilyTag::S412) {
      EXPECT_EQ(s.j[3], 0.0);
      EXPECT_EQ(s.j[4], 0.0);
    }
    if (s.family == FamilyTag::S412) {
      EXPECT_EQ(s.j[1], 0.0);
      EXPECT_EQ(s.k[1], 0.0);
    }
    if (s.family == FamilyTag::S421 || s.family == FamilyTag::S422) {
      EXPECT_EQ(s.j[1], 0.0);
      EXPECT_EQ(s.j[3], 0.0);
      EXPECT_EQ(s.k[1], 0.0);
    }
    EXPECT_GT(s.lambda, 0.0) << fig.name;
    EXPECT_NE(s.sigma, 0.0) << fig.name;
  }
}

TEST(Families, NameRoundTrip) {
  for (FamilyTag tag : {FamilyTag::S411, FamilyTag::S412, FamilyTag::S421, FamilyTag::S422, FamilyTag::S43,
                        FamilyTag::SolitaryLimit}) {
    EXPECT_EQ(parse_family(family_name(tag)), tag);
  }
  EXPECT_THROW(parse_family("4.9"), UsageError);
}

TEST(Families, SolitaryLimitIsNotBuildable) {
  FamilyRequest req = fig2a();
  req.family = FamilyTag::SolitaryLimit;
  EXPECT_THROW(build_family(req), UsageError);
}

TEST(Families, ExtendedPrecisionAgreesWithDouble) {
  using Big = boost::multiprecision::cpp_bin_float_50;
  for (const auto& fig : cnoidal_panels()) {
    const SolutionParams lo = build_family(fig.request);
    const SolutionParams hi = to_double(build_family<Big>(fig.request, Big(fig.request.m)));
    for (int r = 0; r < 5; ++r) EXPECT_NEAR(lo.j[r], hi.j[r], 1e-12 * (1 + std::abs(hi.j[r]))) << fig.name;
    for (int r = 0; r < 3; ++r) EXPECT_NEAR(lo.k[r], hi.k[r], 1e-12 * (1 + std::abs(hi.k[r]))) << fig.name;
  }
}
