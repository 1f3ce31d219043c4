#include "nssga/curve_models.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "nssga/errors.hpp"
#include "support/oracles.hpp"

namespace nssga {
namespace {

// Fitted parameters for 2011-09-22 as published alongside the OIS data.
CurveParams published_first_day() {
  return CurveParams::nss(0.020780, -0.011995, -0.034771, 0.023232, 1.484620, 9.050420);
}

TEST(ModelKindTest, ParameterCounts) {
  EXPECT_EQ(parameter_count(ModelKind::NS), 4u);
  EXPECT_EQ(parameter_count(ModelKind::NSS), 6u);
  EXPECT_EQ(parse_model_kind("NSS"), ModelKind::NSS);
  EXPECT_EQ(parse_model_kind("ns"), ModelKind::NS);
  EXPECT_THROW(parse_model_kind("svensson"), ConfigError);
}

TEST(TenorTest, RejectsNegativeAndConvertsDays) {
  EXPECT_THROW(Tenor(-0.1), DomainError);
  EXPECT_THROW(Tenor(std::nan("")), DomainError);
  EXPECT_DOUBLE_EQ(Tenor::from_days(365).years(), 1.0);
  EXPECT_DOUBLE_EQ(Tenor::from_days(18'250).years(), 50.0);
}

TEST(CurveParamsTest, ShapeParametersMustBePositive) {
  EXPECT_THROW(CurveParams::ns(0.02, 0, 0, 0.0), DomainError);
  EXPECT_THROW(CurveParams::nss(0.02, 0, 0, 0, 1.0, -2.0), DomainError);
  // kappa is irrelevant for NS
  EXPECT_NO_THROW(CurveParams::ns(0.02, 0, 0, 1.0));
}

TEST(CurveParamsTest, VectorRoundTripAndSizeCheck) {
  const CurveParams p = published_first_day();
  EXPECT_EQ(CurveParams::from_vector(ModelKind::NSS, p.to_vector()), p);
  const std::vector<double> four{0.02, -0.01, 0.03, 2.0};
  EXPECT_EQ(CurveParams::from_vector(ModelKind::NS, four).lambda(), 2.0);
  EXPECT_THROW(CurveParams::from_vector(ModelKind::NSS, four), ConfigError);
  EXPECT_EQ(p.betas().size(), 4u);
}

TEST(SpotBasisTest, AnalyticLimitAtZero) {
  const SpotBasis b = ns_spot_basis(Tenor(0.0), 1.5);
  EXPECT_EQ(b.level, 1.0);
  EXPECT_EQ(b.slope, 1.0);
  EXPECT_EQ(b.curvature, 0.0);
}

TEST(SpotBasisTest, SlopeAtTauEqualLambda) {
  // 1 - e^{-1} from a 30-digit evaluation.
  constexpr double expected = 0.632120558828557678;
  for (double lambda : {0.3, 1.0, 1.4846, 9.05}) {
    EXPECT_NEAR(ns_spot_basis(Tenor(lambda), lambda).slope, expected, 1e-15) << lambda;
  }
}

TEST(SpotBasisTest, DecaysForLargeTau) {
  const SpotBasis b = ns_spot_basis(Tenor(1000.0 * 2.0), 2.0);
  EXPECT_NEAR(b.slope, 0.001, 1e-15);
  EXPECT_NEAR(b.curvature, 0.001, 1e-15);
}

TEST(SpotBasisTest, RejectsNonpositiveLambda) {
  EXPECT_THROW(ns_spot_basis(Tenor(1.0), 0.0), DomainError);
  EXPECT_THROW(ns_spot_basis(Tenor(1.0), -1.0), DomainError);
}

TEST(SpotRateTest, PublishedFirstDayAtFiftyYears) {
  // Market 2.4092% at 18,250 days; the published fit is within its max error 0.000942.
  EXPECT_NEAR(spot_rate(published_first_day(), Tenor::from_days(18'250)), 0.024092, 0.000942);
  // 30-digit reference value of the closed form.
  EXPECT_NEAR(spot_rate(published_first_day(), Tenor(50.0)), 0.0234871881923867222, 1e-15);
}

TEST(SpotRateTest, MatchesIndependentClosedForm) {
  const CurveParams p = published_first_day();
  for (double tau : {0.05, 0.5, 1.0, 3.7, 12.0, 30.0}) {
    EXPECT_NEAR(spot_rate(p, Tenor(tau)),
                testing::reference_nss_spot(p.beta0(), p.beta1(), p.beta2(), p.beta3(), p.lambda(),
                                            p.kappa(), tau),
                1e-15);
  }
}

TEST(SpotRateTest, LevelOnlyCurveIsFlat) {
  const CurveParams flat = CurveParams::ns(0.031, 0.0, 0.0, 1.0);
  for (double tau : {0.0, 0.1, 1.0, 10.0, 100.0}) {
    EXPECT_DOUBLE_EQ(spot_rate(flat, Tenor(tau)), 0.031);
  }
}

TEST(SpotRateTest, NssWithZeroBeta3EqualsNs) {
  const CurveParams nss = CurveParams::nss(0.02, -0.01, 0.03, 0.0, 1.7, 11.0);
  const CurveParams ns = CurveParams::ns(0.02, -0.01, 0.03, 1.7);
  for (double tau : {0.0, 0.25, 2.0, 25.0}) {
    EXPECT_EQ(spot_rate(nss, Tenor(tau)), spot_rate(ns, Tenor(tau)));
  }
}

TEST(SpotRateTest, ContinuousAtZero) {
  const CurveParams p = published_first_day();
  const double limit = p.beta0() + p.beta1();
  EXPECT_DOUBLE_EQ(spot_rate(p, Tenor(0.0)), limit);
  for (double eps : {1e-4, 1e-8, 1e-12}) {
    EXPECT_NEAR(spot_rate(p, Tenor(eps)), limit, eps);
  }
}

TEST(ForwardRateTest, Limits) {
  const CurveParams p = published_first_day();
  EXPECT_DOUBLE_EQ(forward_rate(p, Tenor(0.0)), p.beta0() + p.beta1());
  EXPECT_NEAR(forward_rate(p, Tenor(1e4)), p.beta0(), 1e-15);
}

TEST(ForwardRateTest, DerivativeOfTauTimesSpot) {
  const CurveParams p = published_first_day();
  const double h = 1e-4;
  const auto tau_spot = [&](double t) { return t * spot_rate(p, Tenor(t)); };
  // Fourth-order central difference.
  const double fd = (-tau_spot(2.0 + 2 * h) + 8 * tau_spot(2.0 + h) - 8 * tau_spot(2.0 - h) +
                     tau_spot(2.0 - 2 * h)) /
                    (12 * h);
  EXPECT_NEAR(forward_rate(p, Tenor(2.0)), fd, 1e-6);
  EXPECT_NEAR(forward_rate(p, Tenor(2.0)), 0.00959959022040720833, 1e-15);
}

TEST(SpotLoadingsTest, ReproducesSpotRate) {
  const CurveParams p = published_first_day();
  const std::vector<Tenor> tenors{Tenor(0.0), Tenor(0.5), Tenor(5.0), Tenor(40.0)};
  const SpotLoadings loadings(ModelKind::NSS, tenors, p.lambda(), p.kappa());
  ASSERT_EQ(loadings.cols(), 4u);
  for (std::size_t i = 0; i < tenors.size(); ++i) {
    EXPECT_NEAR(loadings.spot(i, p.betas()), spot_rate(p, tenors[i]), 1e-16);
  }
  EXPECT_THROW(SpotLoadings(ModelKind::NSS, tenors, 1.0, 0.0), DomainError);
}

}  // namespace
}  // namespace nssga
