#include <gtest/gtest.h>

#include <cmath>

#include "normspace/sample_domain.hpp"
#include "test_util.hpp"

using namespace normspace;

namespace {

bool contains(const SampleDomain& d, const std::vector<double>& p, double tol = 1e-15) {
  for (const auto& x : d.points()) {
    bool same = x.size() == p.size();
    for (std::size_t i = 0; same && i < p.size(); ++i) same = std::abs(x[i] - p[i]) <= tol;
    if (same) return true;
  }
  return false;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST(CanonicalDirections, Layout) {
  const auto d = canonical_directions(2);
  ASSERT_EQ(d.size(), 5u);
  EXPECT_EQ(d[0], (std::vector<double>{1, 0}));
  EXPECT_EQ(d[1], (std::vector<double>{-1, 0}));
  EXPECT_EQ(d[4], (std::vector<double>{1, 1}));
}

TEST(SampleDomain, UnitCircleContainsCanonicalPoints) {
  const auto d = SampleDomain::sample(NormSphere{NormSpec::pnorm(2), 1.0}, 2, 10, 5);
  EXPECT_EQ(d.size(), 15u);
  EXPECT_TRUE(contains(d, {1, 0}));
  EXPECT_TRUE(contains(d, {0, -1}));
  EXPECT_TRUE(contains(d, {1 / std::sqrt(2.0), 1 / std::sqrt(2.0)}, 1e-15));
}

TEST(SampleDomain, PointsLieOnNormSphere) {
  const auto d = SampleDomain::sample(NormSphere{NormSpec::pnorm(1), 2.0}, 3, 500, 6);
  for (const auto& x : d.points()) EXPECT_NEAR(std::abs(x[0]) + std::abs(x[1]) + std::abs(x[2]), 2.0, 1e-12);
}

TEST(SampleDomain, OffCenterSphereEquation) {
  const std::vector<double> y{0.5, -2.0, 1.0};
  const auto d = SampleDomain::sample(OffCenterSphere{y}, 3, 500, 7);
  ASSERT_GE(d.size(), 502u);
  const double target = 1.0 + dot(y, y);
  for (const auto& x : d.points()) {
    std::vector<double> diff(3);
    for (int i = 0; i < 3; ++i) diff[i] = x[i] - y[i];
    EXPECT_NEAR(dot(diff, diff), target, 1e-12 * target);
  }
}

TEST(SampleDomain, OffCenterProjectionFormula) {
  // alpha = sqrt(1 + <v,y>^2) + <v,y> on the unit direction v.
  const std::vector<double> y{3.0, 4.0};
  const auto d = SampleDomain::sample(OffCenterSphere{y}, 2, 0, 1);
  const auto p = d.project(std::vector<double>{2.0, 0.0});
  const double alpha = std::sqrt(1.0 + 9.0) + 3.0;
  EXPECT_NEAR(p[0], alpha, 1e-14);
  EXPECT_NEAR(p[1], 0.0, 1e-15);
}

TEST(SampleDomain, OneRayPerPoint) {
  const auto d = SampleDomain::sample(NormSphere{NormSpec::pnorm(kInf), 1.0}, 2, 200, 8);
  const auto more = d.with_directions({{2, 0}, {0.5, 0.5}, {3, 1}});
  EXPECT_EQ(more.size(), d.size() + 1);  // (2,0) and (0.5,0.5) are existing rays
  EXPECT_NEAR(more.points().back()[0], 1.0, 1e-15);
}

TEST(SampleDomain, Deterministic) {
  const NormSphere s{NormSpec::pnorm(2), 1.0};
  EXPECT_EQ(SampleDomain::sample(s, 4, 100, 42).points(), SampleDomain::sample(s, 4, 100, 42).points());
  EXPECT_NE(SampleDomain::sample(s, 4, 100, 42).points(), SampleDomain::sample(s, 4, 100, 43).points());
}

TEST(SampleDomain, Errors) {
  EXPECT_NS_ERROR(SampleDomain::sample(OffCenterSphere{{0.0, 0.0}}, 2, 1, 1), ZeroCenter);
  EXPECT_NS_ERROR(SampleDomain::sample(OffCenterSphere{{1.0}}, 2, 1, 1), DimensionMismatch);
  EXPECT_NS_ERROR(SampleDomain::sample(NormSphere{NormSpec::pnorm(2), -1.0}, 2, 1, 1), ParameterOutOfRange);
  EXPECT_NS_ERROR(SampleDomain::sample(NormSphere{NormSpec::pnorm(2), 1.0}, 0, 1, 1), BadDimensions);
}

TEST(SampleDomain, FromPointsRoundTrip) {
  const NormSphere s{NormSpec::pnorm(2), 1.0};
  const auto d = SampleDomain::sample(s, 3, 20, 9);
  const auto back = SampleDomain::from_points(s, 3, d.points(), d.seed(), d.requested_count());
  EXPECT_EQ(back.points(), d.points());
  EXPECT_NS_ERROR(SampleDomain::from_points(s, 2, {{2.0, 0.0}}, 1, 0), ParameterOutOfRange);
  EXPECT_NS_ERROR(SampleDomain::from_points(s, 2, {{1.0, 0.0}, {1.0, 0.0}}, 1, 0), ParameterOutOfRange);
}
