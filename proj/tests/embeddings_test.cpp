#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "normspace/diamnorm.hpp"
#include "normspace/embeddings.hpp"
#include "test_util.hpp"

using namespace normspace;

namespace {

const double kLn2 = std::numbers::ln2;

FiniteMetric line3() { return FiniteMetric::from_pairs(3, {1.0, 2.0, 1.0}); }
FiniteMetric star() { return FiniteMetric::from_pairs(4, {1, 1, 1, 2, 2, 2}); }

// Independent oracle for the Schoenberg matrix entry (j, k) with base b.
double schoenberg_entry(const FiniteMetric& r, std::size_t b, std::size_t j, std::size_t k) {
  auto d2 = [&](std::size_t x, std::size_t y) { return x == y ? 0.0 : r(x, y) * r(x, y); };
  return d2(b, j) + d2(b, k) - d2(j, k);
}

}  // namespace

TEST(Frechet, Examples) {
  const auto two = frechet_embed(FiniteMetric::from_pairs(2, {5.0}));
  EXPECT_EQ(two, (std::vector<std::vector<double>>{{5}, {0}}));
  EXPECT_EQ(chebyshev_distance(two[0], two[1]), 5.0);

  const auto tri = frechet_embed(discrete_metric(3));
  EXPECT_EQ(tri, (std::vector<std::vector<double>>{{1, 1}, {0, 1}, {1, 0}}));

  const auto line = frechet_embed(line3());
  EXPECT_EQ(line, (std::vector<std::vector<double>>{{1, 2}, {0, 1}, {1, 0}}));
  EXPECT_EQ(chebyshev_distance(line[0], line[2]), 2.0);
  EXPECT_NS_ERROR(frechet_embed(line3(), 3), BadBaseIndex);
}

TEST(Frechet, ExactSupIsometry) {
  Rng rng(31);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.index(7);
    const auto r = random_metric(n, rng);
    const std::size_t base = rng.index(n);
    const auto v = frechet_embed(r, base);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) EXPECT_EQ(chebyshev_distance(v[i], v[j]), r(i, j));
  }
}

TEST(Padding, Examples) {
  const std::vector<double> x{3.0}, y{1.0};
  EXPECT_EQ(padded_distance(pad_to_quotient(x, 2), pad_to_quotient(y, 2)), 2.0);
  const std::vector<double> up{1.0, -1.0}, flat{2.0, 0.0}, zero{0.0, 0.0};
  EXPECT_EQ(padded_distance(pad_to_quotient(up, 3), pad_to_quotient(zero, 3)), 2.0);
  EXPECT_EQ(chebyshev_distance(up, zero), 1.0);
  EXPECT_EQ(padded_distance(pad_to_quotient(flat, 3), pad_to_quotient(zero, 3)), 2.0);
  EXPECT_NS_ERROR(pad_to_quotient(up, 2), BadDimensions);
  EXPECT_NS_ERROR(pad_to_quotient(std::vector<double>{}, 2), BadDimensions);
}

TEST(Padding, BoundsOnRandomDifferences) {
  Rng rng(32);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t p = 1 + rng.index(6);
    const auto a = rng.gaussian_vector(p), b = rng.gaussian_vector(p);
    const double sup = chebyshev_distance(a, b);
    const double diam = padded_distance(pad_to_quotient(a, p + 1), pad_to_quotient(b, p + 1));
    EXPECT_LE(sup, diam + 1e-15);
    EXPECT_LE(diam, 2 * sup + 1e-15);
  }
}

TEST(Psi, Membership) {
  EXPECT_TRUE(is_member(metric_to_psi(discrete_metric(3))));
  EXPECT_EQ(metric_to_psi(discrete_metric(3)).psi, (std::vector<double>{0, 0, 0}));
  // exp: (1, e, 1) breaks d(0,2) <= d(0,1) + d(1,2).
  const PsiPoint bad{3, {0.0, 1.0, 0.0}};
  const auto v = membership_violation(bad);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(*v, (std::array<std::size_t, 3>{0, 1, 2}));
  EXPECT_NS_ERROR(psi_to_metric(bad), MembershipViolation);
  // Violations in the other two orientations are caught as well.
  EXPECT_FALSE(is_member(PsiPoint{3, {1.0, 0.0, 0.0}}));
  EXPECT_FALSE(is_member(PsiPoint{3, {0.0, 0.0, 1.0}}));
  EXPECT_NS_ERROR(is_member(PsiPoint{3, {0.0, 0.0}}), BadDimensions);
}

TEST(Psi, RoundTripAndConjugation) {
  Rng rng(33);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 3 + rng.index(5);
    const auto r1 = random_metric(n, rng), r2 = random_metric(n, rng);
    const auto back = psi_to_metric(metric_to_psi(r1));
    for (std::size_t i = 0; i < r1.pair_values().size(); ++i)
      EXPECT_NEAR(back.pair_values()[i], r1.pair_values()[i], 1e-12 * r1.pair_values()[i]);
    const auto p1 = metric_to_psi(r1), p2 = metric_to_psi(r2);
    std::vector<double> diff(p1.psi.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = p1.psi[i] - p2.psi[i];
    EXPECT_NEAR(diameter(diff), log_distortion(r1, r2), 1e-12);
  }
}

TEST(EmbedIntoSn, EquilateralLog2) {
  const auto tri = discrete_metric(3).scaled(kLn2);
  const auto rep = embed_into_Sn(tri, 3);
  EXPECT_TRUE(rep.membership_ok);
  ASSERT_EQ(rep.psi_images.size(), 3u);
  EXPECT_EQ(rep.psi_images[0].psi, (std::vector<double>{kLn2, kLn2, 0}));
  EXPECT_EQ(rep.psi_images[1].psi, (std::vector<double>{0, kLn2, 0}));
  EXPECT_EQ(rep.psi_images[2].psi, (std::vector<double>{kLn2, 0, 0}));
  EXPECT_NEAR(rep.scale, 1.0, 1e-15);
  // Points 1 and 2: psi difference (-log 2, log 2, 0), distance 2 log 2.
  EXPECT_FALSE(rep.isometric);
  EXPECT_NEAR(rep.max_ratio, 2.0, 1e-12);
  EXPECT_NEAR(rep.min_ratio, 1.0, 1e-12);
  ASSERT_EQ(rep.images.size(), 3u);
  EXPECT_NEAR(rep.images[1](0, 2), 2.0, 1e-15);
}

TEST(EmbedIntoSn, RandomInputsStayInBounds) {
  Rng rng(34);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 3 + rng.index(4);
    const std::size_t m = 2 + rng.index(pair_count(n) - 1);
    const auto rep = embed_into_Sn(random_metric(m, rng), n);
    EXPECT_TRUE(rep.membership_ok);
    EXPECT_GE(rep.min_ratio, 1.0 - 1e-12);
    EXPECT_LE(rep.max_ratio, 2.0 + 1e-12);
    EXPECT_EQ(rep.pair_table.size(), pair_count(m));
  }
}

TEST(EmbedIntoSn, TwoPointsEmbedIsometrically) {
  const auto rep = embed_into_Sn(FiniteMetric::from_pairs(2, {7.0}), 3);
  EXPECT_TRUE(rep.membership_ok);
  EXPECT_TRUE(rep.isometric);
}

TEST(EmbedIntoSn, Errors) {
  EXPECT_NS_ERROR(embed_into_Sn(discrete_metric(4), 3), TooManyPoints);
  EXPECT_NS_ERROR(embed_into_Sn(discrete_metric(3), 2), ParameterOutOfRange);
}

TEST(FrechetImageMembership, DiameterAboveLog2Fails) {
  EXPECT_FALSE(frechet_image_membership(discrete_metric(3), 3, 0));
  EXPECT_TRUE(frechet_image_membership(discrete_metric(3).scaled(kLn2), 3, 0));
}

TEST(Schoenberg, MatrixExamples) {
  EXPECT_EQ(schoenberg_matrix(discrete_metric(3)), Matrix::from_rows({{2, 1}, {1, 2}}));
  EXPECT_EQ(schoenberg_matrix(line3()), Matrix::from_rows({{2, 4}, {4, 8}}));
  EXPECT_EQ(schoenberg_matrix(star()), Matrix::from_rows({{2, -2, -2}, {-2, 2, -2}, {-2, -2, 2}}));
  EXPECT_NS_ERROR(schoenberg_matrix(line3(), 5), BadBaseIndex);
}

TEST(Schoenberg, MatrixMatchesOracle) {
  Rng rng(35);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng.index(6);
    const auto r = random_metric(n, rng);
    const std::size_t b = rng.index(n);
    const Matrix a = schoenberg_matrix(r, b);
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < n; ++i)
      if (i != b) rest.push_back(i);
    for (std::size_t j = 0; j < rest.size(); ++j)
      for (std::size_t k = 0; k < rest.size(); ++k)
        EXPECT_NEAR(a(j, k), schoenberg_entry(r, b, rest[j], rest[k]), 1e-12);
  }
}

TEST(Schoenberg, EquilateralTriangle) {
  const auto rep = euclidean_embed(discrete_metric(3));
  EXPECT_TRUE(rep.embeddable);
  EXPECT_EQ(rep.rank, 2u);
  EXPECT_NEAR(rep.eigenvalues[0], 3.0, 1e-12);
  EXPECT_NEAR(rep.eigenvalues[1], 1.0, 1e-12);
  EXPECT_LE(rep.residual, 1e-9);
  EXPECT_EQ(rep.coords[0], (std::vector<double>{0, 0}));
  EXPECT_FALSE(rep.negative_witness.has_value());
}

TEST(Schoenberg, CollinearAndStar) {
  const auto line = euclidean_embed(line3());
  EXPECT_TRUE(line.embeddable);
  EXPECT_EQ(line.rank, 1u);
  EXPECT_LE(line.residual, 2e-9);

  const auto s = euclidean_embed(star(), 0);
  EXPECT_FALSE(s.embeddable);
  EXPECT_NEAR(s.eigenvalues.back(), -2.0, 1e-12);
  ASSERT_TRUE(s.negative_witness.has_value());
  for (double v : *s.negative_witness) EXPECT_NEAR(std::abs(v), 1.0 / std::sqrt(3.0), 1e-12);
}

TEST(Schoenberg, VerdictIndependentOfBase) {
  Rng rng(36);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 3 + rng.index(4);
    const auto r = random_metric(n, rng);
    const bool first = euclidean_embed(r, 0).embeddable;
    for (std::size_t b = 1; b < n; ++b) EXPECT_EQ(euclidean_embed(r, b).embeddable, first);
  }
}

TEST(Schoenberg, RealizesEuclideanPointSets) {
  Rng rng(37);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 3 + rng.index(5), dim = 1 + rng.index(4);
    std::vector<std::vector<double>> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(rng.gaussian_vector(dim));
    std::vector<double> d;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double s = 0.0;
        for (std::size_t c = 0; c < dim; ++c) s += (pts[i][c] - pts[j][c]) * (pts[i][c] - pts[j][c]);
        d.push_back(std::sqrt(s));
      }
    const auto r = FiniteMetric::from_pairs(n, d);
    const auto rep = euclidean_embed(r, rng.index(n));
    EXPECT_TRUE(rep.embeddable);
    EXPECT_EQ(rep.rank, std::min(dim, n - 1));
    EXPECT_LE(rep.residual, 1e-9 * r.diameter());
  }
}

TEST(Schoenberg, ToleranceMustBePositive) { EXPECT_NS_ERROR(euclidean_embed(line3(), 0, 0.0), ParameterOutOfRange); }
