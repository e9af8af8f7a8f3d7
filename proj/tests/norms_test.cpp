#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "normspace/norms.hpp"
#include "test_util.hpp"

using namespace normspace;

namespace {
double eval_at(const NormSpec& n, std::vector<double> x) { return n(x); }
}  // namespace

TEST(Eval, Examples) {
  EXPECT_DOUBLE_EQ(eval_at(NormSpec::pnorm(2), {3, 4}), 5.0);
  EXPECT_DOUBLE_EQ(eval_at(NormSpec::perturbed(1, 2, 1), {1, 1}), 4.0);
  EXPECT_DOUBLE_EQ(eval_at(NormSpec::mixture({1, 2}, {0.5, 0.5}), {1, 1}), (2.0 + std::sqrt(2.0)) / 2.0);
  EXPECT_DOUBLE_EQ(eval_at(NormSpec::pnorm(kInf), {-3, 2}), 3.0);
  EXPECT_DOUBLE_EQ(eval_at(NormSpec::pnorm(1), {-3, 2}), 5.0);
  EXPECT_EQ(eval_at(NormSpec::pnorm(3), {0, 0, 0}), 0.0);
}

TEST(Eval, CompositeNorms) {
  const NormSpec sum = NormSpec::sum(NormSpec::pnorm(1), NormSpec::pnorm(2));
  EXPECT_DOUBLE_EQ(eval_at(sum, {3, 4}), 12.0);
  EXPECT_DOUBLE_EQ(eval_at(NormSpec::scaled(2.5, NormSpec::pnorm(1)), {1, -1}), 5.0);
  const NormSpec pre = NormSpec::precomposed(Matrix::from_rows({{1, 0}, {0, 2}}), NormSpec::pnorm(kInf));
  EXPECT_DOUBLE_EQ(eval_at(pre, {1, 1}), 2.0);
  const NormSpec w = NormSpec::weighted_abs({1, 2}, {{1, 0}, {1, 1}});
  EXPECT_DOUBLE_EQ(eval_at(w, {1, -2}), 1.0 + 2.0 * 1.0);
}

TEST(Eval, ExtremeMagnitudes) {
  EXPECT_DOUBLE_EQ(eval_at(NormSpec::pnorm(2), {3e200, 4e200}), 5e200);
  EXPECT_DOUBLE_EQ(eval_at(NormSpec::pnorm(2), {3e-200, 4e-200}), 5e-200);
}

TEST(Eval, DimensionChecks) {
  const NormSpec pre = NormSpec::precomposed(Matrix::identity(2), NormSpec::pnorm(2));
  EXPECT_NS_ERROR(eval_at(pre, {1, 2, 3}), DimensionMismatch);
  EXPECT_NS_ERROR(eval_at(NormSpec::perturbed(2, 1, 2), {1, 2}), DimensionMismatch);
  EXPECT_EQ(pre.fixed_dimension(), std::optional<std::size_t>(2));
  EXPECT_EQ(NormSpec::perturbed(2, 1, 2).min_dimension(), 3u);
  EXPECT_FALSE(NormSpec::pnorm(2).fixed_dimension().has_value());
}

TEST(Construction, RejectsInvalidParameters) {
  EXPECT_NS_ERROR(NormSpec::pnorm(0.5), ParameterOutOfRange);
  EXPECT_NS_ERROR(NormSpec::pnorm(NAN), ParameterOutOfRange);
  EXPECT_NS_ERROR(NormSpec::perturbed(2, -1, 0), ParameterOutOfRange);
  EXPECT_NS_ERROR(NormSpec::mixture({1, kInf}, {1, 1}), ParameterOutOfRange);
  EXPECT_NS_ERROR(NormSpec::mixture({}, {}), ParameterOutOfRange);
  EXPECT_NS_ERROR(NormSpec::mixture({1}, {0}), ParameterOutOfRange);
  EXPECT_NS_ERROR(NormSpec::scaled(0, NormSpec::pnorm(1)), ParameterOutOfRange);
  EXPECT_NS_ERROR(NormSpec::weighted_abs({1, 1}, {{1, 1}, {2, 2}}), ParameterOutOfRange);
  EXPECT_NS_ERROR(NormSpec::weighted_abs({-1, 1}, {{1, 0}, {0, 1}}), ParameterOutOfRange);
  EXPECT_NS_ERROR(NormSpec::precomposed(Matrix::from_rows({{1, 2}, {2, 4}}), NormSpec::pnorm(2)), SingularMatrix);
  EXPECT_NS_ERROR(NormSpec::precomposed(Matrix(2, 3), NormSpec::pnorm(2)), BadDimensions);
  EXPECT_NS_ERROR(NormSpec::precomposed(Matrix::identity(2), NormSpec::perturbed(2, 1, 2)), DimensionMismatch);
  EXPECT_NS_ERROR(NormSpec::sum(NormSpec::precomposed(Matrix::identity(2), NormSpec::pnorm(2)),
                                NormSpec::precomposed(Matrix::identity(3), NormSpec::pnorm(2))),
                  DimensionMismatch);
}

TEST(Axioms, ConstructibleNormsPass) {
  const std::vector<NormSpec> specs{
      NormSpec::sum(NormSpec::pnorm(1), NormSpec::pnorm(2)),
      NormSpec::perturbed(1.5, 2.0, 1),
      NormSpec::mixture({1, 2.5, 4}, {0.2, 1, 3}),
      NormSpec::weighted_abs({1, 2, 3, 0.5}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}),
      NormSpec::precomposed(Matrix::from_rows({{1, 2, 0}, {0, 1, 0}, {3, 0, 1}}), NormSpec::pnorm(kInf)),
      NormSpec::scaled(1e-3, NormSpec::pnorm(3)),
  };
  for (const auto& s : specs) {
    const auto report = check_norm_axioms(s, 3, 10000, 99);
    EXPECT_EQ(report.trials, 10000u);
    EXPECT_TRUE(report.ok()) << s.describe() << ": " << report.failures.front().axiom;
  }
  EXPECT_NS_ERROR(check_norm_axioms(NormSpec::perturbed(2, 1, 4), 3, 10, 1), DimensionMismatch);
}

TEST(ClosedForm, PNorms) {
  EXPECT_NEAR(*distance_closed_form(NormSpec::pnorm(1), NormSpec::pnorm(kInf), 2), std::log(2.0), 1e-15);
  EXPECT_NEAR(*distance_closed_form(NormSpec::pnorm(1), NormSpec::pnorm(2), 3), 0.5 * std::log(3.0), 1e-15);
  EXPECT_NEAR(*distance_closed_form(NormSpec::pnorm(3), NormSpec::pnorm(1.5), 8), (1.0 / 1.5 - 1.0 / 3.0) * std::log(8.0),
              1e-15);
  EXPECT_EQ(*distance_closed_form(NormSpec::pnorm(2), NormSpec::pnorm(2), 5), 0.0);
  EXPECT_EQ(*distance_closed_form(NormSpec::pnorm(1), NormSpec::pnorm(kInf), 1), 0.0);
  EXPECT_NEAR(*distance_closed_form(NormSpec::scaled(3, NormSpec::pnorm(1)), NormSpec::pnorm(kInf), 4), std::log(4.0),
              1e-15);
}

TEST(ClosedForm, Perturbed) {
  const auto diff = distance_closed_form(NormSpec::perturbed(2, 1, 0), NormSpec::perturbed(2, 3, 1), 2);
  ASSERT_TRUE(diff.has_value());
  EXPECT_NEAR(*diff, std::log(2.0) + std::log(4.0), 1e-15);
  const auto same = distance_closed_form(NormSpec::perturbed(2, 1, 0), NormSpec::perturbed(2, 3, 0), 2);
  EXPECT_NEAR(*same, std::log(4.0) - std::log(2.0), 1e-15);
  EXPECT_FALSE(distance_closed_form(NormSpec::perturbed(2, 1, 0), NormSpec::perturbed(3, 1, 1), 2).has_value());
}

TEST(ClosedForm, Mixture) {
  // A point mass at p = 1 against l2 reproduces the p-norm formula.
  EXPECT_NEAR(*distance_closed_form(NormSpec::mixture({1}, {1}), NormSpec::pnorm(2), 4), std::log(2.0), 1e-15);
  // Two atoms, direct evaluation at (1,1,1) and e_1 against l_inf.
  const double expected = std::log(0.5 * 3.0 + 2.0 * std::sqrt(3.0)) - std::log(2.5);
  EXPECT_NEAR(*distance_closed_form(NormSpec::mixture({1, 2}, {0.5, 2}), NormSpec::pnorm(kInf), 3), expected, 1e-15);
  EXPECT_NEAR(*distance_closed_form(NormSpec::pnorm(kInf), NormSpec::mixture({1, 2}, {0.5, 2}), 3), expected, 1e-15);
  // An atom at or above q leaves the pattern.
  EXPECT_FALSE(distance_closed_form(NormSpec::mixture({1, 3}, {1, 1}), NormSpec::pnorm(2), 3).has_value());
}

TEST(ClosedForm, NoPattern) {
  EXPECT_FALSE(distance_closed_form(NormSpec::pnorm(1), NormSpec::perturbed(1, 1, 0), 2).has_value());
}

TEST(SignedPermutation, Matrix) {
  const std::vector<std::size_t> perm{1, 0};
  const std::vector<int> signs{1, -1};
  const Matrix m = signed_permutation(perm, signs);
  EXPECT_EQ(m, Matrix::from_rows({{0, 1}, {-1, 0}}));
  const std::vector<std::size_t> bad{0, 0};
  EXPECT_NS_ERROR(signed_permutation(bad, signs), ParameterOutOfRange);
}
