#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "mmspectra/inference.hpp"

using namespace mmspectra;

namespace {

std::vector<SpectralCurve> two_point_curves(Rng& rng, std::size_t n, double split, double jitter) {
  std::vector<SpectralCurve> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(sweep(fixtures::jittered_two_point(rng, split, jitter)));
  return out;
}

QuantileGrid unit_grid() {
  QuantileGrid g;
  g.values = {0.5, 1.5};
  g.quantiles = {0.5, 1.5};
  return g;
}

}  // namespace

TEST(Sample, EvaluatesCurvesOnTheGrid) {
  const auto s = make_sample({sweep(fixtures::two_point(0.75, 0.25))}, unit_grid(), 2);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.values[0](0, 1), 0.0);
  EXPECT_DOUBLE_EQ(s.values[0](1, 1), 0.375);
  EXPECT_THROW(make_sample({sweep(fixtures::two_point(0.75, 0.25))}, unit_grid(), 3), InputError);
}

TEST(Mean, MeanAndUnbiasedSd) {
  std::vector<SpectralCurve> curves;
  for (double a : {0.5, 0.6, 0.9}) curves.push_back(sweep(fixtures::two_point(a, 1 - a)));
  const auto est = mean_spectrum(make_sample(curves, unit_grid(), 2));
  // lambda_2 = 2 a (1 - a): 0.5, 0.48, 0.18
  EXPECT_NEAR(est.mean(1, 1), (0.5 + 0.48 + 0.18) / 3, 1e-15);
  const double mu = (0.5 + 0.48 + 0.18) / 3;
  const double var = (std::pow(0.5 - mu, 2) + std::pow(0.48 - mu, 2) + std::pow(0.18 - mu, 2)) / 2;
  ASSERT_TRUE(est.sd.has_value());
  EXPECT_NEAR((*est.sd)(1, 1), std::sqrt(var), 1e-15);
  EXPECT_EQ((*est.sd)(0, 1), 0.0);
}

TEST(Bands, StudentQuantiles) {
  // 30-digit reference values from inverting the regularised incomplete beta.
  EXPECT_NEAR(student_quantile(0.95, 9), 2.26215716279820499920285271725, 1e-12);
  EXPECT_NEAR(student_quantile(0.90, 4), 2.13184678632664952850525561731, 1e-12);
  EXPECT_NEAR(student_quantile(0.99, 1), 63.6567411628715244471573653494, 1e-9);
  EXPECT_THROW(student_quantile(1.0, 3), InputError);
  EXPECT_THROW(student_quantile(0.9, 0), InputError);
}

TEST(Bands, HandComputedBand) {
  std::vector<SpectralCurve> curves;
  for (double a : {0.5, 0.6, 0.9}) curves.push_back(sweep(fixtures::two_point(a, 1 - a)));
  const auto band = confidence_bands(mean_spectrum(make_sample(curves, unit_grid(), 2)), 0.95, 2);
  const double mu = (0.5 + 0.48 + 0.18) / 3;
  const double sd = std::sqrt((std::pow(0.5 - mu, 2) + std::pow(0.48 - mu, 2) + std::pow(0.18 - mu, 2)) / 2);
  const double t2 = 4.30265272974946178942037599664;  // Student t, 2 df, 0.975
  EXPECT_NEAR(band.upper[1], mu + t2 * sd / std::sqrt(3.0), 1e-12);
  EXPECT_EQ(band.lower[1], 0.0);  // clamped
  EXPECT_EQ(band.lower[0], 0.0);
  EXPECT_EQ(band.upper[0], 0.0);
}

TEST(Bands, IdenticalCurvesGiveZeroWidth) {
  std::vector<SpectralCurve> curves(4, sweep(fixtures::triangle_space()));
  const auto band = confidence_bands(
      mean_spectrum(make_sample(curves, build_grid({fixtures::triangle_space()}, 20), 4)), 0.9, 4);
  for (std::size_t g = 0; g < band.rho.size(); ++g) EXPECT_EQ(band.upper[g], band.lower[g]);
}

TEST(Bands, NeedTwoCurvesAndValidIndex) {
  const auto est = mean_spectrum(make_sample({sweep(fixtures::delta(3))}, unit_grid(), 3));
  EXPECT_THROW(confidence_bands(est, 0.95, 2), InputError);
  std::vector<SpectralCurve> two(2, sweep(fixtures::delta(3)));
  const auto est2 = mean_spectrum(make_sample(two, unit_grid(), 3));
  EXPECT_THROW(confidence_bands(est2, 0.95, 0), InputError);
  EXPECT_THROW(confidence_bands(est2, 0.95, 4), InputError);
}

TEST(Bands, WidthShrinksLikeInverseRootN) {
  Rng rng(51);
  const auto big = two_point_curves(rng, 1600, 0.7, 0.1);
  auto width = [&](std::size_t n) {
    std::vector<SpectralCurve> sub(big.begin(), big.begin() + static_cast<std::ptrdiff_t>(n));
    const auto band = confidence_bands(mean_spectrum(make_sample(sub, unit_grid(), 2)), 0.95, 2);
    return band.upper[1] - band.lower[1];
  };
  // sqrt(1600 / 100) = 4, with a generous allowance for sd fluctuation
  const double ratio = width(100) / width(1600);
  EXPECT_GT(ratio, 3.4);
  EXPECT_LT(ratio, 4.6);
}

TEST(Statistic, SupNormOfMeanDifference) {
  const auto a = make_sample({sweep(fixtures::two_point(0.75, 0.25))}, unit_grid(), 2);
  const auto b = make_sample({sweep(fixtures::two_point(0.5, 0.5))}, unit_grid(), 2);
  EXPECT_DOUBLE_EQ(test_statistic(a, b), 0.125);
  EXPECT_THROW(test_statistic(a, make_sample({sweep(fixtures::delta(3))}, unit_grid(), 1)), InputError);
}

TEST(Bootstrap, DeterministicAndThreadIndependent) {
  Rng rng(52);
  const auto a = make_sample(two_point_curves(rng, 15, 0.7, 0.1), unit_grid(), 2);
  const auto b = make_sample(two_point_curves(rng, 12, 0.6, 0.1), unit_grid(), 2);
  BootstrapOptions o;
  o.replicates = 200;
  o.seed = 9;
  o.threads = 1;
  const auto r1 = bootstrap_test(a, b, o);
  o.threads = 3;
  const auto r3 = bootstrap_test(a, b, o);
  EXPECT_EQ(r1.theta, r3.theta);
  EXPECT_EQ(r1.p_value, r3.p_value);
  EXPECT_NEAR(r1.compared_statistic, std::sqrt(2.0 * 15 * 12 / 27) * r1.statistic, 1e-15);
  o.seed = 10;
  EXPECT_NE(bootstrap_test(a, b, o).theta, r1.theta);
}

TEST(Bootstrap, PValueDefinitions) {
  Rng rng(53);
  const auto a = make_sample(two_point_curves(rng, 10, 0.7, 0.1), unit_grid(), 2);
  const auto b = make_sample(two_point_curves(rng, 10, 0.7, 0.1), unit_grid(), 2);
  BootstrapOptions o;
  o.replicates = 100;
  o.seed = 1;
  const auto r = bootstrap_test(a, b, o);
  std::size_t above = 0, at_least = 0;
  for (double t : r.theta) {
    above += t > r.compared_statistic;
    at_least += t >= r.compared_statistic;
  }
  EXPECT_DOUBLE_EQ(r.p_value, above / 100.0);
  o.plus_one = true;
  EXPECT_DOUBLE_EQ(bootstrap_test(a, b, o).p_value, (1.0 + at_least) / 101.0);
  o.plus_one = false;
  o.scaling = Scaling::kRaw;
  const auto raw = bootstrap_test(a, b, o);
  EXPECT_EQ(raw.compared_statistic, raw.statistic);
  EXPECT_GE(raw.p_value, r.p_value);
}

TEST(Bootstrap, DegenerateSamplesWarn) {
  std::vector<SpectralCurve> same(5, sweep(fixtures::two_point(0.5, 0.5)));
  const auto s = make_sample(same, unit_grid(), 2);
  const auto r = bootstrap_test(s, s, BootstrapOptions{});
  EXPECT_EQ(r.p_value, 1.0);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(Bootstrap, SeparatesDistinctMassSplits) {
  Rng rng(54);
  const auto a = make_sample(two_point_curves(rng, 20, 0.75, 0.02), unit_grid(), 2);
  const auto b = make_sample(two_point_curves(rng, 20, 0.5, 0.02), unit_grid(), 2);
  BootstrapOptions o;
  o.replicates = 300;
  EXPECT_LT(bootstrap_test(a, b, o).p_value, 0.05);
}

TEST(Concentration, FrozenValues) {
  // Reference sums from a 30-digit evaluation of the same expression.
  EXPECT_NEAR(concentration_bound_sum({1.0, 5, 100, 100, 1.0, 2.0}), 7.99960383945602047812790210516, 1e-12);
  EXPECT_EQ(concentration_bound({1.0, 5, 100, 100, 1.0, 2.0}), 1.0);
  EXPECT_NEAR(concentration_bound_sum({1.0, 5, 100, 100, 1.0, 200.0}), 0.000226606591474535157851317892982, 1e-16);
  EXPECT_NEAR(concentration_bound_sum({0.5, 10, 400, 100, 0.25, 50.0}), 0.451996465636543478459750781665, 1e-13);
  EXPECT_TRUE(std::isinf(concentration_bound_sum({1.0, 5, 10, 10, 1.0, 1.0})));
  EXPECT_EQ(concentration_bound({1.0, 5, 10, 10, 1.0, 1.0}), 1.0);
  EXPECT_THROW(concentration_bound_sum({1.0, 1, 10, 10, 1.0, 1.0}), InputError);
}

TEST(Concentration, DecreasesInT) {
  double prev = 2.0;
  for (double t = 100; t < 400; t += 25) {
    const double b = concentration_bound({1.0, 5, 100, 100, 1.0, t});
    EXPECT_LE(b, prev);
    prev = b;
  }
}
