#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "renewalkit/estimators.hpp"
#include "test_support.hpp"

using namespace renewalkit;
namespace rt = renewalkit::testing;

namespace {
const AccrualMode kEnd = EndOfCycle{};
const AccrualMode kTriangle = Partial{PiecewiseLinearShape::triangle()};

std::vector<CycleSample> repeat(std::vector<CycleSample> unit, int times) {
  std::vector<CycleSample> out;
  for (int i = 0; i < times; ++i) out.insert(out.end(), unit.begin(), unit.end());
  return out;
}
}  // namespace

TEST(RegenerativeRatio, ConstantCycles) {
  const auto est = regenerative_ratio(repeat({{1, 3, std::nullopt}}, 10));
  EXPECT_EQ(est.point, 3.0);
  EXPECT_EQ(est.std_error, 0.0);
  EXPECT_EQ(est.ci_low, 3.0);
  EXPECT_EQ(est.ci_high, 3.0);
  EXPECT_EQ(est.n_cycles, 10u);
}

TEST(RegenerativeRatio, MixedSignsCancel) {
  const auto est = regenerative_ratio(repeat({{1, 1, std::nullopt}, {1, -1, std::nullopt}}, 50));
  EXPECT_EQ(est.point, 0.0);
  EXPECT_GT(est.std_error, 0.0);
}

TEST(RegenerativeRatio, NeedsTwoCycles) {
  EXPECT_THROW(regenerative_ratio(std::vector<CycleSample>{{1, 1, std::nullopt}}), DegenerateCycles);
  EXPECT_THROW(regenerative_ratio(std::vector<CycleSample>{}), DegenerateCycles);
}

TEST(RegenerativeRatio, MatchesTextbookDeltaMethod) {
  // Oracle: standard error from the sample covariance matrix of (r, x).
  RngStream rng(5, 0);
  const JointCycleSampler s = Independent{Uniform{0.5, 2}, Lognormal{0, 0.5}};
  std::vector<CycleSample> cycles;
  for (int i = 0; i < 5000; ++i) cycles.push_back(s.draw(rng));
  const double n = static_cast<double>(cycles.size());
  double mr = 0, mx = 0;
  for (const auto& c : cycles) {
    mr += c.r / n;
    mx += c.x / n;
  }
  double vrr = 0, vxx = 0, vrx = 0;
  for (const auto& c : cycles) {
    vrr += (c.r - mr) * (c.r - mr) / (n - 1);
    vxx += (c.x - mx) * (c.x - mx) / (n - 1);
    vrx += (c.r - mr) * (c.x - mx) / (n - 1);
  }
  const double q = mr / mx;
  const double se = std::sqrt((vrr - 2 * q * vrx + q * q * vxx) / n) / mx;
  const auto est = regenerative_ratio(cycles);
  EXPECT_NEAR(est.point, q, 1e-12);
  EXPECT_NEAR(est.std_error, se, 1e-9 * se);
  EXPECT_LE(est.ci_low, est.point);
  EXPECT_GE(est.ci_high, est.point);
}

TEST(RegenerativeRatio, EqualsRateAtLastCompleteEpoch) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RngStream rng(seed, 0);
    const auto rp = realize_rewarded_path(Independent{Exponential{1.3}, Uniform{-1, 2}}, 500, rng);
    const double sk = rp.path().epoch(rp.path().size());
    EXPECT_NEAR(regenerative_ratio(rp).point, reward_rate(rp, kEnd, sk), 1e-12);
  }
}

TEST(RegenerativeRatio, SquaredExponentialPoint) {
  RngStream rng(6, 0);
  const JointCycleSampler s = FunctionOfX{Exponential{1}, RewardFunction::square};
  std::vector<CycleSample> cycles;
  for (int i = 0; i < 100000; ++i) cycles.push_back(s.draw(rng));
  EXPECT_NEAR(regenerative_ratio(cycles).point, 2.0, 0.05);
}

TEST(RegenerativeRatio, CoverageOverOneHundredSeeds) {
  const JointCycleSampler s = FunctionOfX{Exponential{1}, RewardFunction::square};
  int covered = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RngStream rng(seed, 0);
    std::vector<CycleSample> cycles;
    for (int i = 0; i < 10000; ++i) cycles.push_back(s.draw(rng));
    covered += regenerative_ratio(cycles).covers(2.0);
  }
  EXPECT_GE(covered, 90);
  EXPECT_LE(covered, 99);
}

TEST(RegenerativeRatio, TruncationBoundsPointFromAbove) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RngStream rng(seed, 3);
    const JointCycleSampler s = Independent{Exponential{1}, Uniform{-10, 5}};
    std::vector<CycleSample> cycles;
    for (int i = 0; i < 2000; ++i) cycles.push_back(s.draw(rng));
    const double base = regenerative_ratio(cycles).point;
    double prev = INFINITY;
    for (double M : {0.5, 1.0, 5.0, 9.0, 100.0}) {
      const double p = regenerative_ratio(truncate(cycles, M)).point;
      EXPECT_GE(p, base);
      EXPECT_LE(p, prev);
      prev = p;
    }
    EXPECT_EQ(prev, base);
  }
}

TEST(PathwiseRate, ElementaryRenewal) {
  RngStream rng(7, 0);
  const auto rp = realize_rewarded_path(FunctionOfX{Exponential{1}, RewardFunction::one}, 1e5, rng);
  const auto tr = pathwise_rate(rp, kEnd, {1e2, 1e3, 1e4, 1e5});
  ASSERT_EQ(tr.values.size(), 4u);
  EXPECT_NEAR(tr.values.back(), 1.0, 0.03);
}

TEST(PathwiseRate, DeterministicIsExactAtIntegers) {
  RngStream rng(7, 0);
  const auto rp = realize_rewarded_path(Independent{Deterministic{1}, Deterministic{3}}, 1000, rng);
  for (double v : pathwise_rate(rp, kEnd, {1, 10, 100, 1000}).values) EXPECT_EQ(v, 3.0);
}

TEST(PathwiseRate, CauchyTriangleZeroAtIntegers) {
  RngStream rng(8, 0);
  const auto rp = realize_rewarded_path(CauchyTriangle{}, 1000, rng);
  for (double v : pathwise_rate(rp, kTriangle, {1, 7, 100, 1000}).values) EXPECT_EQ(v, 0.0);
}

TEST(PathwiseRate, ValidatesCheckpoints) {
  RngStream rng(8, 0);
  const auto rp = realize_rewarded_path(CauchyTriangle{}, 10, rng);
  EXPECT_THROW(pathwise_rate(rp, kEnd, {5, 5}), InvalidParameter);
  EXPECT_THROW(pathwise_rate(rp, kEnd, {5, 11}), OutOfHorizon);
  EXPECT_THROW(ConvergenceTrace({1, 2}, {1}), InvalidParameter);
}

TEST(Ensemble, ElementaryRenewalMean) {
  const auto est = ensemble_mean_rate(FunctionOfX{Exponential{2}, RewardFunction::one}, kEnd, 1e3, 200, 1);
  EXPECT_NEAR(est.mean, 2.0, 0.02);
  EXPECT_EQ(est.n_reps, 200u);
  EXPECT_FALSE(est.heavy_tail);
  EXPECT_FALSE(est.median.has_value());
}

TEST(Ensemble, SquaredExponentialMean) {
  const auto est =
      ensemble_mean_rate(FunctionOfX{Exponential{1}, RewardFunction::square}, kEnd, 1e3, 200, 2);
  EXPECT_NEAR(est.mean, 2.0, 0.15);
}

TEST(Ensemble, IndependentOfThreadCount) {
  const JointCycleSampler s = Independent{Exponential{1}, Uniform{-1, 2}};
  const auto a = replicate_rates(s, kEnd, 100, 64, 11, 1);
  const auto b = replicate_rates(s, kEnd, 100, 64, 11, 7);
  EXPECT_EQ(a, b);
  const auto ea = summarize_ensemble(a, false);
  const auto eb = ensemble_mean_rate(s, kEnd, 100, 64, 11, 3);
  EXPECT_EQ(ea.mean, eb.mean);
  EXPECT_EQ(ea.std_error, eb.std_error);
}

TEST(Ensemble, ResultsIndexedByReplicationNotCompletionOrder) {
  // Tasks finish in scrambled order; results must still land by index.
  std::vector<std::size_t> delay(40);
  std::iota(delay.begin(), delay.end(), 0);
  std::shuffle(delay.begin(), delay.end(), std::mt19937(3));
  const auto out = run_replications(
      40,
      [&](std::size_t i) {
        volatile double sink = 0;
        for (std::size_t k = 0; k < delay[i] * 20000; ++k) sink = sink + 1;
        return static_cast<double>(i) * 2;
      },
      8);
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], 2.0 * i);
}

TEST(Ensemble, HeavyTailReportsMedianAndIqr) {
  const auto est = ensemble_mean_rate(CauchyTriangle{}, kTriangle, 2.5, 4000, 1);
  ASSERT_TRUE(est.heavy_tail);
  ASSERT_TRUE(est.median.has_value());
  ASSERT_TRUE(est.iqr.has_value());
  // R(2.5)/2.5 ~ Cauchy(0, 0.2): median 0, IQR 0.4.
  EXPECT_NEAR(*est.median, 0.0, 0.05);
  EXPECT_NEAR(*est.iqr, 0.4, 0.05);
}

TEST(Ensemble, SummaryAgainstDirectFormula) {
  const std::vector<double> v{1, 2, 3, 4, 10};
  const auto e = summarize_ensemble(v, true);
  EXPECT_DOUBLE_EQ(e.mean, 4.0);
  EXPECT_DOUBLE_EQ(e.std_error, std::sqrt(50.0 / 4 / 5));
  EXPECT_DOUBLE_EQ(*e.median, 3.0);
  EXPECT_DOUBLE_EQ(*e.iqr, 2.0);
  EXPECT_THROW(summarize_ensemble(std::vector<double>{1}, false), InvalidParameter);
  EXPECT_THROW(ensemble_mean_rate(CauchyTriangle{}, kEnd, 1, 1, 1), InvalidParameter);
}

TEST(Ensemble, CauchyRunningMeanNeverSettles) {
  // At t = k + 1/2 each R(t) is Cauchy(0, 1/2), and so is every running mean.
  int unstable = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto values = replicate_cumulative(CauchyTriangle{}, kTriangle, 2.5, 100000, seed, 0);
    const auto rm = running_mean(values);
    double worst = 0;
    for (std::size_t n = 1000; n <= 100000; ++n) worst = std::max(worst, std::abs(rm[n - 1]));
    unstable += worst > 1.0;
  }
  EXPECT_GE(unstable, 15);
}

TEST(Wald, DeterministicExact) {
  const auto w = wald_check(FunctionOfX{Deterministic{1}, RewardFunction::one}, 10, 5, 1);
  EXPECT_EQ(w.mean_cycle_sum, 11.0);
  EXPECT_EQ(w.predicted(), 11.0);
  EXPECT_EQ(w.relative_gap, 0.0);
}

TEST(Wald, ExponentialAndUniform) {
  EXPECT_LT(wald_check(FunctionOfX{Exponential{1}, RewardFunction::one}, 100, 500, 1).relative_gap, 0.02);
  EXPECT_LT(wald_check(FunctionOfX{Uniform{0, 1}, RewardFunction::one}, 50, 500, 1).relative_gap, 0.02);
}

TEST(Wald, ExponentialStoppingCountOracle) {
  // For Poisson(1) arrivals E[N(t)+1] = t + 1 and the overshoot has mean 1.
  const auto w = wald_check(FunctionOfX{Exponential{1}, RewardFunction::one}, 100, 2000, 4);
  EXPECT_NEAR(w.mean_stopping_count, 101.0, 4 * std::sqrt(100.0 / 2000));
  EXPECT_NEAR(w.mean_cycle_sum, 101.0, 4 * std::sqrt(1.0 / 2000) + 0.01);
}

TEST(AsVsMean, AnalyticMeanIsOneEverywhere) {
  for (std::uint64_t n = 1; n <= 1000000; ++n) {
    const auto m = mean(y_n_law(n));
    ASSERT_TRUE(m.has_value());
    ASSERT_EQ(*m, 1.0) << n;
  }
}

TEST(AsVsMean, DemoRows) {
  const auto rows = as_vs_mean_demo(1000, 1);
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows.back().n, 1000u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.analytic_mean, 1.0);
    EXPECT_DOUBLE_EQ(r.nonzero_probability, 1.0 / (r.n + 1.0));
    // Binomial 4-sigma band around 1/(n+1).
    const double p = r.nonzero_probability;
    EXPECT_NEAR(r.empirical_nonzero, p, 4 * std::sqrt(p * (1 - p) / 10000) + 1e-4) << r.n;
  }
  EXPECT_LT(rows.back().empirical_nonzero, 0.005);
}

TEST(AsVsMean, NonzeroProbabilityExample) {
  const auto rows = as_vs_mean_demo(99, 1, 10);
  EXPECT_DOUBLE_EQ(rows.back().nonzero_probability, 0.01);
  EXPECT_THROW(as_vs_mean_demo(0, 1), InvalidParameter);
}

TEST(AsVsMean, DecadeGrid) {
  EXPECT_EQ(decade_grid(1), (std::vector<std::uint64_t>{1}));
  EXPECT_EQ(decade_grid(100), (std::vector<std::uint64_t>{1, 2, 5, 10, 20, 50, 100}));
  EXPECT_EQ(decade_grid(30), (std::vector<std::uint64_t>{1, 2, 5, 10, 20, 30}));
}

TEST(Statistics, QuantileAndKs) {
  EXPECT_DOUBLE_EQ(sample_quantile({4, 1, 3, 2}, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(sample_quantile({4, 1, 3, 2}, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(sample_quantile({4, 1, 3, 2}, 1.0), 4.0);
  RngStream rng(1, 0);
  std::vector<double> u;
  for (int i = 0; i < 5000; ++i) u.push_back(rng.uniform());
  const auto cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
  EXPECT_NEAR(ks_statistic(u, cdf), rt::ks_distance(u, cdf), 1e-15);
  EXPECT_NEAR(ks_critical_1pct(5000), rt::ks_critical_99(5000), 1e-4);
}
