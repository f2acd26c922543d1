#include <cmath>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "renewalkit/rng.hpp"
#include "test_support.hpp"

using renewalkit::RngStream;

TEST(RngStream, SameSeedAndStreamIsBitIdentical) {
  RngStream a(42, 3), b(42, 3);
  for (int i = 0; i < 10000; ++i) ASSERT_EQ(a.next(), b.next());
}

TEST(RngStream, DistinctStreamsAndSeedsDiverge) {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    for (std::uint64_t stream = 0; stream < 20; ++stream) firsts.insert(RngStream(seed, stream).next());
  EXPECT_EQ(firsts.size(), 400u);
}

TEST(RngStream, UniformStaysInsideOpenInterval) {
  RngStream rng(7, 0);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 1'000'000; ++i) {
    const double u = rng.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  EXPECT_GT(lo, 0.0);
  EXPECT_LT(hi, 1.0);
  EXPECT_EQ(rng.draws(), 1'000'000u);
}

TEST(RngStream, UniformPassesKolmogorovSmirnov) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    RngStream rng(seed, 0);
    std::vector<double> xs(100000);
    for (auto& x : xs) x = rng.uniform();
    const double d = renewalkit::testing::ks_distance(xs, [](double u) { return u; });
    EXPECT_LT(d, renewalkit::testing::ks_critical_99(xs.size())) << "seed " << seed;
  }
}

TEST(RngStream, NeighbouringStreamsAreUncorrelated) {
  RngStream a(9, 0), b(9, 1);
  const int n = 200000;
  double sab = 0, sa = 0, sb = 0, saa = 0, sbb = 0;
  for (int i = 0; i < n; ++i) {
    const double x = a.uniform(), y = b.uniform();
    sab += x * y;
    sa += x;
    sb += y;
    saa += x * x;
    sbb += y * y;
  }
  const double cov = sab / n - (sa / n) * (sb / n);
  const double corr = cov / std::sqrt((saa / n - sa * sa / n / n) * (sbb / n - sb * sb / n / n));
  // 5 standard errors of a null correlation.
  EXPECT_LT(std::abs(corr), 5.0 / std::sqrt(n));
}
