// Copyright 2026 The prefnet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "prefnet/stats.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "prefnet/error.h"
#include "prefnet/rng.h"
#include "test_util.h"

namespace prefnet {
namespace {

double Integral(const HistogramResult& h) {
  double sum = 0.0;
  for (std::size_t k = 0; k < h.bins(); ++k) {
    sum += h.densities[k] * (h.bin_edges[k + 1] - h.bin_edges[k]);
  }
  return sum;
}

TEST(SturgesTest, Examples) {
  EXPECT_EQ(SturgesBins(1), 1u);
  EXPECT_EQ(SturgesBins(2), 2u);
  EXPECT_EQ(SturgesBins(128), 8u);
  EXPECT_EQ(SturgesBins(129), 9u);
  EXPECT_EQ(SturgesBins(240), 9u);
  EXPECT_THROW(SturgesBins(0), Error);
}

TEST(SturgesTest, MatchesLogFormula) {
  for (std::size_t n = 1; n < 5000; ++n) {
    const auto expected =
        static_cast<std::size_t>(std::ceil(std::log2(double(n)))) + 1;
    ASSERT_EQ(SturgesBins(n), expected) << n;
  }
}

TEST(HistogramTest, PointMass) {
  const std::vector<double> values(50, 0.42);
  const HistogramResult h = Histogram(values);
  EXPECT_EQ(h.bins(), SturgesBins(50));
  EXPECT_EQ(h.n_samples, 50u);
  std::size_t occupied = 0;
  for (double d : h.densities) {
    if (d > 0) {
      ++occupied;
      EXPECT_DOUBLE_EQ(d, 1.0 / h.bin_width());
    }
  }
  EXPECT_EQ(occupied, 1u);
  EXPECT_FALSE(h.has_bands());
}

TEST(HistogramTest, EdgesAndClosedLastBin) {
  const std::vector<double> values{0.0, 1.0, 1.0, 0.5};
  const HistogramResult h = Histogram(values);
  ASSERT_EQ(h.bins(), 3u);
  EXPECT_EQ(h.bin_edges.front(), 0.0);
  EXPECT_EQ(h.bin_edges.back(), 1.0);
  EXPECT_NEAR(Integral(h), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(h.densities[2], 0.5 * 3);
}

TEST(HistogramTest, UniformSamplesAreFlat) {
  Rng rng(1);
  std::vector<double> values(100000);
  for (double& v : values) v = rng.Uniform();
  const HistogramResult h = Histogram(values);
  for (double d : h.densities) EXPECT_NEAR(d, 1.0, 0.05);
  EXPECT_NEAR(Integral(h), 1.0, 1e-9);
}

TEST(HistogramTest, NormalizedOnRandomInputs) {
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> values(1 + rng.Index(500));
    for (double& v : values) v = std::pow(rng.Uniform(), 3);
    const HistogramResult h = Histogram(values);
    EXPECT_EQ(h.bins(), SturgesBins(values.size()));
    for (double d : h.densities) EXPECT_GE(d, 0.0);
    EXPECT_NEAR(Integral(h), 1.0, 1e-9);
  }
}

TEST(HistogramTest, IdenticalEnsemblesGiveZeroWidthBands) {
  Rng rng(3);
  std::vector<double> values(240);
  for (double& v : values) v = rng.Uniform();
  const std::vector<std::vector<double>> ensembles(8, values);
  const HistogramResult h = Histogram(values, ensembles);
  ASSERT_TRUE(h.has_bands());
  for (std::size_t k = 0; k < h.bins(); ++k) {
    EXPECT_DOUBLE_EQ(h.band_low[k], h.densities[k]);
    EXPECT_DOUBLE_EQ(h.band_high[k], h.densities[k]);
  }
}

TEST(HistogramTest, BandsAreMeanPlusMinusStandardError) {
  // Two ensembles of two values in two bins (n = 2 gives 2 bins).
  const std::vector<double> values{0.1, 0.9};
  const std::vector<std::vector<double>> ensembles{{0.1, 0.2}, {0.1, 0.9}};
  const HistogramResult h = Histogram(values, ensembles);
  ASSERT_EQ(h.bins(), 2u);
  // Bin 0 densities: 2.0 and 1.0 -> mean 1.5, sd 0.7071, se 0.5.
  EXPECT_NEAR(h.band_low[0], 1.0, 1e-12);
  EXPECT_NEAR(h.band_high[0], 2.0, 1e-12);
  EXPECT_NEAR(h.band_low[1], 0.0, 1e-12);
  EXPECT_NEAR(h.band_high[1], 1.0, 1e-12);
}

TEST(HistogramTest, Errors) {
  EXPECT_THROW(Histogram(std::vector<double>{}), Error);
  EXPECT_THROW(Histogram(std::vector<double>{0.5, 1.5}), Error);
  EXPECT_THROW(Histogram(std::vector<double>{-0.1}), Error);
}

TEST(KsTest, Examples) {
  const std::vector<double> a{1, 2, 3};
  const std::vector<double> b{2, 3, 4};
  EXPECT_NEAR(KsStatistic(a, b).statistic, 1.0 / 3, 1e-15);
  EXPECT_EQ(KsStatistic(a, a).statistic, 0.0);
  const std::vector<double> zeros{0, 0};
  const std::vector<double> ones{1, 1};
  const KsResult r = KsStatistic(zeros, ones);
  EXPECT_EQ(r.statistic, 1.0);
  EXPECT_EQ(r.n_a, 2u);
  EXPECT_EQ(r.n_b, 2u);
  EXPECT_THROW(KsStatistic(zeros, std::vector<double>{}), Error);
}

TEST(KsTest, MatchesBruteForceAndProperties) {
  Rng rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> a(1 + rng.Index(40));
    std::vector<double> b(1 + rng.Index(40));
    // Coarse grid values force ties.
    for (double& v : a) v = static_cast<double>(rng.Index(12)) / 11;
    for (double& v : b) v = static_cast<double>(rng.Index(12)) / 11;
    const double ks = KsStatistic(a, b).statistic;
    EXPECT_NEAR(ks, testing::BruteKs(a, b), 1e-12);
    EXPECT_EQ(ks, KsStatistic(b, a).statistic);
    EXPECT_GE(ks, 0.0);
    EXPECT_LE(ks, 1.0);
    std::vector<double> ca = a, cb = b;
    for (double& v : ca) v = v * v * v;
    for (double& v : cb) v = v * v * v;
    EXPECT_EQ(KsStatistic(ca, cb).statistic, ks);
  }
}

TEST(SummaryTest, Basic) {
  const std::vector<double> v{1, 2, 3, 4};
  const Summary s = Summarize(v);
  EXPECT_EQ(s.n, 4u);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_NEAR(s.stddev, std::sqrt(5.0 / 3), 1e-15);
  EXPECT_NEAR(s.std_error, std::sqrt(5.0 / 3) / 2, 1e-15);
  const Summary one = Summarize(std::vector<double>{0.7});
  EXPECT_EQ(one.stddev, 0.0);
}

}  // namespace
}  // namespace prefnet
