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

#ifndef PREFNET_STATS_H_
#define PREFNET_STATS_H_

#include <cstddef>
#include <span>
#include <vector>

namespace prefnet {

// ceil(log2 n) + 1. Throws Error(kInvalidArgument) for n == 0.
std::size_t SturgesBins(std::size_t n);

struct HistogramResult {
  std::vector<double> bin_edges;  // k + 1 edges spanning [0, 1]
  std::vector<double> densities;  // k probability densities
  std::size_t n_samples = 0;
  // Per-bin mean -/+ standard error over repeated ensembles; empty when no
  // ensembles were supplied.
  std::vector<double> band_low;
  std::vector<double> band_high;

  std::size_t bins() const { return densities.size(); }
  double bin_width() const { return 1.0 / static_cast<double>(bins()); }
  bool has_bands() const { return !band_low.empty(); }
};

// Density histogram over [0, 1] with a Sturges bin count. Bins are half-open
// [lo, hi) except the last, which also takes 1. When `ensembles` is nonempty
// every ensemble is binned on the same edges and the bands report the
// per-bin mean density -/+ its standard error across ensembles.
// Throws Error(kInvalidArgument) on empty input or values outside [0, 1].
HistogramResult Histogram(std::span<const double> values,
                          std::span<const std::vector<double>> ensembles = {});

struct KsResult {
  double statistic = 0.0;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
};

// Two-sample Kolmogorov-Smirnov statistic sup_x |F_a(x) - F_b(x)| with
// right-continuous empirical CDFs. No p-value.
KsResult KsStatistic(std::span<const double> a, std::span<const double> b);

struct Summary {
  std::size_t n = 0;
  double mean = 0.0;
  double stddev = 0.0;     // sample standard deviation (n - 1)
  double std_error = 0.0;  // stddev / sqrt(n)
};

Summary Summarize(std::span<const double> values);

}  // namespace prefnet

#endif  // PREFNET_STATS_H_
