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
#include <bit>
#include <cmath>
#include <cstdint>

#include "prefnet/error.h"

namespace prefnet {
namespace {

std::vector<double> BinDensities(std::span<const double> values,
                                 std::size_t bins) {
  std::vector<double> counts(bins, 0.0);
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      Fail(ErrorCode::kInvalidArgument, "histogram values must lie in [0, 1]");
    }
    auto bin = static_cast<std::size_t>(v * static_cast<double>(bins));
    counts[std::min(bin, bins - 1)] += 1.0;
  }
  const double scale =
      static_cast<double>(bins) / static_cast<double>(values.size());
  for (double& c : counts) c *= scale;
  return counts;
}

}  // namespace

std::size_t SturgesBins(std::size_t n) {
  if (n == 0) Fail(ErrorCode::kInvalidArgument, "Sturges rule needs n >= 1");
  // bit_width(n - 1) == ceil(log2 n) for n >= 1.
  return static_cast<std::size_t>(std::bit_width(n - 1)) + 1;
}

HistogramResult Histogram(std::span<const double> values,
                          std::span<const std::vector<double>> ensembles) {
  if (values.empty()) Fail(ErrorCode::kInvalidArgument, "empty sample");
  HistogramResult out;
  out.n_samples = values.size();
  const std::size_t bins = SturgesBins(values.size());
  out.bin_edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) {
    out.bin_edges[b] = static_cast<double>(b) / static_cast<double>(bins);
  }
  out.densities = BinDensities(values, bins);

  if (!ensembles.empty()) {
    std::vector<std::vector<double>> per_ensemble;
    for (const auto& ensemble : ensembles) {
      if (ensemble.empty()) {
        Fail(ErrorCode::kInvalidArgument, "empty ensemble sample");
      }
      per_ensemble.push_back(BinDensities(ensemble, bins));
    }
    out.band_low.resize(bins);
    out.band_high.resize(bins);
    std::vector<double> column(per_ensemble.size());
    for (std::size_t b = 0; b < bins; ++b) {
      for (std::size_t e = 0; e < per_ensemble.size(); ++e) {
        column[e] = per_ensemble[e][b];
      }
      const Summary s = Summarize(column);
      out.band_low[b] = s.mean - s.std_error;
      out.band_high[b] = s.mean + s.std_error;
    }
  }
  return out;
}

KsResult KsStatistic(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    Fail(ErrorCode::kInvalidArgument, "KS statistic needs nonempty samples");
  }
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());

  // Track ECDF numerators as integers; |i/na - j/nb| = |i nb - j na| / (na nb).
  const auto na = static_cast<std::int64_t>(sa.size());
  const auto nb = static_cast<std::int64_t>(sb.size());
  std::int64_t i = 0;
  std::int64_t j = 0;
  std::int64_t best = 0;
  while (i < na || j < nb) {
    double x;
    if (j >= nb || (i < na && sa[i] <= sb[j])) {
      x = sa[i];
    } else {
      x = sb[j];
    }
    while (i < na && sa[i] <= x) ++i;
    while (j < nb && sb[j] <= x) ++j;
    best = std::max(best, std::abs(i * nb - j * na));
  }
  return {static_cast<double>(best) / static_cast<double>(na * nb),
          sa.size(), sb.size()};
}

Summary Summarize(std::span<const double> values) {
  Summary s;
  s.n = values.size();
  if (s.n == 0) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.n);
  if (s.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(s.n - 1));
    s.std_error = s.stddev / std::sqrt(static_cast<double>(s.n));
  }
  return s;
}

}  // namespace prefnet
