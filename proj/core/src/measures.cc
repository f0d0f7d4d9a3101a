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

#include "prefnet/measures.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "prefnet/error.h"

namespace prefnet {
namespace {

void CheckSameShape(const WeightedNetwork& a, const WeightedNetwork& b) {
  if (a.size() != b.size()) {
    Fail(ErrorCode::kDimensionMismatch,
         "networks have " + std::to_string(a.size()) + " and " +
             std::to_string(b.size()) + " nodes");
  }
}

double SquaredNorm(std::span<const double> row) {
  double sum = 0.0;
  for (double w : row) sum += w * w;
  return sum;
}

double Unit(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

std::string_view HalfName(Half half) {
  switch (half) {
    case Half::kFirst: return "first";
    case Half::kSecond: return "second";
    case Half::kWhole: return "whole";
  }
  return "unknown";
}

Half ParseHalf(std::string_view name) {
  if (name == "first") return Half::kFirst;
  if (name == "second") return Half::kSecond;
  if (name == "whole") return Half::kWhole;
  Fail(ErrorCode::kFormat, "unknown half '" + std::string(name) + "'");
}

double ModifiedWeightedJaccard(const WeightedNetwork& a,
                               const WeightedNetwork& b) {
  CheckSameShape(a, b);
  const std::size_t n = a.size();
  double shared = 0.0;
  double combined = 0.0;
  for (NodeId i = 0; i < n; ++i) {
    const auto ra = a.row(i);
    const auto rb = b.row(i);
    for (NodeId j = i + 1; j < n; ++j) {
      const double sum = ra[j] + rb[j];
      combined += sum;
      if (ra[j] > 0.0 && rb[j] > 0.0) shared += sum;
    }
  }
  if (!(combined > 0.0)) {
    Fail(ErrorCode::kUndefinedMeasure, "both networks carry no weight");
  }
  return Unit(shared / combined);
}

std::vector<double> StateVector(const WeightedNetwork& net, NodeId i) {
  if (i >= net.size()) Fail(ErrorCode::kIndex, "node id out of range");
  const auto row = net.row(i);
  const double norm = std::sqrt(SquaredNorm(row));
  if (!(norm > 0.0)) {
    Fail(ErrorCode::kZeroRow, "node " + std::to_string(i) + " has no links");
  }
  std::vector<double> out(row.begin(), row.end());
  for (double& w : out) w /= norm;
  return out;
}

double FunctionalSimilarity(const WeightedNetwork& a, const WeightedNetwork& b,
                            NodeId i) {
  CheckSameShape(a, b);
  if (i >= a.size()) Fail(ErrorCode::kIndex, "node id out of range");
  const auto ra = a.row(i);
  const auto rb = b.row(i);
  const double na = SquaredNorm(ra);
  const double nb = SquaredNorm(rb);
  if (!(na > 0.0 && nb > 0.0)) {
    Fail(ErrorCode::kIneligibleNode,
         "node " + std::to_string(i) + " is isolated in one network");
  }
  double dot = 0.0;
  for (std::size_t j = 0; j < ra.size(); ++j) dot += ra[j] * rb[j];
  return Unit(dot / std::sqrt(na * nb));
}

MeanSimilarity MeanFunctionalSimilarity(const WeightedNetwork& a,
                                        const WeightedNetwork& b) {
  CheckSameShape(a, b);
  MeanSimilarity out;
  double sum = 0.0;
  for (NodeId i = 0; i < a.size(); ++i) {
    if (!(a.degree(i) > 0.0 && b.degree(i) > 0.0)) continue;
    sum += FunctionalSimilarity(a, b, i);
    ++out.nodes_compared;
  }
  if (out.nodes_compared == 0) {
    Fail(ErrorCode::kUndefinedMeasure, "no node is active in both networks");
  }
  out.value = Unit(sum / static_cast<double>(out.nodes_compared));
  return out;
}

namespace {

AlignedPair NormalizeBoth(AlignedPair pair) {
  pair.a = NormalizeTotal(pair.a);
  pair.b = NormalizeTotal(pair.b);
  return pair;
}

}  // namespace

AlignedPair PreprocessPair(const LabeledNetwork& a, const LabeledNetwork& b) {
  return NormalizeBoth(IntersectNodes(a, b));
}

AlignedPair PreprocessPair(const WeightedNetwork& a, const WeightedNetwork& b) {
  return NormalizeBoth(IntersectActive(a, b));
}

PairMeasures MeasureAligned(const AlignedPair& pair) {
  PairMeasures out;
  out.jaccard = ModifiedWeightedJaccard(pair.a, pair.b);
  const MeanSimilarity sim = MeanFunctionalSimilarity(pair.a, pair.b);
  out.mean_similarity = sim.value;
  out.nodes_compared = sim.nodes_compared;
  return out;
}

}  // namespace prefnet
