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

#ifndef PREFNET_MEASURES_H_
#define PREFNET_MEASURES_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prefnet/network.h"

namespace prefnet {

// Which temporal slice of a hashtag's records a network was built from.
enum class Half { kFirst, kSecond, kWhole };

std::string_view HalfName(Half half);
Half ParseHalf(std::string_view name);

// Fraction of the combined link weight of a and b that lies on links carrying
// positive weight in both:
//
//   sum_ij (a_ij + b_ij) H(a_ij) H(b_ij) / sum_ij (a_ij + b_ij)
//
// with H(x) = 1 iff x > 0. Inputs must already share a node ordering; no
// normalization happens here. Throws kDimensionMismatch, or
// kUndefinedMeasure when both networks are empty.
double ModifiedWeightedJaccard(const WeightedNetwork& a,
                               const WeightedNetwork& b);

// Row i scaled to unit Euclidean norm. Throws kZeroRow for an isolated node.
std::vector<double> StateVector(const WeightedNetwork& net, NodeId i);

// Cosine between node i's rows in a and b; in [0, 1] for nonnegative weights.
// Throws kIneligibleNode when the row is zero in either network.
double FunctionalSimilarity(const WeightedNetwork& a, const WeightedNetwork& b,
                            NodeId i);

struct MeanSimilarity {
  double value = 0.0;
  std::size_t nodes_compared = 0;
};

// Average FunctionalSimilarity over the nodes whose rows are nonzero in both
// networks. Nodes active in only one network are skipped, not scored 0.
// Throws kUndefinedMeasure when no node qualifies.
MeanSimilarity MeanFunctionalSimilarity(const WeightedNetwork& a,
                                        const WeightedNetwork& b);

// Restricts to the shared users, then normalizes each side to unit total.
AlignedPair PreprocessPair(const LabeledNetwork& a, const LabeledNetwork& b);
// Same for two dense networks over one node universe (simulated imprints).
AlignedPair PreprocessPair(const WeightedNetwork& a, const WeightedNetwork& b);

struct PairMeasures {
  double jaccard = 0.0;
  double mean_similarity = 0.0;
  std::size_t nodes_compared = 0;
};

PairMeasures MeasureAligned(const AlignedPair& pair);

// One row of a comparison table. A pair whose measures are undefined keeps
// empty optionals and the reason in `failure`.
struct PairResult {
  std::string id_a;
  std::string id_b;
  Half half_a = Half::kWhole;
  Half half_b = Half::kWhole;
  std::optional<double> jaccard;
  std::optional<double> mean_similarity;
  std::size_t nodes_compared = 0;
  std::string failure;

  bool ok() const { return jaccard.has_value(); }
};

}  // namespace prefnet

#endif  // PREFNET_MEASURES_H_
