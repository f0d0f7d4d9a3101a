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

#ifndef PREFNET_NETWORK_H_
#define PREFNET_NETWORK_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace prefnet {

using NodeId = std::size_t;

// Undirected weighted network over a fixed set of nodes.
//
// Weights live in a full symmetric row-major N x N table with contiguous
// rows; weighted degrees and the total link weight are maintained
// incrementally. Once evolution is finished a network is
// treated as frozen and may be read from any number of threads.
class WeightedNetwork {
 public:
  // Throws Error(kInvalidSize) when n_nodes < 2.
  explicit WeightedNetwork(std::size_t n_nodes);

  std::size_t size() const { return n_; }

  double weight(NodeId i, NodeId j) const { return weights_[i * n_ + j]; }
  std::span<const double> row(NodeId i) const {
    return {weights_.data() + i * n_, n_};
  }
  double degree(NodeId i) const { return degrees_[i]; }
  std::span<const double> degrees() const { return degrees_; }

  // Sum over unordered pairs i < j.
  double total_weight() const { return total_; }

  // Increments L_ij (and L_ji) by x > 0.
  void AddWeight(NodeId i, NodeId j, double x);

  // Sets every off-diagonal entry to w >= 0. Used for complete initial
  // networks.
  void FillComplete(double w);

  // Multiplies every weight by factor > 0 and recomputes the cached sums.
  void Scale(double factor);

  // Row sums computed from scratch, for auditing the cached degrees.
  std::vector<double> RecomputeDegrees() const;

  // Induced subnetwork on `nodes`, in the given order.
  WeightedNetwork Project(std::span<const NodeId> nodes) const;

  // Number of links with strictly positive weight.
  std::size_t CountLinks() const;

  friend bool operator==(const WeightedNetwork&,
                         const WeightedNetwork&) = default;

 private:
  void CheckPair(NodeId i, NodeId j) const;
  void RecomputeSums();

  std::size_t n_;
  std::vector<double> weights_;
  std::vector<double> degrees_;
  double total_ = 0.0;
};

// Returns a copy with every weight divided by the total weight.
// Throws Error(kEmptyNetwork) when the total is zero.
WeightedNetwork NormalizeTotal(const WeightedNetwork& net);

struct Link {
  NodeId a;
  NodeId b;
  double weight;

  friend bool operator==(const Link&, const Link&) = default;
};

// Sparse network whose nodes carry external labels (user ids). Links are kept
// with a < b, sorted, and without duplicates.
struct LabeledNetwork {
  std::vector<std::string> labels;
  std::vector<Link> links;

  std::size_t size() const { return labels.size(); }
  double total_weight() const;

  // Builds a labeled view of a dense network, keeping every node.
  static LabeledNetwork FromDense(const WeightedNetwork& net,
                                  std::vector<std::string> labels);
};

// Two networks restricted to a common node set with identical ordering.
// index_a[k] / index_b[k] give the original position of aligned node k.
struct AlignedPair {
  WeightedNetwork a;
  WeightedNetwork b;
  std::vector<std::string> labels;
  std::vector<NodeId> index_a;
  std::vector<NodeId> index_b;
};

// Restricts both networks to the labels they share, ordered by label.
// Throws Error(kNoCommonUsers) when fewer than two labels are shared; a single
// shared user cannot carry a link.
AlignedPair IntersectNodes(const LabeledNetwork& a, const LabeledNetwork& b);

// Same as IntersectNodes for two dense networks over one node universe, where
// a node "participates" when its weighted degree is positive. Labels are the
// decimal node indices.
AlignedPair IntersectActive(const WeightedNetwork& a, const WeightedNetwork& b);

}  // namespace prefnet

#endif  // PREFNET_NETWORK_H_
