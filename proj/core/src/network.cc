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

#include "prefnet/network.h"

#include <algorithm>
#include <string>
#include <unordered_map>
#include <utility>

#include "prefnet/error.h"

namespace prefnet {

WeightedNetwork::WeightedNetwork(std::size_t n_nodes) : n_(n_nodes) {
  if (n_nodes < 2) {
    Fail(ErrorCode::kInvalidSize,
         "network needs at least 2 nodes, got " + std::to_string(n_nodes));
  }
  weights_.assign(n_ * n_, 0.0);
  degrees_.assign(n_, 0.0);
}

void WeightedNetwork::CheckPair(NodeId i, NodeId j) const {
  if (i >= n_ || j >= n_) {
    Fail(ErrorCode::kIndex, "node id out of range: (" + std::to_string(i) +
                                ", " + std::to_string(j) + ") with N=" +
                                std::to_string(n_));
  }
  if (i == j) {
    Fail(ErrorCode::kSelfLoop, "self-loop on node " + std::to_string(i));
  }
}

void WeightedNetwork::AddWeight(NodeId i, NodeId j, double x) {
  CheckPair(i, j);
  if (!(x > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "weight increment must be positive");
  }
  weights_[i * n_ + j] += x;
  weights_[j * n_ + i] += x;
  degrees_[i] += x;
  degrees_[j] += x;
  total_ += x;
}

void WeightedNetwork::FillComplete(double w) {
  if (w < 0.0) Fail(ErrorCode::kInvalidArgument, "negative weight");
  for (NodeId i = 0; i < n_; ++i) {
    for (NodeId j = 0; j < n_; ++j) weights_[i * n_ + j] = (i == j) ? 0.0 : w;
  }
  RecomputeSums();
}

void WeightedNetwork::Scale(double factor) {
  if (!(factor > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "scale factor must be positive");
  }
  for (double& w : weights_) w *= factor;
  RecomputeSums();
}

void WeightedNetwork::RecomputeSums() {
  degrees_ = RecomputeDegrees();
  // Upper triangle only.
  double total = 0.0;
  for (NodeId i = 0; i < n_; ++i) {
    for (NodeId j = i + 1; j < n_; ++j) total += weights_[i * n_ + j];
  }
  total_ = total;
}

std::vector<double> WeightedNetwork::RecomputeDegrees() const {
  std::vector<double> out(n_, 0.0);
  for (NodeId i = 0; i < n_; ++i) {
    double sum = 0.0;
    for (double w : row(i)) sum += w;
    out[i] = sum;
  }
  return out;
}

WeightedNetwork WeightedNetwork::Project(std::span<const NodeId> nodes) const {
  WeightedNetwork out(nodes.size());
  const std::size_t m = nodes.size();
  for (std::size_t a = 0; a < m; ++a) {
    if (nodes[a] >= n_) Fail(ErrorCode::kIndex, "projection index out of range");
    for (std::size_t b = 0; b < m; ++b) {
      out.weights_[a * m + b] = (a == b) ? 0.0 : weight(nodes[a], nodes[b]);
    }
  }
  out.RecomputeSums();
  return out;
}

std::size_t WeightedNetwork::CountLinks() const {
  std::size_t count = 0;
  for (NodeId i = 0; i < n_; ++i) {
    for (NodeId j = i + 1; j < n_; ++j) count += weights_[i * n_ + j] > 0.0;
  }
  return count;
}

WeightedNetwork NormalizeTotal(const WeightedNetwork& net) {
  const double total = net.total_weight();
  if (!(total > 0.0)) {
    Fail(ErrorCode::kEmptyNetwork, "cannot normalize a network with no weight");
  }
  WeightedNetwork out = net;
  out.Scale(1.0 / total);
  return out;
}

double LabeledNetwork::total_weight() const {
  double total = 0.0;
  for (const Link& link : links) total += link.weight;
  return total;
}

LabeledNetwork LabeledNetwork::FromDense(const WeightedNetwork& net,
                                         std::vector<std::string> labels) {
  if (labels.size() != net.size()) {
    Fail(ErrorCode::kDimensionMismatch, "label count does not match network");
  }
  LabeledNetwork out;
  out.labels = std::move(labels);
  for (NodeId i = 0; i < net.size(); ++i) {
    for (NodeId j = i + 1; j < net.size(); ++j) {
      if (net.weight(i, j) > 0.0) out.links.push_back({i, j, net.weight(i, j)});
    }
  }
  return out;
}

namespace {

WeightedNetwork Densify(const LabeledNetwork& net,
                        const std::vector<NodeId>& keep) {
  // Original index -> aligned index, or npos when dropped.
  constexpr NodeId kDropped = static_cast<NodeId>(-1);
  std::vector<NodeId> position(net.size(), kDropped);
  for (std::size_t k = 0; k < keep.size(); ++k) position[keep[k]] = k;

  WeightedNetwork out(keep.size());
  for (const Link& link : net.links) {
    const NodeId pa = position[link.a];
    const NodeId pb = position[link.b];
    if (pa != kDropped && pb != kDropped && link.weight > 0.0) {
      out.AddWeight(pa, pb, link.weight);
    }
  }
  return out;
}

}  // namespace

AlignedPair IntersectNodes(const LabeledNetwork& a, const LabeledNetwork& b) {
  std::unordered_map<std::string_view, NodeId> in_b;
  in_b.reserve(b.labels.size());
  for (NodeId k = 0; k < b.labels.size(); ++k) in_b.emplace(b.labels[k], k);

  std::vector<std::pair<std::string_view, std::pair<NodeId, NodeId>>> common;
  for (NodeId k = 0; k < a.labels.size(); ++k) {
    auto it = in_b.find(a.labels[k]);
    if (it != in_b.end()) common.push_back({a.labels[k], {k, it->second}});
  }
  if (common.size() < 2) {
    Fail(ErrorCode::kNoCommonUsers,
         "networks share " + std::to_string(common.size()) + " users");
  }
  std::sort(common.begin(), common.end());

  std::vector<NodeId> keep_a;
  std::vector<NodeId> keep_b;
  std::vector<std::string> labels;
  for (const auto& [label, idx] : common) {
    labels.emplace_back(label);
    keep_a.push_back(idx.first);
    keep_b.push_back(idx.second);
  }
  WeightedNetwork da = Densify(a, keep_a);
  WeightedNetwork db = Densify(b, keep_b);
  return {std::move(da), std::move(db), std::move(labels), std::move(keep_a),
          std::move(keep_b)};
}

AlignedPair IntersectActive(const WeightedNetwork& a,
                            const WeightedNetwork& b) {
  if (a.size() != b.size()) {
    Fail(ErrorCode::kDimensionMismatch, "networks span different node sets");
  }
  std::vector<NodeId> keep;
  for (NodeId i = 0; i < a.size(); ++i) {
    if (a.degree(i) > 0.0 && b.degree(i) > 0.0) keep.push_back(i);
  }
  if (keep.size() < 2) {
    Fail(ErrorCode::kNoCommonUsers,
         "networks share " + std::to_string(keep.size()) + " active nodes");
  }
  std::vector<std::string> labels;
  labels.reserve(keep.size());
  for (NodeId i : keep) labels.push_back(std::to_string(i));
  return {a.Project(keep), b.Project(keep), std::move(labels), keep, keep};
}

}  // namespace prefnet
