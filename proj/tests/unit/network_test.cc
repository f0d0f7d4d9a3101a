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
#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "prefnet/error.h"
#include "test_util.h"

namespace prefnet {
namespace {

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kInvalidArgument;
}

TEST(WeightedNetworkTest, StartsEmpty) {
  WeightedNetwork net(3);
  EXPECT_EQ(net.size(), 3u);
  EXPECT_EQ(net.total_weight(), 0.0);
  for (NodeId i = 0; i < 3; ++i) {
    for (NodeId j = 0; j < 3; ++j) EXPECT_EQ(net.weight(i, j), 0.0);
  }
  WeightedNetwork big(400);
  EXPECT_TRUE(std::all_of(big.degrees().begin(), big.degrees().end(),
                          [](double k) { return k == 0.0; }));
}

TEST(WeightedNetworkTest, RejectsTinyNetworks) {
  EXPECT_EQ(CodeOf([] { WeightedNetwork(1); }), ErrorCode::kInvalidSize);
  EXPECT_EQ(CodeOf([] { WeightedNetwork(0); }), ErrorCode::kInvalidSize);
}

TEST(WeightedNetworkTest, AddWeightUpdatesBothEndsAndTotal) {
  WeightedNetwork net(3);
  net.AddWeight(0, 1, 10.0);
  EXPECT_EQ(net.weight(0, 1), 10.0);
  EXPECT_EQ(net.weight(1, 0), 10.0);
  EXPECT_EQ(net.degree(0), 10.0);
  EXPECT_EQ(net.degree(1), 10.0);
  EXPECT_EQ(net.degree(2), 0.0);
  EXPECT_EQ(net.total_weight(), 10.0);
}

TEST(WeightedNetworkTest, AddWeightIsAdditive) {
  WeightedNetwork net(3);
  net.AddWeight(0, 1, 1.0);
  net.AddWeight(1, 0, 1.0);
  EXPECT_EQ(net.weight(0, 1), 2.0);
}

TEST(WeightedNetworkTest, AddWeightErrors) {
  WeightedNetwork net(3);
  EXPECT_EQ(CodeOf([&] { net.AddWeight(2, 2, 1.0); }), ErrorCode::kSelfLoop);
  EXPECT_EQ(CodeOf([&] { net.AddWeight(0, 3, 1.0); }), ErrorCode::kIndex);
  EXPECT_EQ(CodeOf([&] { net.AddWeight(0, 1, 0.0); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(net.total_weight(), 0.0);
}

TEST(WeightedNetworkTest, CachedSumsMatchRecomputationAfterRandomUpdates) {
  Rng rng(7);
  WeightedNetwork net(25);
  const std::size_t updates = 5000;
  for (std::size_t k = 0; k < updates; ++k) {
    const NodeId i = rng.Index(25);
    NodeId j = rng.Index(24);
    if (j >= i) ++j;
    net.AddWeight(i, j, 3.0);
  }
  const auto fresh = net.RecomputeDegrees();
  double degree_sum = 0.0;
  for (NodeId i = 0; i < 25; ++i) {
    EXPECT_NEAR(net.degree(i), fresh[i], 1e-9 * std::max(1.0, fresh[i]));
    degree_sum += fresh[i];
    EXPECT_EQ(net.weight(i, i), 0.0);
    for (NodeId j = 0; j < 25; ++j) EXPECT_EQ(net.weight(i, j), net.weight(j, i));
  }
  // Integer increments accumulate exactly.
  EXPECT_EQ(net.total_weight(), 3.0 * updates);
  EXPECT_NEAR(net.total_weight(), degree_sum / 2.0, 1e-9 * degree_sum);
}

TEST(NormalizeTotalTest, DividesByTotal) {
  WeightedNetwork net(3);
  net.AddWeight(0, 1, 8.0);
  net.AddWeight(1, 2, 2.0);
  const WeightedNetwork norm = NormalizeTotal(net);
  EXPECT_DOUBLE_EQ(norm.weight(0, 1), 0.8);
  EXPECT_DOUBLE_EQ(norm.weight(1, 2), 0.2);
  EXPECT_NEAR(norm.total_weight(), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(norm.degree(1), 1.0);
}

TEST(NormalizeTotalTest, IsIdempotent) {
  Rng rng(3);
  const WeightedNetwork once = NormalizeTotal(testing::RandomNetwork(9, 0.5, 20, rng));
  const WeightedNetwork twice = NormalizeTotal(once);
  for (NodeId i = 0; i < 9; ++i) {
    for (NodeId j = 0; j < 9; ++j) {
      EXPECT_NEAR(once.weight(i, j), twice.weight(i, j), 1e-12);
    }
  }
}

TEST(NormalizeTotalTest, RejectsEmptyNetwork) {
  EXPECT_EQ(CodeOf([] { NormalizeTotal(WeightedNetwork(4)); }),
            ErrorCode::kEmptyNetwork);
}

LabeledNetwork Labeled(std::vector<std::string> labels,
                       std::vector<Link> links) {
  return LabeledNetwork{std::move(labels), std::move(links)};
}

TEST(IntersectNodesTest, RestrictsToSharedUsersInCommonOrder) {
  const LabeledNetwork a = Labeled({"u", "v", "w"}, {{0, 1, 2}, {1, 2, 5}});
  const LabeledNetwork b = Labeled({"x", "w", "v"}, {{0, 1, 4}, {1, 2, 7}});
  const AlignedPair p = IntersectNodes(a, b);
  EXPECT_EQ(p.labels, (std::vector<std::string>{"v", "w"}));
  EXPECT_EQ(p.a.size(), 2u);
  EXPECT_EQ(p.b.size(), 2u);
  EXPECT_EQ(p.a.weight(0, 1), 5.0);
  EXPECT_EQ(p.b.weight(0, 1), 7.0);
  EXPECT_EQ(p.index_a, (std::vector<NodeId>{1, 2}));
  EXPECT_EQ(p.index_b, (std::vector<NodeId>{2, 1}));
}

TEST(IntersectNodesTest, IdenticalInputsSurviveUpToOrder) {
  Rng rng(11);
  const WeightedNetwork dense = testing::RandomNetwork(6, 0.7, 9, rng);
  const LabeledNetwork a =
      LabeledNetwork::FromDense(dense, {"f", "e", "d", "c", "b", "a"});
  const AlignedPair p = IntersectNodes(a, a);
  EXPECT_EQ(p.a, p.b);
  EXPECT_EQ(p.a.total_weight(), dense.total_weight());
  for (std::size_t x = 0; x < 6; ++x) {
    for (std::size_t y = 0; y < 6; ++y) {
      EXPECT_EQ(p.a.weight(x, y), dense.weight(p.index_a[x], p.index_a[y]));
    }
  }
}

TEST(IntersectNodesTest, DisjointUsersFail) {
  const LabeledNetwork a = Labeled({"u", "v"}, {{0, 1, 1}});
  const LabeledNetwork b = Labeled({"x", "y"}, {{0, 1, 1}});
  EXPECT_EQ(CodeOf([&] { IntersectNodes(a, b); }), ErrorCode::kNoCommonUsers);
}

TEST(IntersectNodesTest, OutputShapesAlwaysAgree) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto make = [&] {
      std::vector<std::string> labels;
      for (int u = 0; u < 12; ++u) {
        if (rng.Uniform() < 0.6) labels.push_back("user" + std::to_string(u));
      }
      if (labels.size() < 2) labels = {"user0", "user1"};
      const WeightedNetwork dense =
          testing::RandomNetwork(labels.size(), 0.5, 5, rng);
      return LabeledNetwork::FromDense(dense, labels);
    };
    const LabeledNetwork a = make();
    const LabeledNetwork b = make();
    try {
      const AlignedPair p = IntersectNodes(a, b);
      EXPECT_EQ(p.a.size(), p.b.size());
      EXPECT_EQ(p.labels.size(), p.a.size());
      EXPECT_TRUE(std::is_sorted(p.labels.begin(), p.labels.end()));
      for (std::size_t k = 0; k < p.labels.size(); ++k) {
        EXPECT_EQ(a.labels[p.index_a[k]], p.labels[k]);
        EXPECT_EQ(b.labels[p.index_b[k]], p.labels[k]);
      }
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kNoCommonUsers);
    }
  }
}

TEST(IntersectActiveTest, KeepsNodesActiveInBoth) {
  WeightedNetwork a(5);
  WeightedNetwork b(5);
  a.AddWeight(0, 1, 1.0);
  a.AddWeight(1, 2, 1.0);
  b.AddWeight(1, 2, 3.0);
  b.AddWeight(2, 4, 1.0);
  const AlignedPair p = IntersectActive(a, b);
  EXPECT_EQ(p.index_a, (std::vector<NodeId>{1, 2}));
  EXPECT_EQ(p.a.weight(0, 1), 1.0);
  EXPECT_EQ(p.b.weight(0, 1), 3.0);
  EXPECT_EQ(CodeOf([&] { IntersectActive(a, WeightedNetwork(6)); }),
            ErrorCode::kDimensionMismatch);
}

}  // namespace
}  // namespace prefnet
