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

#ifndef PREFNET_DIFFUSION_H_
#define PREFNET_DIFFUSION_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "prefnet/network.h"
#include "prefnet/rng.h"

namespace prefnet {

struct DiffusionConfig {
  std::size_t n_hashtags = 16;
  std::size_t reps_per_hashtag = 8;
  double initiator_fraction = 0.25;
  double noise_mean = 0.3;
  double noise_std = 0.15;
  // One total step count per simulated hashtag.
  std::vector<std::size_t> step_budgets;
  // Steps per retweet chain; a budget is spent as consecutive chains.
  std::size_t chain_length = 20;
  std::uint64_t seed = 0;

  void Validate() const;
};

// Traversal counts left by one simulated hashtag.
struct Imprint {
  WeightedNetwork network;
  std::size_t hashtag_id = 0;
  std::size_t repetition = 0;
  double eta_used = 0.0;
  std::size_t budget = 0;
  std::size_t steps_taken = 0;
};

// f(p) = p (1 - eta) + eta / (N - 1).
double NoiseMap(double p, double eta, std::size_t n_nodes);

// One Gaussian draw clipped into [0, 1].
double SampleEta(double mean, double stddev, Rng& rng);

// Noisy jump distribution out of `current`, indexed by target node; the entry
// for `current` itself is zero. A node with no links has a uniform
// distribution when eta > 0.
std::vector<double> JumpProbabilities(const WeightedNetwork& net,
                                      NodeId current, double eta);

// Samples the next node directly from JumpProbabilities.
// Throws Error(kStuckWalker) when `current` has no links and eta == 0.
NodeId Jump(const WeightedNetwork& net, NodeId current, double eta, Rng& rng);

// Cumulative row sums of a frozen network, for O(log N) jumps. A jump is drawn
// as the mixture "uniform over other nodes with probability eta, otherwise
// proportional to link weight", which has exactly the JumpProbabilities law.
class TransitionTable {
 public:
  explicit TransitionTable(const WeightedNetwork& net);

  std::size_t size() const { return n_; }
  bool HasLinks(NodeId i) const { return cumulative_[i * n_ + n_ - 1] > 0.0; }
  NodeId Jump(NodeId current, double eta, Rng& rng) const;

 private:
  std::size_t n_;
  std::vector<double> cumulative_;
};

// A single traversal, reported to an optional observer.
struct WalkStep {
  NodeId from;
  NodeId to;
  bool starts_chain;
};
using StepObserver = std::function<void(const WalkStep&)>;

// Spends `budget` steps as chains of up to `chain_length` steps, each chain
// starting from a uniformly chosen initiator. Every traversal adds 1 to the
// imprint link it crosses. With eta == 0 an isolated initiator cannot pass a
// message on, so chains start only from initiators that have links.
// Throws Error(kInvalidArgument) on an empty initiator set or a zero budget,
// Error(kStuckWalker) when eta == 0 and no initiator has links.
Imprint SimulateHashtag(const TransitionTable& table, std::size_t budget,
                        std::size_t chain_length,
                        std::span<const NodeId> initiators, double eta,
                        Rng& rng, const StepObserver& observer = {});
Imprint SimulateHashtag(const WeightedNetwork& net, std::size_t budget,
                        std::size_t chain_length,
                        std::span<const NodeId> initiators, double eta,
                        Rng& rng, const StepObserver& observer = {});

// round(fraction * N) distinct nodes (at least one), sorted ascending.
std::vector<NodeId> SampleInitiators(std::size_t n_nodes, double fraction,
                                     Rng& rng);

// n_hashtags * reps_per_hashtag imprints ordered by (hashtag, repetition).
// Each member owns the stream (seed, hashtag, repetition) and draws its own
// eta; the initiator set is drawn once from its own stream and shared.
// Runs in parallel; the output does not depend on the worker count.
std::vector<Imprint> RunEnsemble(const WeightedNetwork& net,
                                 const DiffusionConfig& cfg);

// The initiator set RunEnsemble uses for `cfg`.
std::vector<NodeId> EnsembleInitiators(std::size_t n_nodes,
                                       const DiffusionConfig& cfg);

// budget_h = round(ratio_h * N), at least 1.
std::vector<std::size_t> BudgetsFromRatios(std::span<const double> ratios,
                                           std::size_t n_nodes);

}  // namespace prefnet

#endif  // PREFNET_DIFFUSION_H_
