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

#include "prefnet/diffusion.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <utility>

#include "prefnet/error.h"
#include "prefnet/parallel.h"

namespace prefnet {
namespace {

// Stream tag for the initiator draw; hashtag streams use two-element paths.
constexpr std::uint64_t kInitiatorStream = 0x1a17a70f;

void CheckEta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "noise intensity must lie in [0, 1]");
  }
}

NodeId UniformOther(std::size_t n, NodeId current, Rng& rng) {
  const NodeId pick = rng.Index(n - 1);
  return pick >= current ? pick + 1 : pick;
}

}  // namespace

void DiffusionConfig::Validate() const {
  auto reject = [](const std::string& what) {
    Fail(ErrorCode::kInvalidArgument, "diffusion config: " + what);
  };
  if (n_hashtags == 0) reject("n_hashtags must be positive");
  if (reps_per_hashtag == 0) reject("reps_per_hashtag must be positive");
  if (!(initiator_fraction > 0.0 && initiator_fraction <= 1.0)) {
    reject("initiator_fraction must lie in (0, 1]");
  }
  if (!(noise_std >= 0.0)) reject("noise_std must be nonnegative");
  if (step_budgets.size() != n_hashtags) {
    reject("expected " + std::to_string(n_hashtags) + " step budgets, got " +
           std::to_string(step_budgets.size()));
  }
  for (std::size_t b : step_budgets) {
    if (b == 0) reject("step budgets must be positive");
  }
  if (chain_length == 0) reject("chain_length must be positive");
}

double NoiseMap(double p, double eta, std::size_t n_nodes) {
  if (!(p >= 0.0 && p <= 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "probability must lie in [0, 1]");
  }
  CheckEta(eta);
  if (n_nodes < 2) Fail(ErrorCode::kInvalidArgument, "N must be at least 2");
  return p * (1.0 - eta) + eta / static_cast<double>(n_nodes - 1);
}

double SampleEta(double mean, double stddev, Rng& rng) {
  if (!(stddev >= 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "noise stddev must be nonnegative");
  }
  return std::clamp(rng.Normal(mean, stddev), 0.0, 1.0);
}

std::vector<double> JumpProbabilities(const WeightedNetwork& net,
                                      NodeId current, double eta) {
  const std::size_t n = net.size();
  if (current >= n) Fail(ErrorCode::kIndex, "walker position out of range");
  CheckEta(eta);
  const double k = net.degree(current);
  if (!(k > 0.0) && eta == 0.0) {
    Fail(ErrorCode::kStuckWalker,
         "walker on isolated node " + std::to_string(current) +
             " with no noise");
  }
  std::vector<double> q(n, 0.0);
  const auto row = net.row(current);
  for (NodeId j = 0; j < n; ++j) {
    if (j == current) continue;
    // An isolated node has base probabilities of zero, leaving eta / (N - 1)
    // everywhere; renormalized that is uniform.
    const double p = k > 0.0 ? std::min(row[j] / k, 1.0) : 0.0;
    q[j] = k > 0.0 ? NoiseMap(p, eta, n) : 1.0 / static_cast<double>(n - 1);
  }
  return q;
}

NodeId Jump(const WeightedNetwork& net, NodeId current, double eta, Rng& rng) {
  const std::vector<double> q = JumpProbabilities(net, current, eta);
  const double total = std::accumulate(q.begin(), q.end(), 0.0);
  const double target = rng.Uniform() * total;
  double acc = 0.0;
  NodeId last = current;
  for (NodeId j = 0; j < q.size(); ++j) {
    if (q[j] <= 0.0) continue;
    acc += q[j];
    last = j;
    if (target < acc) return j;
  }
  return last;
}

TransitionTable::TransitionTable(const WeightedNetwork& net)
    : n_(net.size()), cumulative_(net.size() * net.size()) {
  for (NodeId i = 0; i < n_; ++i) {
    const auto row = net.row(i);
    std::partial_sum(row.begin(), row.end(), cumulative_.begin() + i * n_);
  }
}

NodeId TransitionTable::Jump(NodeId current, double eta, Rng& rng) const {
  if (current >= n_) Fail(ErrorCode::kIndex, "walker position out of range");
  CheckEta(eta);
  const auto first = cumulative_.begin() + current * n_;
  const auto last = first + n_;
  const double row_total = *(last - 1);
  if (!(row_total > 0.0)) {
    if (eta == 0.0) {
      Fail(ErrorCode::kStuckWalker,
           "walker on isolated node " + std::to_string(current) +
               " with no noise");
    }
    return UniformOther(n_, current, rng);
  }
  if (eta > 0.0 && rng.Uniform() < eta) return UniformOther(n_, current, rng);
  const double target = rng.Uniform() * row_total;
  auto hit = std::upper_bound(first, last, target);
  if (hit == last) {
    // target rounded up to row_total; take the last node with weight.
    hit = last - 1;
    while (hit != first && *hit == *(hit - 1)) --hit;
  }
  return static_cast<NodeId>(hit - first);
}

Imprint SimulateHashtag(const TransitionTable& table, std::size_t budget,
                        std::size_t chain_length,
                        std::span<const NodeId> initiators, double eta,
                        Rng& rng, const StepObserver& observer) {
  if (initiators.empty()) {
    Fail(ErrorCode::kInvalidArgument, "initiator set is empty");
  }
  if (budget == 0) Fail(ErrorCode::kInvalidArgument, "budget must be positive");
  if (chain_length == 0) {
    Fail(ErrorCode::kInvalidArgument, "chain_length must be positive");
  }
  std::vector<NodeId> starts;
  starts.reserve(initiators.size());
  for (NodeId v : initiators) {
    if (v >= table.size()) Fail(ErrorCode::kIndex, "initiator out of range");
    if (eta > 0.0 || table.HasLinks(v)) starts.push_back(v);
  }
  if (starts.empty()) {
    Fail(ErrorCode::kStuckWalker, "no initiator has links and eta is zero");
  }

  Imprint imprint{WeightedNetwork(table.size())};
  imprint.eta_used = eta;
  imprint.budget = budget;
  std::size_t steps = 0;
  while (steps < budget) {
    NodeId current = starts[rng.Index(starts.size())];
    const std::size_t chain = std::min(chain_length, budget - steps);
    for (std::size_t s = 0; s < chain; ++s) {
      const NodeId next = table.Jump(current, eta, rng);
      imprint.network.AddWeight(current, next, 1.0);
      if (observer) observer({current, next, s == 0});
      current = next;
    }
    steps += chain;
  }
  imprint.steps_taken = steps;
  return imprint;
}

Imprint SimulateHashtag(const WeightedNetwork& net, std::size_t budget,
                        std::size_t chain_length,
                        std::span<const NodeId> initiators, double eta,
                        Rng& rng, const StepObserver& observer) {
  return SimulateHashtag(TransitionTable(net), budget, chain_length,
                         initiators, eta, rng, observer);
}

std::vector<NodeId> SampleInitiators(std::size_t n_nodes, double fraction,
                                     Rng& rng) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "initiator fraction must lie in (0, 1]");
  }
  const auto wanted = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(n_nodes)));
  const std::size_t count = std::clamp<std::size_t>(wanted, 1, n_nodes);
  std::vector<NodeId> nodes(n_nodes);
  std::iota(nodes.begin(), nodes.end(), NodeId{0});
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(nodes[i], nodes[i + rng.Index(n_nodes - i)]);
  }
  nodes.resize(count);
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

std::vector<NodeId> EnsembleInitiators(std::size_t n_nodes,
                                       const DiffusionConfig& cfg) {
  Rng rng = Rng::Stream(cfg.seed, {kInitiatorStream});
  return SampleInitiators(n_nodes, cfg.initiator_fraction, rng);
}

std::vector<Imprint> RunEnsemble(const WeightedNetwork& net,
                                 const DiffusionConfig& cfg) {
  cfg.Validate();
  const TransitionTable table(net);
  const std::vector<NodeId> initiators = EnsembleInitiators(net.size(), cfg);
  const std::size_t total = cfg.n_hashtags * cfg.reps_per_hashtag;

  std::vector<std::optional<Imprint>> slots(total);
  std::optional<Error> failure;
#pragma omp parallel for schedule(dynamic) num_threads(MaxWorkers())
  for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(total);
       ++idx) {
    const std::size_t h = static_cast<std::size_t>(idx) / cfg.reps_per_hashtag;
    const std::size_t r = static_cast<std::size_t>(idx) % cfg.reps_per_hashtag;
    try {
      Rng rng = Rng::Stream(cfg.seed, {h, r});
      const double eta = SampleEta(cfg.noise_mean, cfg.noise_std, rng);
      Imprint imprint = SimulateHashtag(table, cfg.step_budgets[h],
                                        cfg.chain_length, initiators, eta, rng);
      imprint.hashtag_id = h;
      imprint.repetition = r;
      slots[idx] = std::move(imprint);
    } catch (const Error& e) {
#pragma omp critical(prefnet_ensemble_failure)
      if (!failure) failure = e;
    }
  }
  if (failure) throw *failure;

  std::vector<Imprint> out;
  out.reserve(total);
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

std::vector<std::size_t> BudgetsFromRatios(std::span<const double> ratios,
                                           std::size_t n_nodes) {
  std::vector<std::size_t> out;
  out.reserve(ratios.size());
  for (double ratio : ratios) {
    if (!(ratio > 0.0)) {
      Fail(ErrorCode::kInvalidArgument, "retweet/user ratio must be positive");
    }
    const auto budget = std::llround(ratio * static_cast<double>(n_nodes));
    out.push_back(static_cast<std::size_t>(std::max<long long>(budget, 1)));
  }
  return out;
}

}  // namespace prefnet
