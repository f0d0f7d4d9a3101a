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

#ifndef PREFNET_EVOLUTION_H_
#define PREFNET_EVOLUTION_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "prefnet/network.h"
#include "prefnet/rng.h"

namespace prefnet {

enum class EvolutionModel { kGlobal, kLocal, kNull };

std::string_view ModelName(EvolutionModel model);
// Accepts "global", "local" or "null"; throws Error(kInvalidArgument).
EvolutionModel ParseModel(std::string_view name);

struct EvolutionConfig {
  EvolutionModel model = EvolutionModel::kGlobal;
  std::size_t n_nodes = 400;
  // Unit-weight random links seeded into the initial network (global only).
  std::size_t m0_links = 5;
  // Events per timestep.
  std::size_t m_events = 3;
  double increment = 10.0;
  // Floor added to every link of the initial network (local only).
  double l0 = 0.01;
  std::size_t timesteps = 300;
  // Homogeneous link weight of the null network.
  double null_weight = 1.0;
  std::uint64_t seed = 0;

  // Throws Error(kInvalidArgument) on an inconsistent configuration.
  void Validate() const;
};

// Initial network for the configured model:
//   global: m0_links distinct random pairs at weight 1, all else zero;
//   local:  complete graph at weight 1 + l0;
//   null:   complete graph at null_weight.
WeightedNetwork InitUnderlying(const EvolutionConfig& cfg, Rng& rng);

// Recipient for `sender` under global preference: j != sender with
// probability k_j / sum_{l != sender} k_l, or uniform over j != sender when
// all of those degrees are zero.
NodeId SampleGlobalRecipient(const WeightedNetwork& net, NodeId sender,
                             Rng& rng);

// Recipient for `sender` under local preference: j with probability
// L_{sender,j} / k_sender. Throws Error(kDegenerateRow) if k_sender is zero.
NodeId SampleLocalRecipient(const WeightedNetwork& net, NodeId sender,
                            Rng& rng);

// Runs m sequential events with a uniformly random sender; degrees are
// updated after every event.
void StepGlobal(WeightedNetwork& net, std::size_t m, double x, Rng& rng);
void StepLocal(WeightedNetwork& net, std::size_t m, double x, Rng& rng);

// InitUnderlying followed by cfg.timesteps steps of the model's dynamics.
// Bit-reproducible for a fixed cfg.seed.
WeightedNetwork Evolve(const EvolutionConfig& cfg);

// Mean-field link event probability under global preference,
// (k_i + k_j) / (2 N (2mt + m0)).
//
// Mean-field form; the sender is not excluded from its own recipient pool.
// A diagnostic, not the law StepGlobal samples.
double EventProbGlobalMeanField(const WeightedNetwork& net, NodeId i, NodeId j,
                                double m0_plus_2mt);

// Mean-field weighted degree under global preference with unit increments:
// integrates dk/dt = m/N + m k / (2mt + m0) from k(0) = k0 to time t with an
// adaptive Dormand-Prince stepper. Uses cfg.n_nodes, cfg.m_events and
// cfg.m0_links; cfg.increment is ignored.
double MeanFieldDegreeGlobal(double k0, double t, const EvolutionConfig& cfg);

}  // namespace prefnet

#endif  // PREFNET_EVOLUTION_H_
