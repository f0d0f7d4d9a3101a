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

#include "prefnet/evolution.h"

#include <array>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "prefnet/error.h"

namespace prefnet {

std::string_view ModelName(EvolutionModel model) {
  switch (model) {
    case EvolutionModel::kGlobal: return "global";
    case EvolutionModel::kLocal: return "local";
    case EvolutionModel::kNull: return "null";
  }
  return "unknown";
}

EvolutionModel ParseModel(std::string_view name) {
  if (name == "global") return EvolutionModel::kGlobal;
  if (name == "local") return EvolutionModel::kLocal;
  if (name == "null") return EvolutionModel::kNull;
  Fail(ErrorCode::kInvalidArgument,
       "unknown evolution model '" + std::string(name) + "'");
}

void EvolutionConfig::Validate() const {
  auto reject = [](const std::string& what) {
    Fail(ErrorCode::kInvalidArgument, "evolution config: " + what);
  };
  if (n_nodes < 2) reject("n_nodes must be at least 2");
  if (m_events == 0) reject("m_events must be positive");
  if (!(increment > 0.0)) reject("increment must be positive");
  const std::size_t max_links = n_nodes * (n_nodes - 1) / 2;
  if (model == EvolutionModel::kGlobal && m0_links > max_links) {
    reject("m0_links exceeds the number of node pairs");
  }
  if (model == EvolutionModel::kLocal && !(l0 >= 0.0 && l0 < increment)) {
    reject("l0 must satisfy 0 <= l0 < increment");
  }
  if (model == EvolutionModel::kNull && !(null_weight > 0.0)) {
    reject("null_weight must be positive");
  }
}

WeightedNetwork InitUnderlying(const EvolutionConfig& cfg, Rng& rng) {
  cfg.Validate();
  WeightedNetwork net(cfg.n_nodes);
  switch (cfg.model) {
    case EvolutionModel::kGlobal: {
      std::size_t placed = 0;
      while (placed < cfg.m0_links) {
        const NodeId i = rng.Index(cfg.n_nodes);
        const NodeId j = rng.Index(cfg.n_nodes);
        if (i == j || net.weight(i, j) > 0.0) continue;
        net.AddWeight(i, j, 1.0);
        ++placed;
      }
      break;
    }
    case EvolutionModel::kLocal:
      net.FillComplete(1.0 + cfg.l0);
      break;
    case EvolutionModel::kNull:
      net.FillComplete(cfg.null_weight);
      break;
  }
  return net;
}

NodeId SampleGlobalRecipient(const WeightedNetwork& net, NodeId sender,
                             Rng& rng) {
  const std::size_t n = net.size();
  const auto degrees = net.degrees();
  // Pool sum excluding the sender.
  double pool = 0.0;
  for (NodeId j = 0; j < n; ++j) {
    if (j != sender) pool += degrees[j];
  }
  if (!(pool > 0.0)) {
    const NodeId pick = rng.Index(n - 1);
    return pick >= sender ? pick + 1 : pick;
  }
  const double target = rng.Uniform() * pool;
  double acc = 0.0;
  NodeId last = sender;
  for (NodeId j = 0; j < n; ++j) {
    if (j == sender || degrees[j] <= 0.0) continue;
    acc += degrees[j];
    last = j;
    if (target < acc) return j;
  }
  return last;
}

NodeId SampleLocalRecipient(const WeightedNetwork& net, NodeId sender,
                            Rng& rng) {
  const auto row = net.row(sender);
  double pool = 0.0;
  for (double w : row) pool += w;
  if (!(pool > 0.0)) {
    Fail(ErrorCode::kDegenerateRow,
         "node " + std::to_string(sender) + " has no links to choose from");
  }
  const double target = rng.Uniform() * pool;
  double acc = 0.0;
  NodeId last = sender;
  for (NodeId j = 0; j < row.size(); ++j) {
    if (row[j] <= 0.0) continue;
    acc += row[j];
    last = j;
    if (target < acc) return j;
  }
  return last;
}

void StepGlobal(WeightedNetwork& net, std::size_t m, double x, Rng& rng) {
  for (std::size_t e = 0; e < m; ++e) {
    const NodeId sender = rng.Index(net.size());
    net.AddWeight(sender, SampleGlobalRecipient(net, sender, rng), x);
  }
}

void StepLocal(WeightedNetwork& net, std::size_t m, double x, Rng& rng) {
  for (std::size_t e = 0; e < m; ++e) {
    const NodeId sender = rng.Index(net.size());
    net.AddWeight(sender, SampleLocalRecipient(net, sender, rng), x);
  }
}

WeightedNetwork Evolve(const EvolutionConfig& cfg) {
  Rng rng(cfg.seed);
  WeightedNetwork net = InitUnderlying(cfg, rng);
  for (std::size_t t = 0; t < cfg.timesteps; ++t) {
    switch (cfg.model) {
      case EvolutionModel::kGlobal:
        StepGlobal(net, cfg.m_events, cfg.increment, rng);
        break;
      case EvolutionModel::kLocal:
        StepLocal(net, cfg.m_events, cfg.increment, rng);
        break;
      case EvolutionModel::kNull:
        return net;
    }
  }
  return net;
}

double EventProbGlobalMeanField(const WeightedNetwork& net, NodeId i, NodeId j,
                                double m0_plus_2mt) {
  if (i >= net.size() || j >= net.size()) {
    Fail(ErrorCode::kIndex, "node id out of range");
  }
  if (i == j) Fail(ErrorCode::kSelfLoop, "link probability needs i != j");
  const double denom = 2.0 * static_cast<double>(net.size()) * m0_plus_2mt;
  if (!(denom > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "mean-field denominator is zero");
  }
  return (net.degree(i) + net.degree(j)) / denom;
}

double MeanFieldDegreeGlobal(double k0, double t, const EvolutionConfig& cfg) {
  if (t < 0.0) Fail(ErrorCode::kInvalidArgument, "negative integration time");
  const double m = static_cast<double>(cfg.m_events);
  const double n = static_cast<double>(cfg.n_nodes);
  const double m0 = static_cast<double>(cfg.m0_links);
  if (!(m0 > 0.0)) {
    Fail(ErrorCode::kInvalidArgument,
         "mean-field degree needs m0 > 0 (the rate is singular at t = 0)");
  }
  if (t == 0.0) return k0;

  using State = std::array<double, 1>;
  namespace odeint = boost::numeric::odeint;
  auto rhs = [m, n, m0](const State& k, State& dkdt, double time) {
    dkdt[0] = m / n + m * k[0] / (2.0 * m * time + m0);
  };
  State k{k0};
  auto stepper = odeint::make_controlled(
      1e-12, 1e-10, odeint::runge_kutta_dopri5<State>());
  odeint::integrate_adaptive(stepper, rhs, k, 0.0, t, t / 1000.0);
  return k[0];
}

}  // namespace prefnet
