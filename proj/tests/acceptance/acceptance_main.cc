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

// Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
// exits nonzero when any criterion fails.
//
// Usage: prefnet_acceptance [work_dir]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "prefnet/diffusion.h"
#include "prefnet/error.h"
#include "prefnet/evolution.h"
#include "prefnet/ingest.h"
#include "prefnet/io.h"
#include "prefnet/measures.h"
#include "prefnet/pipeline.h"
#include "prefnet/rng.h"
#include "prefnet/stats.h"
#include "test_util.h"

namespace prefnet {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double RelErr(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}

Outcome JaccardReference() {
  WeightedNetwork a(5), b(5);
  a.AddWeight(0, 1, 4);
  a.AddWeight(1, 2, 3);
  a.AddWeight(2, 3, 5);
  a.AddWeight(0, 3, 2);
  b.AddWeight(0, 1, 4);
  b.AddWeight(1, 2, 4);
  b.AddWeight(2, 3, 6);
  b.AddWeight(3, 4, 2);
  b.AddWeight(0, 4, 1);
  const double got = ModifiedWeightedJaccard(a, b);
  const double want = 26.0 / 31.0;
  return {std::abs(got - want) <= 1e-12,
          Fmt("jaccard=%.15f expected=%.15f", got, want)};
}

Outcome SimilarityReference() {
  WeightedNetwork a(7), b(7);
  a.AddWeight(2, 1, 4);
  a.AddWeight(2, 3, 2);
  a.AddWeight(2, 4, 2);
  b.AddWeight(2, 1, 7);
  const double got = FunctionalSimilarity(a, b, 2);
  const double want = 28.0 / (std::sqrt(24.0) * 7.0);
  return {std::abs(got - want) <= 1e-9,
          Fmt("similarity=%.12f expected=%.12f", got, want)};
}

Outcome Conservation() {
  EvolutionConfig global;
  global.model = EvolutionModel::kGlobal;
  global.n_nodes = 400;
  global.m0_links = 5;
  global.m_events = 3;
  global.increment = 10;
  global.timesteps = 300;
  global.seed = 11;
  EvolutionConfig local = global;
  local.model = EvolutionModel::kLocal;
  local.l0 = 0.01;
  local.timesteps = 500;
  const double g = Evolve(global).total_weight();
  const double l = Evolve(local).total_weight();
  const double g_want = 9005.0;
  const double l_want = 79800.0 * 1.01 + 15000.0;
  return {RelErr(g, g_want) <= 1e-9 && RelErr(l, l_want) <= 1e-9,
          Fmt("global=%.6f (rel %.1e)  local=%.6f (rel %.1e)", g,
              RelErr(g, g_want), l, RelErr(l, l_want))};
}

Outcome NoiseNormalization() {
  Rng rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = 2 + rng.Index(49);
    WeightedNetwork net(n);
    const NodeId node = rng.Index(n);
    for (NodeId j = 0; j < n; ++j) {
      if (j != node && rng.Uniform() < 0.5) {
        net.AddWeight(node, j, rng.Uniform() * std::pow(10.0, rng.Index(7)));
      }
    }
    double eta = rng.Uniform();
    if (net.degree(node) == 0.0 && eta == 0.0) eta = 0.5;
    const auto q = JumpProbabilities(net, node, eta);
    const double sum = std::accumulate(q.begin(), q.end(), 0.0);
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return {worst <= 1e-12, Fmt("max |sum - 1| = %.2e over 10^4 triples", worst)};
}

Outcome MeanField() {
  EvolutionConfig cfg;
  cfg.model = EvolutionModel::kGlobal;
  cfg.n_nodes = 400;
  cfg.m0_links = 5;
  cfg.m_events = 3;
  cfg.increment = 1;
  cfg.timesteps = 300;
  const int runs = 200;
  // The ODE prediction depends only on k0, so cache it per distinct value.
  std::map<double, double> ode;
  double simulated = 0.0;
  double predicted = 0.0;
  for (int r = 0; r < runs; ++r) {
    cfg.seed = DeriveSeed(5, {static_cast<std::uint64_t>(r)});
    Rng init_rng(cfg.seed);
    const WeightedNetwork init = InitUnderlying(cfg, init_rng);
    double run_pred = 0.0;
    for (double k0 : init.degrees()) {
      auto it = ode.find(k0);
      if (it == ode.end()) {
        it = ode.emplace(k0, MeanFieldDegreeGlobal(k0, 300.0, cfg)).first;
      }
      run_pred += it->second;
    }
    predicted += run_pred / 400.0;
    const WeightedNetwork net = Evolve(cfg);
    simulated += 2.0 * net.total_weight() / 400.0;
  }
  simulated /= runs;
  predicted /= runs;
  const double rel = RelErr(simulated, predicted);
  return {rel <= 0.05, Fmt("simulated <k>=%.4f  ode <k>=%.4f  rel=%.4f", simulated,
                           predicted, rel)};
}

// Full-scale pipeline; the run directory is reused by the determinism check.
Outcome Separation(const fs::path& dir) {
  RunConfig cfg = DefaultRunConfig();
  cfg.output_dir = dir;
  std::ostringstream log;
  CmdPipeline(cfg, log);

  std::vector<MeasureTable> tables;
  for (const NetworkSpec& spec : cfg.networks) {
    tables.push_back(ReadMeasureTable(dir / ("measures_" + spec.name + ".csv")));
  }
  const Report report = BuildReport(tables);
  std::map<std::string, const SourceReport*> by_name;
  for (const SourceReport& s : report.sources) by_name[s.source] = &s;
  const SourceReport& null = *by_name.at("null");

  auto mean_band = [](const HistogramResult& h) {
    double sum = 0.0;
    for (std::size_t k = 0; k < h.bins(); ++k) {
      sum += h.band_high[k] - h.band_low[k];
    }
    return sum / static_cast<double>(h.bins());
  };

  bool pass = true;
  std::string detail;
  for (const char* name : {"global", "local"}) {
    const SourceReport& s = *by_name.at(name);
    for (int m = 0; m < 2; ++m) {
      const Summary& a = (m ? s.similarity : s.jaccard).summary;
      const Summary& b = (m ? null.similarity : null.jaccard).summary;
      const double pooled = std::hypot(a.std_error, b.std_error);
      const double z = (a.mean - b.mean) / pooled;
      pass &= z > 3.0;
      detail += Fmt("%s %s: %.4f vs null %.4f (%.1f SE); ", name,
                    m ? "similarity" : "jaccard", a.mean, b.mean, z);
    }
    const double wp = mean_band(s.jaccard.histogram);
    const double wn = mean_band(null.jaccard.histogram);
    pass &= wn < wp;
    detail += Fmt("jaccard band width %s %.4f vs null %.4f; ", name, wp, wn);
  }
  detail += Fmt("pairs/ensemble=%zu", null.pairs);
  pass &= null.pairs == 240;
  return {pass, detail};
}

Outcome KsOracle() {
  Rng rng(77);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> a(1 + rng.Index(50));
    std::vector<double> b(1 + rng.Index(50));
    const bool ties = trial % 2 == 0;
    for (double& v : a) v = ties ? double(rng.Index(10)) : rng.Uniform();
    for (double& v : b) v = ties ? double(rng.Index(10)) : rng.Uniform();
    worst = std::max(worst, std::abs(KsStatistic(a, b).statistic -
                                     testing::BruteKs(a, b)));
  }
  const std::vector<double> x{1, 2, 3};
  const std::vector<double> y{2, 3, 4};
  const double third = KsStatistic(x, y).statistic;
  return {worst <= 1e-12 && third == 1.0 / 3.0,
          Fmt("max deviation %.2e over 1000 pairs; ks({1,2,3},{2,3,4})=%.17g",
              worst, third)};
}

Outcome MeasureOracles() {
  Rng rng(88);
  double worst_j = 0.0;
  double worst_s = 0.0;
  int pairs = 0;
  while (pairs < 100) {
    const WeightedNetwork a = testing::RandomNetwork(8, 0.5, 20, rng);
    const WeightedNetwork b = testing::RandomNetwork(8, 0.5, 20, rng);
    std::size_t eligible = 0;
    const double s_oracle = testing::BruteMeanSimilarity(a, b, &eligible);
    if (eligible == 0) continue;
    worst_j = std::max(worst_j, std::abs(ModifiedWeightedJaccard(a, b) -
                                         testing::BruteJaccard(a, b)));
    worst_s = std::max(
        worst_s, std::abs(MeanFunctionalSimilarity(a, b).value - s_oracle));
    ++pairs;
  }

  std::vector<std::string> labels;
  for (int k = 0; k < 8; ++k) labels.push_back("u" + std::to_string(k));
  double worst_scale = 0.0;
  int scaled = 0;
  while (scaled < 100) {
    const WeightedNetwork a = testing::RandomNetwork(8, 0.6, 20, rng);
    const WeightedNetwork b = testing::RandomNetwork(8, 0.6, 20, rng);
    const LabeledNetwork la = LabeledNetwork::FromDense(a, labels);
    PairMeasures base;
    try {
      base = MeasureAligned(
          PreprocessPair(la, LabeledNetwork::FromDense(b, labels)));
    } catch (const Error&) {
      continue;
    }
    for (double c : {1e-3, 1.0, 1e3}) {
      WeightedNetwork bc = b;
      bc.Scale(c);
      const PairMeasures m = MeasureAligned(
          PreprocessPair(la, LabeledNetwork::FromDense(bc, labels)));
      worst_scale = std::max({worst_scale, std::abs(m.jaccard - base.jaccard),
                              std::abs(m.mean_similarity -
                                       base.mean_similarity)});
    }
    ++scaled;
  }
  return {worst_j <= 1e-12 && worst_s <= 1e-12 && worst_scale <= 1e-12,
          Fmt("jaccard dev %.2e, similarity dev %.2e, scale dev %.2e", worst_j,
              worst_s, worst_scale)};
}

Outcome IngestionCounts(const fs::path& dir) {
  fs::create_directories(dir);
  const fs::path csv = dir / "synthetic_retweets.csv";
  Rng rng(99);
  // Expected retweet counts per (hashtag, half), tallied while writing.
  std::map<std::pair<std::string, int>, std::size_t> expected;
  {
    std::ofstream out(csv);
    out << "hashtag,user_a,user_b,timestamp\n";
    auto emit = [&](const std::string& tag, std::size_t a, std::size_t b,
                    std::int64_t t) {
      out << tag << ",user" << a << ",user" << b << "," << t << "\n";
      ++expected[{tag, t < 5000 ? 0 : 1}];
    };
    for (int h = 0; h < 16; ++h) {
      const std::string tag = "tag" + std::to_string(h);
      emit(tag, 0, 1, h == 0 ? 0 : 1);
      emit(tag, 1, 2, h == 0 ? 10000 : 9999);
      const std::size_t extra = 20 + rng.Index(200);
      for (std::size_t k = 0; k < extra; ++k) {
        const std::size_t a = rng.Index(60);
        const std::size_t b = (a + 1 + rng.Index(59)) % 60;
        emit(tag, a, b, static_cast<std::int64_t>(rng.Index(10001)));
      }
    }
  }
  const ParsedLog log = ParseLogFile(csv);
  const auto datasets = BuildNetworks(log.records, true);
  const auto pairs = EnumeratePairs(datasets, true);
  std::size_t mismatches = 0;
  for (const HashtagDataset& d : datasets) {
    const std::size_t want =
        expected[{d.hashtag, d.half == Half::kFirst ? 0 : 1}];
    if (d.network.total_weight() != static_cast<double>(want) ||
        d.n_retweets != want) {
      ++mismatches;
    }
  }
  const bool pass = pairs.size() == 240 && datasets.size() == 32 &&
                    mismatches == 0 && log.malformed == 0;
  return {pass, Fmt("%zu records, %zu datasets, %zu pairs, %zu weight "
                    "mismatches",
                    log.records.size(), datasets.size(), pairs.size(),
                    mismatches)};
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome Determinism(const fs::path& first, const fs::path& second) {
  RunConfig cfg = DefaultRunConfig();
  cfg.output_dir = second;
  std::ostringstream log;
  CmdPipeline(cfg, log);
  std::size_t files = 0;
  std::vector<std::string> differing;
  for (const auto& entry : fs::directory_iterator(first)) {
    ++files;
    const fs::path other = second / entry.path().filename();
    if (!fs::exists(other) || Slurp(entry.path()) != Slurp(other)) {
      differing.push_back(entry.path().filename().string());
    }
  }
  std::size_t second_files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(second)) {
    ++second_files;
  }
  std::string detail = Fmt("%zu files compared", files);
  for (const auto& name : differing) detail += ", differs: " + name;
  return {files > 0 && differing.empty() && files == second_files, detail};
}

}  // namespace
}  // namespace prefnet

int main(int argc, char** argv) {
  using namespace prefnet;
  const fs::path work = argc > 1 ? fs::path(argv[1])
                                 : fs::temp_directory_path() / "prefnet_acc";
  fs::remove_all(work);
  fs::create_directories(work);
  const fs::path run_a = work / "run_a";
  const fs::path run_b = work / "run_b";

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"jaccard reference pair = 26/31", JaccardReference},
      {"functional similarity reference rows", SimilarityReference},
      {"weight conservation", Conservation},
      {"noise map normalization", NoiseNormalization},
      {"mean-field degree", MeanField},
      {"preferential vs null separation", [&] { return Separation(run_a); }},
      {"KS oracle", KsOracle},
      {"measure oracles and scale invariance", MeasureOracles},
      {"ingestion counts", [&] { return IngestionCounts(work / "ingest"); }},
      {"determinism", [&] { return Determinism(run_a, run_b); }},
  };

  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[k].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    failed += !outcome.pass;
    std::printf("%s [%zu] %s (%.1fs): %s\n", outcome.pass ? "PASS" : "FAIL",
                k + 1, criteria[k].first.c_str(), secs,
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
