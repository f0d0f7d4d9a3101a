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

#ifndef PREFNET_PIPELINE_H_
#define PREFNET_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "prefnet/diffusion.h"
#include "prefnet/evolution.h"
#include "prefnet/ingest.h"
#include "prefnet/io.h"
#include "prefnet/stats.h"

namespace prefnet {

// An underlying network to evolve, named for its output files.
struct NetworkSpec {
  std::string name;
  EvolutionConfig config;
};

struct RunConfig {
  std::vector<NetworkSpec> networks;
  DiffusionConfig diffusion;
  // Retweet-per-user ratios that set the simulated step budgets when no data
  // file is given and diffusion.step_budgets is empty.
  std::vector<double> budget_ratios;
  std::optional<std::filesystem::path> data_path;
  std::filesystem::path output_dir = "prefnet_out";
  bool emit_svg = false;
  std::uint64_t seed = 1;
  double malformed_threshold = 0.01;
};

// The three standard underlying networks (global, local, null) with N = 400,
// 16 hashtags x 8 repetitions and a fixed list of 16 budget ratios.
RunConfig DefaultRunConfig();

// Overlays the keys present in `json` onto DefaultRunConfig(). Unknown keys
// are rejected. Throws kInvalidArgument.
RunConfig RunConfigFromJson(const nlohmann::json& json);
nlohmann::json RunConfigToJson(const RunConfig& cfg);
RunConfig LoadRunConfig(const std::filesystem::path& path);

// Derives every sub-config seed from cfg.seed:
//   network i evolution: DeriveSeed(seed, {1, i})
//   network i diffusion: DeriveSeed(seed, {2, i})
//   budget resampling:   DeriveSeed(seed, {3})
std::uint64_t EvolutionSeed(const RunConfig& cfg, std::size_t network);
std::uint64_t DiffusionSeed(const RunConfig& cfg, std::size_t network);

// Hash of the scientific content of the config (everything except paths and
// output switches), embedded in every output file.
std::string ConfigHash(const RunConfig& cfg);

// Throws kInvalidArgument on an unusable configuration.
void ValidateRunConfig(const RunConfig& cfg);

// Step budgets for a network of n_nodes: explicit diffusion.step_budgets when
// given, otherwise round(ratio * N) over a ratio list taken from the data file
// (whole-hashtag ratios) or from budget_ratios. A ratio list whose length
// differs from n_hashtags is resampled with replacement from a seeded stream.
std::vector<std::size_t> ResolveBudgets(const RunConfig& cfg,
                                        std::size_t n_nodes);

// Index of a simulated imprint within a hashtag group ensemble.
struct ImprintPair {
  std::size_t hashtag_a;
  std::size_t rep_a;
  std::size_t hashtag_b;
  std::size_t rep_b;
};

// Matched pairing of simulated imprints, mirroring the halved real-data
// scheme. For hashtag groups A < B with pair index p (lexicographic) and
// ensemble s, let r1 = (p + s) mod R and r2 = (p + s + 1) mod R; emit
// (A r1, B r2) and (A r2, B r1). With R == 1 a single (A 0, B 0) pair is
// emitted. H = 16, R = 8 gives 240 pairs per ensemble.
std::vector<ImprintPair> MatchedImprintPairs(std::size_t n_hashtags,
                                             std::size_t reps,
                                             std::size_t ensemble);

// Human-readable statement of the simulated pairing and band conventions,
// written into every report.
std::string PairingSchemeDescription(std::size_t n_hashtags, std::size_t reps);

// Preprocesses a pair (shared users, unit totals) and computes both measures;
// undefined measures produce a failed PairResult instead of throwing.
PairResult EvaluatePair(const WeightedNetwork& a, const WeightedNetwork& b);
PairResult EvaluatePair(const LabeledNetwork& a, const LabeledNetwork& b);

// Rows for every ensemble 0..R-1 of the matched pairing. Imprints must cover
// every (hashtag, repetition) of an n_hashtags x reps grid.
std::vector<MeasureRow> MeasureImprints(const std::string& source,
                                        const std::vector<Imprint>& imprints,
                                        std::size_t n_hashtags,
                                        std::size_t reps);

std::vector<MeasureRow> MeasureDatasets(
    const std::string& source, std::span<const HashtagDataset> datasets,
    std::span<const DatasetPair> pairs);

struct MeasureDistribution {
  std::vector<double> values;                  // ensemble 0, defined rows
  std::vector<std::vector<double>> ensembles;  // all ensembles, if > 1
  Summary summary;
  HistogramResult histogram;
};

struct SourceReport {
  std::string source;
  std::size_t pairs = 0;
  std::size_t failed = 0;
  MeasureDistribution jaccard;
  MeasureDistribution similarity;
};

struct KsEntry {
  std::string measure;
  std::string source_a;
  std::string source_b;
  KsResult ks;
};

struct Report {
  std::vector<SourceReport> sources;
  std::vector<KsEntry> ks;
};

// Histograms (with bands when a table has several ensembles), summaries and
// the KS statistic for every pair of sources, per measure.
Report BuildReport(std::span<const MeasureTable> tables);

// Minimal SVG plot of one measure's histograms across sources.
std::string RenderHistogramSvg(const Report& report, const std::string& measure,
                               const std::string& provenance);

// Subcommands. Each reads its inputs from and writes its outputs to
// cfg.output_dir:
//   evolve:   network_<name>.txt
//   simulate: imprints_<name>.txt
//   measure:  measures_<name>.csv (+ measures_data.csv with a data file)
//   report:   report.json, histogram_<measure>.csv, ks.csv
//             (+ histogram_<measure>.svg)
// measure throws kUndefinedMeasure when every pair of some source failed.
void CmdEvolve(const RunConfig& cfg, std::ostream& log);
void CmdSimulate(const RunConfig& cfg, std::ostream& log);
void CmdMeasure(const RunConfig& cfg, std::ostream& log);
void CmdReport(const RunConfig& cfg, std::ostream& log);
void CmdPipeline(const RunConfig& cfg, std::ostream& log);

}  // namespace prefnet

#endif  // PREFNET_PIPELINE_H_
