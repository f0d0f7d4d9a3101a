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

#include "prefnet/pipeline.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string_view>
#include <utility>

#include "prefnet/error.h"
#include "prefnet/parallel.h"
#include "prefnet/rng.h"

namespace prefnet {
namespace {

using nlohmann::json;

constexpr std::string_view kDataSource = "data";
constexpr std::uint64_t kEvolutionStream = 1;
constexpr std::uint64_t kDiffusionStream = 2;
constexpr std::uint64_t kBudgetStream = 3;

// Retweet-per-user ratios used for simulated budgets when no data file is
// supplied; budgets are round(ratio * N).
constexpr double kDefaultBudgetRatios[] = {4.0,  5.5,  7.0,  8.5,  10.0, 12.0,
                                           14.0, 16.5, 19.0, 22.0, 25.5, 29.5,
                                           34.0, 40.5, 48.0, 57.0};

[[noreturn]] void BadConfig(const std::string& what) {
  Fail(ErrorCode::kInvalidArgument, "run config: " + what);
}

void RejectUnknownKeys(const json& object, std::initializer_list<const char*> keys,
                       const std::string& where) {
  if (!object.is_object()) BadConfig(where + " must be an object");
  for (const auto& [key, value] : object.items()) {
    if (std::find_if(keys.begin(), keys.end(), [&](const char* k) {
          return key == k;
        }) == keys.end()) {
      BadConfig("unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
void Read(const json& object, const char* key, T& out) {
  if (!object.contains(key)) return;
  try {
    out = object.at(key).get<T>();
  } catch (const json::exception& e) {
    BadConfig(std::string("bad value for '") + key + "': " + e.what());
  }
}

EvolutionConfig ModelDefaults(EvolutionModel model) {
  EvolutionConfig cfg;
  cfg.model = model;
  switch (model) {
    case EvolutionModel::kGlobal: cfg.timesteps = 300; break;
    case EvolutionModel::kLocal: cfg.timesteps = 500; break;
    case EvolutionModel::kNull: cfg.timesteps = 0; break;
  }
  return cfg;
}

json EvolutionToJson(const NetworkSpec& spec) {
  const EvolutionConfig& c = spec.config;
  return {{"name", spec.name},          {"model", ModelName(c.model)},
          {"n_nodes", c.n_nodes},       {"m0_links", c.m0_links},
          {"m_events", c.m_events},     {"increment", c.increment},
          {"l0", c.l0},                 {"timesteps", c.timesteps},
          {"null_weight", c.null_weight}};
}

json DiffusionToJson(const DiffusionConfig& d) {
  return {{"n_hashtags", d.n_hashtags},
          {"reps_per_hashtag", d.reps_per_hashtag},
          {"initiator_fraction", d.initiator_fraction},
          {"noise_mean", d.noise_mean},
          {"noise_std", d.noise_std},
          {"chain_length", d.chain_length},
          {"step_budgets", d.step_budgets}};
}

std::filesystem::path NetworkPath(const RunConfig& cfg, const NetworkSpec& n) {
  return cfg.output_dir / ("network_" + n.name + ".txt");
}
std::filesystem::path ImprintPath(const RunConfig& cfg, const NetworkSpec& n) {
  return cfg.output_dir / ("imprints_" + n.name + ".txt");
}
std::filesystem::path MeasurePath(const RunConfig& cfg,
                                  std::string_view source) {
  return cfg.output_dir / ("measures_" + std::string(source) + ".csv");
}

std::string Provenance(const RunConfig& cfg) {
  return "config_hash=" + ConfigHash(cfg) + " seed=" + std::to_string(cfg.seed);
}

json ProvenanceJson(const RunConfig& cfg) {
  return {{"config_hash", ConfigHash(cfg)}, {"seed", cfg.seed}};
}

ParsedLog LoadData(const RunConfig& cfg, std::ostream& log) {
  ParseOptions options;
  options.malformed_threshold = cfg.malformed_threshold;
  ParsedLog parsed = ParseLogFile(*cfg.data_path, options);
  log << "data: " << parsed.records.size() << " records from "
      << parsed.data_rows << " rows (" << parsed.malformed << " malformed, "
      << parsed.self_retweets << " self-retweets dropped)\n";
  for (const std::string& d : parsed.diagnostics) log << "  " << d << '\n';
  return parsed;
}

template <typename Network>
PairResult EvaluateImpl(const Network& a, const Network& b) {
  PairResult out;
  try {
    const PairMeasures m = MeasureAligned(PreprocessPair(a, b));
    out.jaccard = m.jaccard;
    out.mean_similarity = m.mean_similarity;
    out.nodes_compared = m.nodes_compared;
  } catch (const Error& e) {
    out.failure = std::string(ErrorCodeName(e.code())) + ": " + e.what();
  }
  return out;
}

std::string ImprintId(std::size_t hashtag, std::size_t rep) {
  return "h" + std::to_string(hashtag) + "/r" + std::to_string(rep);
}

}  // namespace

RunConfig DefaultRunConfig() {
  RunConfig cfg;
  cfg.networks = {
      {"global", ModelDefaults(EvolutionModel::kGlobal)},
      {"local", ModelDefaults(EvolutionModel::kLocal)},
      {"null", ModelDefaults(EvolutionModel::kNull)},
  };
  cfg.budget_ratios.assign(std::begin(kDefaultBudgetRatios),
                           std::end(kDefaultBudgetRatios));
  return cfg;
}

RunConfig RunConfigFromJson(const json& j) {
  RejectUnknownKeys(j,
                    {"seed", "output_dir", "data_path", "emit_svg",
                     "malformed_threshold", "budget_ratios", "networks",
                     "diffusion"},
                    "config");
  RunConfig cfg = DefaultRunConfig();
  Read(j, "seed", cfg.seed);
  if (j.contains("output_dir")) {
    cfg.output_dir = j.at("output_dir").get<std::string>();
  }
  if (j.contains("data_path") && !j.at("data_path").is_null()) {
    cfg.data_path = j.at("data_path").get<std::string>();
  }
  Read(j, "emit_svg", cfg.emit_svg);
  Read(j, "malformed_threshold", cfg.malformed_threshold);
  Read(j, "budget_ratios", cfg.budget_ratios);

  if (j.contains("networks")) {
    const json& list = j.at("networks");
    if (!list.is_array()) BadConfig("'networks' must be an array");
    cfg.networks.clear();
    for (const json& item : list) {
      RejectUnknownKeys(item,
                        {"name", "model", "n_nodes", "m0_links", "m_events",
                         "increment", "l0", "timesteps", "null_weight"},
                        "network entry");
      std::string model = "global";
      Read(item, "model", model);
      NetworkSpec spec{model, ModelDefaults(ParseModel(model))};
      Read(item, "name", spec.name);
      EvolutionConfig& c = spec.config;
      Read(item, "n_nodes", c.n_nodes);
      Read(item, "m0_links", c.m0_links);
      Read(item, "m_events", c.m_events);
      Read(item, "increment", c.increment);
      Read(item, "l0", c.l0);
      Read(item, "timesteps", c.timesteps);
      Read(item, "null_weight", c.null_weight);
      cfg.networks.push_back(std::move(spec));
    }
  }
  if (j.contains("diffusion")) {
    const json& d = j.at("diffusion");
    RejectUnknownKeys(d,
                      {"n_hashtags", "reps_per_hashtag", "initiator_fraction",
                       "noise_mean", "noise_std", "chain_length",
                       "step_budgets"},
                      "diffusion");
    Read(d, "n_hashtags", cfg.diffusion.n_hashtags);
    Read(d, "reps_per_hashtag", cfg.diffusion.reps_per_hashtag);
    Read(d, "initiator_fraction", cfg.diffusion.initiator_fraction);
    Read(d, "noise_mean", cfg.diffusion.noise_mean);
    Read(d, "noise_std", cfg.diffusion.noise_std);
    Read(d, "chain_length", cfg.diffusion.chain_length);
    Read(d, "step_budgets", cfg.diffusion.step_budgets);
  }
  return cfg;
}

json RunConfigToJson(const RunConfig& cfg) {
  json networks = json::array();
  for (const NetworkSpec& spec : cfg.networks) {
    networks.push_back(EvolutionToJson(spec));
  }
  return {{"seed", cfg.seed},
          {"output_dir", cfg.output_dir.string()},
          {"data_path", cfg.data_path ? json(cfg.data_path->string()) : json()},
          {"emit_svg", cfg.emit_svg},
          {"malformed_threshold", cfg.malformed_threshold},
          {"budget_ratios", cfg.budget_ratios},
          {"networks", networks},
          {"diffusion", DiffusionToJson(cfg.diffusion)}};
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    BadConfig(path.string() + ": " + e.what());
  }
  return RunConfigFromJson(j);
}

std::uint64_t EvolutionSeed(const RunConfig& cfg, std::size_t network) {
  return DeriveSeed(cfg.seed, {kEvolutionStream, network});
}

std::uint64_t DiffusionSeed(const RunConfig& cfg, std::size_t network) {
  return DeriveSeed(cfg.seed, {kDiffusionStream, network});
}

std::string ConfigHash(const RunConfig& cfg) {
  json j = RunConfigToJson(cfg);
  j.erase("output_dir");
  j.erase("data_path");
  j.erase("emit_svg");
  return Fnv1aHex(j.dump());
}

void ValidateRunConfig(const RunConfig& cfg) {
  if (cfg.networks.empty()) BadConfig("no networks configured");
  std::set<std::string> names;
  for (const NetworkSpec& spec : cfg.networks) {
    if (spec.name.empty() ||
        spec.name.find_first_of("/\\, \t\n") != std::string::npos) {
      BadConfig("network names must be nonempty without separators or spaces");
    }
    if (spec.name == kDataSource) BadConfig("network name 'data' is reserved");
    if (!names.insert(spec.name).second) {
      BadConfig("duplicate network name '" + spec.name + "'");
    }
    spec.config.Validate();
  }
  DiffusionConfig d = cfg.diffusion;
  if (d.step_budgets.empty()) d.step_budgets.assign(d.n_hashtags, 1);
  d.Validate();
  if (d.n_hashtags < 2) BadConfig("measuring needs at least two hashtags");
  if (!cfg.data_path && cfg.diffusion.step_budgets.empty() &&
      cfg.budget_ratios.empty()) {
    BadConfig("no step budgets, budget ratios or data file");
  }
  if (!(cfg.malformed_threshold >= 0.0 && cfg.malformed_threshold <= 1.0)) {
    BadConfig("malformed_threshold must lie in [0, 1]");
  }
}

std::vector<std::size_t> ResolveBudgets(const RunConfig& cfg,
                                        std::size_t n_nodes) {
  if (!cfg.diffusion.step_budgets.empty()) return cfg.diffusion.step_budgets;

  std::vector<double> ratios = cfg.budget_ratios;
  if (cfg.data_path) {
    std::ostringstream quiet;
    const ParsedLog parsed = LoadData(cfg, quiet);
    ratios = RatioDistribution(BuildNetworks(parsed.records, false));
  }
  if (ratios.empty()) BadConfig("empty budget ratio list");
  const std::size_t wanted = cfg.diffusion.n_hashtags;
  if (ratios.size() != wanted) {
    Rng rng = Rng::Stream(cfg.seed, {kBudgetStream});
    std::vector<double> sampled(wanted);
    for (double& r : sampled) r = ratios[rng.Index(ratios.size())];
    ratios = std::move(sampled);
  }
  return BudgetsFromRatios(ratios, n_nodes);
}

std::vector<ImprintPair> MatchedImprintPairs(std::size_t n_hashtags,
                                             std::size_t reps,
                                             std::size_t ensemble) {
  if (n_hashtags < 2 || reps == 0) {
    Fail(ErrorCode::kInvalidArgument,
         "matched pairing needs >= 2 hashtags and >= 1 repetition");
  }
  std::vector<ImprintPair> out;
  std::size_t p = 0;
  for (std::size_t a = 0; a < n_hashtags; ++a) {
    for (std::size_t b = a + 1; b < n_hashtags; ++b, ++p) {
      if (reps == 1) {
        out.push_back({a, 0, b, 0});
        continue;
      }
      const std::size_t r1 = (p + ensemble) % reps;
      const std::size_t r2 = (p + ensemble + 1) % reps;
      out.push_back({a, r1, b, r2});
      out.push_back({a, r2, b, r1});
    }
  }
  return out;
}

std::string PairingSchemeDescription(std::size_t n_hashtags, std::size_t reps) {
  std::ostringstream s;
  s << "Simulated imprints form " << n_hashtags << " hashtag groups of "
    << reps << " repetitions. Ensemble s pairs every group pair A<B (pair "
       "index p) as (A r1, B r2) and (A r2, B r1) with r1=(p+s) mod R, "
       "r2=(p+s+1) mod R, mirroring the two cross-half pairs per real hashtag "
       "pair. Ensemble 0 is the reported distribution; the "
    << reps
    << " ensembles give the error bands as per-bin mean density +/- its "
       "standard error across ensembles. Real data pairs hashtags across "
       "temporal halves (first/second and second/first).";
  return s.str();
}

PairResult EvaluatePair(const WeightedNetwork& a, const WeightedNetwork& b) {
  return EvaluateImpl(a, b);
}

PairResult EvaluatePair(const LabeledNetwork& a, const LabeledNetwork& b) {
  return EvaluateImpl(a, b);
}

std::vector<MeasureRow> MeasureImprints(const std::string& source,
                                        const std::vector<Imprint>& imprints,
                                        std::size_t n_hashtags,
                                        std::size_t reps) {
  std::vector<const Imprint*> grid(n_hashtags * reps, nullptr);
  for (const Imprint& imp : imprints) {
    if (imp.hashtag_id < n_hashtags && imp.repetition < reps) {
      grid[imp.hashtag_id * reps + imp.repetition] = &imp;
    }
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (grid[k] == nullptr) {
      Fail(ErrorCode::kInvalidArgument,
           source + ": missing imprint " + ImprintId(k / reps, k % reps));
    }
  }

  const std::size_t ensembles = reps == 1 ? 1 : reps;
  std::vector<MeasureRow> rows;
  for (std::size_t s = 0; s < ensembles; ++s) {
    for (const ImprintPair& p : MatchedImprintPairs(n_hashtags, reps, s)) {
      MeasureRow row;
      row.source = source;
      row.ensemble = s;
      row.result.id_a = ImprintId(p.hashtag_a, p.rep_a);
      row.result.id_b = ImprintId(p.hashtag_b, p.rep_b);
      rows.push_back(std::move(row));
    }
  }
  const auto pairs_per_ensemble = rows.size() / ensembles;

#pragma omp parallel for schedule(dynamic) num_threads(MaxWorkers())
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(rows.size());
       ++k) {
    const std::size_t s = static_cast<std::size_t>(k) / pairs_per_ensemble;
    const std::size_t idx = static_cast<std::size_t>(k) % pairs_per_ensemble;
    // Recomputing the pairing per row is cheap next to the measures.
    const ImprintPair p = MatchedImprintPairs(n_hashtags, reps, s)[idx];
    PairResult result =
        EvaluatePair(grid[p.hashtag_a * reps + p.rep_a]->network,
                     grid[p.hashtag_b * reps + p.rep_b]->network);
    result.id_a = std::move(rows[k].result.id_a);
    result.id_b = std::move(rows[k].result.id_b);
    rows[k].result = std::move(result);
  }
  return rows;
}

std::vector<MeasureRow> MeasureDatasets(const std::string& source,
                                        std::span<const HashtagDataset> datasets,
                                        std::span<const DatasetPair> pairs) {
  std::vector<MeasureRow> rows(pairs.size());
#pragma omp parallel for schedule(dynamic) num_threads(MaxWorkers())
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(pairs.size());
       ++k) {
    const HashtagDataset& a = datasets[pairs[k].a];
    const HashtagDataset& b = datasets[pairs[k].b];
    MeasureRow& row = rows[k];
    row.source = source;
    row.ensemble = 0;
    row.result = EvaluatePair(a.network, b.network);
    row.result.id_a = a.hashtag;
    row.result.half_a = a.half;
    row.result.id_b = b.hashtag;
    row.result.half_b = b.half;
  }
  return rows;
}

namespace {

MeasureDistribution Distribution(const MeasureTable& table, bool jaccard) {
  MeasureDistribution out;
  std::size_t ensembles = 0;
  for (const MeasureRow& row : table.rows) {
    ensembles = std::max(ensembles, row.ensemble + 1);
  }
  out.ensembles.resize(ensembles);
  for (const MeasureRow& row : table.rows) {
    if (!row.result.ok()) continue;
    const double v =
        jaccard ? *row.result.jaccard : *row.result.mean_similarity;
    out.ensembles[row.ensemble].push_back(v);
    if (row.ensemble == 0) out.values.push_back(v);
  }
  if (out.values.empty()) {
    Fail(ErrorCode::kUndefinedMeasure,
         table.source + ": no defined pair in ensemble 0");
  }
  if (ensembles <= 1) out.ensembles.clear();
  out.summary = Summarize(out.values);
  out.histogram = Histogram(out.values, out.ensembles);
  return out;
}

}  // namespace

Report BuildReport(std::span<const MeasureTable> tables) {
  Report report;
  for (const MeasureTable& table : tables) {
    SourceReport src;
    src.source = table.source;
    for (const MeasureRow& row : table.rows) {
      if (row.ensemble != 0) continue;
      ++src.pairs;
      if (!row.result.ok()) ++src.failed;
    }
    src.jaccard = Distribution(table, true);
    src.similarity = Distribution(table, false);
    report.sources.push_back(std::move(src));
  }
  for (const char* measure : {"jaccard", "mean_similarity"}) {
    const bool jac = std::string_view(measure) == "jaccard";
    for (std::size_t x = 0; x < report.sources.size(); ++x) {
      for (std::size_t y = x + 1; y < report.sources.size(); ++y) {
        const SourceReport& a = report.sources[x];
        const SourceReport& b = report.sources[y];
        report.ks.push_back(
            {measure, a.source, b.source,
             KsStatistic(jac ? a.jaccard.values : a.similarity.values,
                         jac ? b.jaccard.values : b.similarity.values)});
      }
    }
  }
  return report;
}

namespace {

constexpr const char* kPalette[] = {"#222222", "#d62728", "#1f77b4",
                                    "#2ca02c", "#9467bd", "#ff7f0e"};

const MeasureDistribution& Pick(const SourceReport& s,
                                const std::string& measure) {
  return measure == "jaccard" ? s.jaccard : s.similarity;
}

}  // namespace

std::string RenderHistogramSvg(const Report& report, const std::string& measure,
                               const std::string& provenance) {
  constexpr double kW = 640, kH = 420, kLeft = 60, kRight = 20, kTop = 30,
                   kBottom = 50;
  const double plot_w = kW - kLeft - kRight;
  const double plot_h = kH - kTop - kBottom;
  double ymax = 0.0;
  for (const SourceReport& s : report.sources) {
    const HistogramResult& h = Pick(s, measure).histogram;
    for (double d : h.densities) ymax = std::max(ymax, d);
    for (double d : h.band_high) ymax = std::max(ymax, d);
  }
  ymax = ymax > 0.0 ? ymax * 1.05 : 1.0;
  auto px = [&](double x) { return kLeft + x * plot_w; };
  auto py = [&](double y) { return kTop + plot_h - (y / ymax) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
      << "\" height=\"" << kH << "\">\n<!-- " << provenance << " -->\n";
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 5; ++t) {
    const double x = t / 5.0;
    svg << "<text x=\"" << px(x) << "\" y=\"" << kTop + plot_h + 16
        << "\" font-size=\"11\" text-anchor=\"middle\">" << FormatDouble(x)
        << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kH - 10
      << "\" font-size=\"13\" text-anchor=\"middle\">" << measure
      << "</text>\n";
  svg << "<text x=\"16\" y=\"" << kTop + plot_h / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << kTop + plot_h / 2 << ")\">probability density (max "
      << FormatDouble(std::round(ymax * 100) / 100) << ")</text>\n";

  for (std::size_t k = 0; k < report.sources.size(); ++k) {
    const SourceReport& s = report.sources[k];
    const HistogramResult& h = Pick(s, measure).histogram;
    const char* color = kPalette[k % std::size(kPalette)];
    if (h.has_bands()) {
      std::ostringstream poly;
      for (std::size_t b = 0; b < h.bins(); ++b) {
        poly << px(h.bin_edges[b]) << ',' << py(h.band_high[b]) << ' '
             << px(h.bin_edges[b + 1]) << ',' << py(h.band_high[b]) << ' ';
      }
      for (std::size_t b = h.bins(); b-- > 0;) {
        poly << px(h.bin_edges[b + 1]) << ',' << py(std::max(0.0, h.band_low[b]))
             << ' ' << px(h.bin_edges[b]) << ','
             << py(std::max(0.0, h.band_low[b])) << ' ';
      }
      svg << "<polygon points=\"" << poly.str() << "\" fill=\"" << color
          << "\" fill-opacity=\"0.25\" stroke=\"none\"/>\n";
    }
    std::ostringstream line;
    line << px(0.0) << ',' << py(0.0) << ' ';
    for (std::size_t b = 0; b < h.bins(); ++b) {
      line << px(h.bin_edges[b]) << ',' << py(h.densities[b]) << ' '
           << px(h.bin_edges[b + 1]) << ',' << py(h.densities[b]) << ' ';
    }
    line << px(1.0) << ',' << py(0.0);
    svg << "<polyline points=\"" << line.str() << "\" fill=\"none\" stroke=\""
        << color << "\" stroke-width=\"1.5\"/>\n";
    svg << "<text x=\"" << kLeft + plot_w - 8 << "\" y=\"" << kTop + 16 + 15 * k
        << "\" font-size=\"12\" text-anchor=\"end\" fill=\"" << color << "\">"
        << s.source << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void CmdEvolve(const RunConfig& cfg, std::ostream& log) {
  ValidateRunConfig(cfg);
  for (std::size_t i = 0; i < cfg.networks.size(); ++i) {
    const NetworkSpec& spec = cfg.networks[i];
    EvolutionConfig ec = spec.config;
    ec.seed = EvolutionSeed(cfg, i);
    const WeightedNetwork net = Evolve(ec);
    json header = ProvenanceJson(cfg);
    header["name"] = spec.name;
    header["config"] = EvolutionToJson(spec);
    header["evolution_seed"] = ec.seed;
    header["total_weight"] = net.total_weight();
    WriteNetworkFile(NetworkPath(cfg, spec), net, std::move(header));
    log << "evolve: " << spec.name << " (" << ModelName(ec.model)
        << ", N=" << ec.n_nodes << ", t=" << ec.timesteps
        << ") total weight " << FormatDouble(net.total_weight()) << '\n';
  }
}

void CmdSimulate(const RunConfig& cfg, std::ostream& log) {
  ValidateRunConfig(cfg);
  for (std::size_t i = 0; i < cfg.networks.size(); ++i) {
    const NetworkSpec& spec = cfg.networks[i];
    const NetworkFile file = ReadNetworkFile(NetworkPath(cfg, spec));
    DiffusionConfig d = cfg.diffusion;
    d.step_budgets = ResolveBudgets(cfg, file.network.size());
    d.seed = DiffusionSeed(cfg, i);
    const std::vector<Imprint> imprints = RunEnsemble(file.network, d);
    json header = ProvenanceJson(cfg);
    header["network"] = spec.name;
    header["diffusion"] = DiffusionToJson(d);
    header["diffusion_seed"] = d.seed;
    header["initiators"] = EnsembleInitiators(file.network.size(), d);
    header["stream"] = "imprint (h, r) uses DeriveSeed(diffusion_seed, {h, r})";
    WriteImprintFile(ImprintPath(cfg, spec), imprints, std::move(header));
    log << "simulate: " << spec.name << ": " << imprints.size()
        << " imprints\n";
  }
}

void CmdMeasure(const RunConfig& cfg, std::ostream& log) {
  ValidateRunConfig(cfg);
  const std::string provenance = Provenance(cfg);
  std::vector<std::string> all_failed;

  auto emit = [&](const std::string& source, std::vector<MeasureRow> rows) {
    std::size_t ok = 0;
    for (const MeasureRow& r : rows) ok += r.result.ok();
    log << "measure: " << source << ": " << ok << " of " << rows.size()
        << " pairs defined\n";
    if (ok == 0) all_failed.push_back(source);
    MeasureTable table{source, "prefnet-measures/1 source=" + source + " " +
                                   provenance,
                       std::move(rows)};
    WriteMeasureTable(MeasurePath(cfg, source), table);
  };

  if (cfg.data_path) {
    const ParsedLog parsed = LoadData(cfg, log);
    std::vector<std::string> warnings;
    const auto datasets = BuildNetworks(parsed.records, true, &warnings);
    for (const std::string& w : warnings) log << "  warning: " << w << '\n';
    const auto pairs = EnumeratePairs(datasets, true);
    emit(std::string(kDataSource),
         MeasureDatasets(std::string(kDataSource), datasets, pairs));
  }
  for (const NetworkSpec& spec : cfg.networks) {
    const ImprintFile file = ReadImprintFile(ImprintPath(cfg, spec));
    emit(spec.name,
         MeasureImprints(spec.name, file.imprints, cfg.diffusion.n_hashtags,
                         cfg.diffusion.reps_per_hashtag));
  }
  if (!all_failed.empty()) {
    std::string names;
    for (const auto& n : all_failed) names += (names.empty() ? "" : ", ") + n;
    Fail(ErrorCode::kUndefinedMeasure, "every pair failed for: " + names);
  }
}

void CmdReport(const RunConfig& cfg, std::ostream& log) {
  ValidateRunConfig(cfg);
  std::vector<MeasureTable> tables;
  if (cfg.data_path) {
    tables.push_back(ReadMeasureTable(MeasurePath(cfg, kDataSource)));
  }
  for (const NetworkSpec& spec : cfg.networks) {
    tables.push_back(ReadMeasureTable(MeasurePath(cfg, spec.name)));
  }
  const Report report = BuildReport(tables);
  const std::string provenance = Provenance(cfg);

  json summary = ProvenanceJson(cfg);
  summary["format"] = "prefnet-report/1";
  summary["pairing_scheme"] = PairingSchemeDescription(
      cfg.diffusion.n_hashtags, cfg.diffusion.reps_per_hashtag);
  summary["band_convention"] =
      "per-bin mean density +/- standard error across pairing ensembles";
  json sources = json::array();
  std::string hist_csv[2];
  const char* measures[] = {"jaccard", "mean_similarity"};
  for (int m = 0; m < 2; ++m) {
    hist_csv[m] = "# prefnet-histogram/1 measure=" + std::string(measures[m]) +
                  " " + provenance +
                  "\nsource,bin,lo,hi,density,band_low,band_high\n";
  }
  for (const SourceReport& s : report.sources) {
    json entry = {{"source", s.source}, {"pairs", s.pairs}, {"failed", s.failed}};
    for (int m = 0; m < 2; ++m) {
      const MeasureDistribution& dist = m == 0 ? s.jaccard : s.similarity;
      const HistogramResult& h = dist.histogram;
      entry[measures[m]] = {
          {"n", dist.summary.n},
          {"mean", dist.summary.mean},
          {"stddev", dist.summary.stddev},
          {"std_error", dist.summary.std_error},
          {"bins", h.bins()},
          {"densities", h.densities},
          {"band_low", h.band_low},
          {"band_high", h.band_high},
      };
      for (std::size_t b = 0; b < h.bins(); ++b) {
        hist_csv[m] += s.source + ',' + std::to_string(b) + ',' +
                       FormatDouble(h.bin_edges[b]) + ',' +
                       FormatDouble(h.bin_edges[b + 1]) + ',' +
                       FormatDouble(h.densities[b]) + ',' +
                       (h.has_bands() ? FormatDouble(h.band_low[b]) : "") +
                       ',' +
                       (h.has_bands() ? FormatDouble(h.band_high[b]) : "") +
                       '\n';
      }
    }
    sources.push_back(std::move(entry));
  }
  summary["sources"] = std::move(sources);

  json ks = json::array();
  std::string ks_csv = "# prefnet-ks/1 " + provenance +
                       "\nmeasure,source_a,source_b,statistic,n_a,n_b\n";
  for (const KsEntry& e : report.ks) {
    ks.push_back({{"measure", e.measure},
                  {"source_a", e.source_a},
                  {"source_b", e.source_b},
                  {"statistic", e.ks.statistic},
                  {"n_a", e.ks.n_a},
                  {"n_b", e.ks.n_b}});
    ks_csv += e.measure + ',' + e.source_a + ',' + e.source_b + ',' +
              FormatDouble(e.ks.statistic) + ',' + std::to_string(e.ks.n_a) +
              ',' + std::to_string(e.ks.n_b) + '\n';
  }
  summary["ks"] = std::move(ks);

  WriteTextFile(cfg.output_dir / "report.json", summary.dump(2) + "\n");
  WriteTextFile(cfg.output_dir / "ks.csv", ks_csv);
  for (int m = 0; m < 2; ++m) {
    WriteTextFile(
        cfg.output_dir / ("histogram_" + std::string(measures[m]) + ".csv"),
        hist_csv[m]);
    if (cfg.emit_svg) {
      WriteTextFile(
          cfg.output_dir / ("histogram_" + std::string(measures[m]) + ".svg"),
          RenderHistogramSvg(report, measures[m], provenance));
    }
  }
  for (const SourceReport& s : report.sources) {
    log << "report: " << s.source << ": mean jaccard "
        << FormatDouble(s.jaccard.summary.mean) << ", mean similarity "
        << FormatDouble(s.similarity.summary.mean) << '\n';
  }
}

void CmdPipeline(const RunConfig& cfg, std::ostream& log) {
  CmdEvolve(cfg, log);
  CmdSimulate(cfg, log);
  CmdMeasure(cfg, log);
  CmdReport(cfg, log);
}

}  // namespace prefnet
