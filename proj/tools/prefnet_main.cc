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

// Command-line front end: evolve, simulate, measure, report, pipeline.
//
// Exit status: 0 success, 1 validation error, 2 IO error, 3 every pair of a
// source had undefined measures.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "prefnet/error.h"
#include "prefnet/pipeline.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitUndefinedMeasure = 3;

int ExitCodeFor(prefnet::ErrorCode code) {
  switch (code) {
    case prefnet::ErrorCode::kIo: return kExitIo;
    case prefnet::ErrorCode::kUndefinedMeasure: return kExitUndefinedMeasure;
    default: return kExitValidation;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Preference evolution, diffusion and route-preference measures "
               "on weighted social networks"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::string data_path;
  bool svg = false;
  app.add_option("--config", config_path, "JSON run configuration")
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--seed", seed, "Root seed for every random stream");
  app.add_option("--data", data_path, "Retweet log CSV");
  app.add_flag("--svg", svg, "Also render SVG histograms");

  struct Command {
    const char* name;
    const char* help;
    void (*run)(const prefnet::RunConfig&, std::ostream&);
  };
  const Command commands[] = {
      {"evolve", "Evolve the configured underlying networks", prefnet::CmdEvolve},
      {"simulate", "Run walk ensembles on evolved networks", prefnet::CmdSimulate},
      {"measure", "Compute pair measures for imprints and data", prefnet::CmdMeasure},
      {"report", "Histograms, bands and KS statistics", prefnet::CmdReport},
      {"pipeline", "evolve, simulate, measure and report in order",
       prefnet::CmdPipeline},
  };
  const Command* chosen = nullptr;
  for (const Command& c : commands) {
    app.add_subcommand(c.name, c.help)->fallthrough()->callback([&chosen, &c] {
      chosen = &c;
    });
  }
  bool print_config = false;
  app.add_subcommand("config", "Print the effective configuration as JSON")
      ->fallthrough()
      ->callback([&print_config] { print_config = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? kExitOk : kExitValidation;
  }

  try {
    prefnet::RunConfig cfg = config_path.empty()
                                 ? prefnet::DefaultRunConfig()
                                 : prefnet::LoadRunConfig(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (seed) cfg.seed = *seed;
    if (!data_path.empty()) cfg.data_path = data_path;
    if (svg) cfg.emit_svg = true;

    if (print_config) {
      std::cout << prefnet::RunConfigToJson(cfg).dump(2) << '\n';
      return kExitOk;
    }
    chosen->run(cfg, std::cerr);
  } catch (const prefnet::Error& e) {
    std::cerr << "prefnet: " << prefnet::ErrorCodeName(e.code()) << ": "
              << e.what() << '\n';
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "prefnet: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}
