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

#ifndef PREFNET_IO_H_
#define PREFNET_IO_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "prefnet/diffusion.h"
#include "prefnet/measures.h"
#include "prefnet/network.h"

// Line-oriented text formats. Every file opens with a provenance line
//
//   # {json header}
//
// followed by links as "i j weight" (i < j, ascending) for networks, or by
// "@ {json}" imprint headers each followed by that imprint's links. Weights
// are printed in shortest round-trip form, so a write/read cycle is exact and
// equal inputs give byte-identical files.

namespace prefnet {

std::string FormatDouble(double value);

// FNV-1a 64-bit, rendered as 16 lowercase hex digits.
std::string Fnv1aHex(std::string_view bytes);

struct NetworkFile {
  nlohmann::json header;
  WeightedNetwork network;
};

void WriteNetworkFile(const std::filesystem::path& path,
                      const WeightedNetwork& net, nlohmann::json header);
NetworkFile ReadNetworkFile(const std::filesystem::path& path);

struct ImprintFile {
  nlohmann::json header;
  std::vector<Imprint> imprints;
};

void WriteImprintFile(const std::filesystem::path& path,
                      const std::vector<Imprint>& imprints,
                      nlohmann::json header);
ImprintFile ReadImprintFile(const std::filesystem::path& path);

// One row of a measure table: which source and pairing ensemble it belongs to.
struct MeasureRow {
  std::string source;
  std::size_t ensemble = 0;
  PairResult result;
};

struct MeasureTable {
  std::string source;
  std::string provenance;  // text after "# " on the first line
  std::vector<MeasureRow> rows;
};

// CSV with columns
//   source,ensemble,id_a,half_a,id_b,half_b,jaccard,mean_similarity,
//   nodes_compared,status
// where status is "ok" or the failure reason and failed rows leave both
// measure columns empty.
void WriteMeasureTable(const std::filesystem::path& path,
                       const MeasureTable& table);
MeasureTable ReadMeasureTable(const std::filesystem::path& path);

// Writes `contents` to `path`, creating parent directories. Throws kIo.
void WriteTextFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace prefnet

#endif  // PREFNET_IO_H_
