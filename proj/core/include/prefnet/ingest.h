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

#ifndef PREFNET_INGEST_H_
#define PREFNET_INGEST_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "prefnet/measures.h"
#include "prefnet/network.h"

namespace prefnet {

// One observed retweet: `user_a` retweeted `user_b` under `hashtag`.
struct RetweetRecord {
  std::string hashtag;
  std::string user_a;
  std::string user_b;
  std::int64_t timestamp = 0;

  friend bool operator==(const RetweetRecord&, const RetweetRecord&) = default;
};

struct ParseOptions {
  // Parsing aborts when malformed rows exceed this fraction of data rows.
  double malformed_threshold = 0.01;
};

struct ParsedLog {
  std::vector<RetweetRecord> records;
  std::size_t data_rows = 0;
  std::size_t malformed = 0;
  std::size_t self_retweets = 0;
  // First few malformed-row diagnostics, "line N: reason".
  std::vector<std::string> diagnostics;
};

// Reads the CSV event log. The first line must be exactly
// "hashtag,user_a,user_b,timestamp"; fields are comma-separated without
// quoting, lines end in LF or CRLF, blank lines are ignored. Rows with the
// wrong field count, an empty field or a non-integer timestamp are counted as
// malformed; self-retweets are dropped and counted separately.
// Throws kFormat on a missing header or too many malformed rows, kIo when the
// file cannot be opened.
ParsedLog ParseLog(std::istream& in, const ParseOptions& options = {});
ParsedLog ParseLogFile(const std::filesystem::path& path,
                       const ParseOptions& options = {});

struct HashtagDataset {
  std::string hashtag;
  Half half = Half::kWhole;
  LabeledNetwork network;  // users sorted by id
  std::size_t n_retweets = 0;
  std::size_t n_users = 0;
  double retweet_user_ratio = 0.0;
};

// Groups records per hashtag and builds undirected retweet networks whose
// link weight counts retweets between the pair in either direction. With
// halving, each hashtag yields a first and a second dataset split at the
// midpoint of the global timestamp window (records strictly before it go to
// the first half); otherwise one whole dataset per hashtag. Output is sorted
// by (hashtag, half) and independent of record order. Empty halves are
// dropped and reported through `warnings` when given.
std::vector<HashtagDataset> BuildNetworks(
    std::span<const RetweetRecord> records, bool halving,
    std::vector<std::string>* warnings = nullptr);

struct DatasetPair {
  std::size_t a;
  std::size_t b;
};

// Comparison pairs over `datasets` (indices into it). Halved: for every
// unordered hashtag pair {A, B}, (A first, B second) and (A second, B first);
// every hashtag must have both halves. Whole: every unordered pair of whole
// datasets. Throws kInvalidArgument with fewer than two hashtags.
std::vector<DatasetPair> EnumeratePairs(std::span<const HashtagDataset> datasets,
                                        bool halved);

// retweet_user_ratio of each dataset, in order.
std::vector<double> RatioDistribution(std::span<const HashtagDataset> datasets);

}  // namespace prefnet

#endif  // PREFNET_INGEST_H_
