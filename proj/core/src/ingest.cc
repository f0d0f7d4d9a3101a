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

#include "prefnet/ingest.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <string_view>
#include <utility>

#include "prefnet/error.h"

namespace prefnet {
namespace {

constexpr std::string_view kHeader = "hashtag,user_a,user_b,timestamp";
constexpr std::size_t kMaxDiagnostics = 20;

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

bool ParseTimestamp(std::string_view text, std::int64_t& out) {
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

void StripLineEnd(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

ParsedLog ParseLog(std::istream& in, const ParseOptions& options) {
  ParsedLog out;
  std::string line;
  if (!std::getline(in, line)) Fail(ErrorCode::kFormat, "empty retweet log");
  StripLineEnd(line);
  if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
  if (line != kHeader) {
    Fail(ErrorCode::kFormat, "missing header '" + std::string(kHeader) + "'");
  }

  std::size_t line_no = 1;
  auto malformed = [&](const std::string& why) {
    ++out.malformed;
    if (out.diagnostics.size() < kMaxDiagnostics) {
      out.diagnostics.push_back("line " + std::to_string(line_no) + ": " + why);
    }
  };
  while (std::getline(in, line)) {
    ++line_no;
    StripLineEnd(line);
    if (line.empty()) continue;
    ++out.data_rows;
    const auto fields = SplitFields(line);
    if (fields.size() != 4) {
      malformed("expected 4 fields, got " + std::to_string(fields.size()));
      continue;
    }
    if (fields[0].empty() || fields[1].empty() || fields[2].empty()) {
      malformed("empty field");
      continue;
    }
    RetweetRecord record;
    if (!ParseTimestamp(fields[3], record.timestamp)) {
      malformed("timestamp is not an integer");
      continue;
    }
    if (fields[1] == fields[2]) {
      ++out.self_retweets;
      continue;
    }
    record.hashtag = fields[0];
    record.user_a = fields[1];
    record.user_b = fields[2];
    out.records.push_back(std::move(record));
  }
  if (in.bad()) Fail(ErrorCode::kIo, "read error in retweet log");

  const double limit =
      options.malformed_threshold * static_cast<double>(out.data_rows);
  if (static_cast<double>(out.malformed) > limit) {
    Fail(ErrorCode::kFormat,
         std::to_string(out.malformed) + " of " +
             std::to_string(out.data_rows) +
             " rows are malformed, above the allowed fraction");
  }
  return out;
}

ParsedLog ParseLogFile(const std::filesystem::path& path,
                       const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  return ParseLog(in, options);
}

namespace {

HashtagDataset BuildDataset(const std::string& hashtag, Half half,
                            const std::vector<const RetweetRecord*>& rows) {
  std::set<std::string_view> users;
  for (const RetweetRecord* r : rows) {
    users.insert(r->user_a);
    users.insert(r->user_b);
  }
  HashtagDataset ds;
  ds.hashtag = hashtag;
  ds.half = half;
  std::map<std::string_view, NodeId> index;
  for (std::string_view u : users) {
    index.emplace(u, ds.network.labels.size());
    ds.network.labels.emplace_back(u);
  }
  std::map<std::pair<NodeId, NodeId>, double> weights;
  for (const RetweetRecord* r : rows) {
    NodeId a = index.at(r->user_a);
    NodeId b = index.at(r->user_b);
    if (a > b) std::swap(a, b);
    weights[{a, b}] += 1.0;
  }
  for (const auto& [key, w] : weights) {
    ds.network.links.push_back({key.first, key.second, w});
  }
  ds.n_retweets = rows.size();
  ds.n_users = users.size();
  ds.retweet_user_ratio =
      static_cast<double>(ds.n_retweets) / static_cast<double>(ds.n_users);
  return ds;
}

}  // namespace

std::vector<HashtagDataset> BuildNetworks(std::span<const RetweetRecord> records,
                                          bool halving,
                                          std::vector<std::string>* warnings) {
  if (records.empty()) Fail(ErrorCode::kInvalidArgument, "no retweet records");

  const auto [lo, hi] = std::minmax_element(
      records.begin(), records.end(),
      [](const RetweetRecord& x, const RetweetRecord& y) {
        return x.timestamp < y.timestamp;
      });
  const double midpoint = (static_cast<double>(lo->timestamp) +
                           static_cast<double>(hi->timestamp)) /
                          2.0;

  std::map<std::string, std::vector<const RetweetRecord*>> by_hashtag;
  for (const RetweetRecord& r : records) by_hashtag[r.hashtag].push_back(&r);

  std::vector<HashtagDataset> out;
  for (const auto& [hashtag, rows] : by_hashtag) {
    if (!halving) {
      out.push_back(BuildDataset(hashtag, Half::kWhole, rows));
      continue;
    }
    std::vector<const RetweetRecord*> first;
    std::vector<const RetweetRecord*> second;
    for (const RetweetRecord* r : rows) {
      (static_cast<double>(r->timestamp) < midpoint ? first : second)
          .push_back(r);
    }
    for (auto [half, part] : {std::pair{Half::kFirst, &first},
                              std::pair{Half::kSecond, &second}}) {
      if (part->empty()) {
        if (warnings) {
          warnings->push_back("hashtag '" + hashtag + "' has no records in the " +
                              std::string(HalfName(half)) + " half; dropped");
        }
        continue;
      }
      out.push_back(BuildDataset(hashtag, half, *part));
    }
  }
  return out;
}

std::vector<DatasetPair> EnumeratePairs(std::span<const HashtagDataset> datasets,
                                        bool halved) {
  // hashtag -> index per half
  std::map<std::string, std::map<Half, std::size_t>> slots;
  for (std::size_t i = 0; i < datasets.size(); ++i) {
    slots[datasets[i].hashtag][datasets[i].half] = i;
  }
  std::vector<std::string> hashtags;
  for (const auto& [hashtag, halves] : slots) {
    const bool usable = halved ? halves.contains(Half::kFirst) &&
                                     halves.contains(Half::kSecond)
                               : halves.contains(Half::kWhole);
    if (!usable) {
      Fail(ErrorCode::kInvalidArgument,
           "hashtag '" + hashtag + "' lacks the " +
               (halved ? std::string("first or second half")
                       : std::string("whole dataset")));
    }
    hashtags.push_back(hashtag);
  }
  if (hashtags.size() < 2) {
    Fail(ErrorCode::kInvalidArgument, "pairing needs at least two hashtags");
  }

  std::vector<DatasetPair> pairs;
  for (std::size_t x = 0; x < hashtags.size(); ++x) {
    for (std::size_t y = x + 1; y < hashtags.size(); ++y) {
      const auto& sx = slots[hashtags[x]];
      const auto& sy = slots[hashtags[y]];
      if (halved) {
        pairs.push_back({sx.at(Half::kFirst), sy.at(Half::kSecond)});
        pairs.push_back({sx.at(Half::kSecond), sy.at(Half::kFirst)});
      } else {
        pairs.push_back({sx.at(Half::kWhole), sy.at(Half::kWhole)});
      }
    }
  }
  return pairs;
}

std::vector<double> RatioDistribution(std::span<const HashtagDataset> datasets) {
  std::vector<double> out;
  out.reserve(datasets.size());
  for (const HashtagDataset& ds : datasets) out.push_back(ds.retweet_user_ratio);
  return out;
}

}  // namespace prefnet
