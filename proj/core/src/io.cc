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

#include "prefnet/io.h"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <utility>

#include "prefnet/error.h"

namespace prefnet {
namespace {

constexpr std::string_view kMeasureColumns =
    "source,ensemble,id_a,half_a,id_b,half_b,jaccard,mean_similarity,"
    "nodes_compared,status";

void AppendLinks(std::string& out, const WeightedNetwork& net) {
  for (NodeId i = 0; i < net.size(); ++i) {
    const auto row = net.row(i);
    for (NodeId j = i + 1; j < net.size(); ++j) {
      if (row[j] <= 0.0) continue;
      out += std::to_string(i);
      out += ' ';
      out += std::to_string(j);
      out += ' ';
      out += FormatDouble(row[j]);
      out += '\n';
    }
  }
}

std::string ReadAll(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) Fail(ErrorCode::kIo, "read error in " + path.string());
  return std::move(buffer).str();
}

// Cursor over the lines of a text file.
class LineReader {
 public:
  LineReader(std::string text, std::string name)
      : text_(std::move(text)), name_(std::move(name)) {}

  bool Next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    std::size_t end = text_.find('\n', pos_);
    if (end == std::string::npos) end = text_.size();
    line = std::string_view(text_).substr(pos_, end - pos_);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos_ = end + 1;
    ++line_no_;
    return true;
  }

  [[noreturn]] void Bad(const std::string& why) const {
    Fail(ErrorCode::kFormat,
         name_ + ":" + std::to_string(line_no_) + ": " + why);
  }

 private:
  std::string text_;
  std::string name_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

nlohmann::json ParseHeader(LineReader& reader, std::string_view line,
                           std::string_view marker) {
  if (!line.starts_with(marker)) {
    reader.Bad("expected a '" + std::string(marker) + "' header line");
  }
  try {
    return nlohmann::json::parse(line.substr(marker.size()));
  } catch (const nlohmann::json::exception& e) {
    reader.Bad(std::string("bad JSON header: ") + e.what());
  }
}

template <typename T>
T ParseNumber(LineReader& reader, std::string_view text) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    reader.Bad("bad number '" + std::string(text) + "'");
  }
  return value;
}

void ParseLink(LineReader& reader, std::string_view line,
               WeightedNetwork& net) {
  const std::size_t s1 = line.find(' ');
  const std::size_t s2 = line.find(' ', s1 + 1);
  if (s1 == std::string_view::npos || s2 == std::string_view::npos) {
    reader.Bad("expected 'i j weight'");
  }
  const auto i = ParseNumber<std::size_t>(reader, line.substr(0, s1));
  const auto j = ParseNumber<std::size_t>(reader, line.substr(s1 + 1, s2 - s1 - 1));
  const auto w = ParseNumber<double>(reader, line.substr(s2 + 1));
  try {
    net.AddWeight(i, j, w);
  } catch (const Error& e) {
    reader.Bad(e.what());
  }
}

std::size_t HeaderSize(LineReader& reader, const nlohmann::json& header,
                       const char* key) {
  if (!header.contains(key) || !header[key].is_number_unsigned()) {
    reader.Bad(std::string("header lacks '") + key + "'");
  }
  return header[key].get<std::size_t>();
}

std::vector<std::string_view> SplitCsv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string CsvSafe(std::string text) {
  for (char& c : text) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return text;
}

}  // namespace

std::string FormatDouble(double value) {
  std::array<char, 64> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

std::string Fnv1aHex(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k) {
    out[k] = kDigits[hash & 0xf];
    hash >>= 4;
  }
  return out;
}

void WriteTextFile(const std::filesystem::path& path,
                   std::string_view contents) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      Fail(ErrorCode::kIo, "cannot create " + path.parent_path().string() +
                               ": " + ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) Fail(ErrorCode::kIo, "write failed for " + path.string());
}

void WriteNetworkFile(const std::filesystem::path& path,
                      const WeightedNetwork& net, nlohmann::json header) {
  header["format"] = "prefnet-network/1";
  header["n_nodes"] = net.size();
  header["links"] = net.CountLinks();
  std::string out = "# " + header.dump() + "\n";
  AppendLinks(out, net);
  WriteTextFile(path, out);
}

NetworkFile ReadNetworkFile(const std::filesystem::path& path) {
  LineReader reader(ReadAll(path), path.string());
  std::string_view line;
  if (!reader.Next(line)) reader.Bad("empty network file");
  nlohmann::json header = ParseHeader(reader, line, "# ");
  if (header.value("format", "") != "prefnet-network/1") {
    reader.Bad("not a prefnet network file");
  }
  WeightedNetwork net(HeaderSize(reader, header, "n_nodes"));
  while (reader.Next(line)) {
    if (!line.empty()) ParseLink(reader, line, net);
  }
  return {std::move(header), std::move(net)};
}

void WriteImprintFile(const std::filesystem::path& path,
                      const std::vector<Imprint>& imprints,
                      nlohmann::json header) {
  header["format"] = "prefnet-imprints/1";
  header["count"] = imprints.size();
  if (!imprints.empty()) header["n_nodes"] = imprints.front().network.size();
  std::string out = "# " + header.dump() + "\n";
  for (const Imprint& imp : imprints) {
    nlohmann::json meta = {
        {"hashtag", imp.hashtag_id}, {"repetition", imp.repetition},
        {"eta", imp.eta_used},       {"budget", imp.budget},
        {"steps", imp.steps_taken},  {"links", imp.network.CountLinks()},
    };
    out += "@ " + meta.dump() + "\n";
    AppendLinks(out, imp.network);
  }
  WriteTextFile(path, out);
}

ImprintFile ReadImprintFile(const std::filesystem::path& path) {
  LineReader reader(ReadAll(path), path.string());
  std::string_view line;
  if (!reader.Next(line)) reader.Bad("empty imprint file");
  ImprintFile file;
  file.header = ParseHeader(reader, line, "# ");
  if (file.header.value("format", "") != "prefnet-imprints/1") {
    reader.Bad("not a prefnet imprint file");
  }
  const std::size_t count = HeaderSize(reader, file.header, "count");
  const std::size_t n = count ? HeaderSize(reader, file.header, "n_nodes") : 2;
  file.imprints.reserve(count);
  while (reader.Next(line)) {
    if (line.empty()) continue;
    if (line.starts_with("@ ")) {
      const nlohmann::json meta = ParseHeader(reader, line, "@ ");
      Imprint imp{WeightedNetwork(n)};
      try {
        imp.hashtag_id = meta.at("hashtag").get<std::size_t>();
        imp.repetition = meta.at("repetition").get<std::size_t>();
        imp.eta_used = meta.at("eta").get<double>();
        imp.budget = meta.at("budget").get<std::size_t>();
        imp.steps_taken = meta.at("steps").get<std::size_t>();
      } catch (const nlohmann::json::exception& e) {
        reader.Bad(std::string("bad imprint header: ") + e.what());
      }
      file.imprints.push_back(std::move(imp));
      continue;
    }
    if (file.imprints.empty()) reader.Bad("link before any imprint header");
    ParseLink(reader, line, file.imprints.back().network);
  }
  if (file.imprints.size() != count) {
    reader.Bad("header announces " + std::to_string(count) +
               " imprints, found " + std::to_string(file.imprints.size()));
  }
  return file;
}

void WriteMeasureTable(const std::filesystem::path& path,
                       const MeasureTable& table) {
  std::string out = "# " + table.provenance + "\n";
  out += kMeasureColumns;
  out += '\n';
  for (const MeasureRow& row : table.rows) {
    const PairResult& r = row.result;
    out += CsvSafe(row.source) + ',' + std::to_string(row.ensemble) + ',' +
           CsvSafe(r.id_a) + ',' + std::string(HalfName(r.half_a)) + ',' +
           CsvSafe(r.id_b) + ',' + std::string(HalfName(r.half_b)) + ',';
    out += r.jaccard ? FormatDouble(*r.jaccard) : std::string();
    out += ',';
    out += r.mean_similarity ? FormatDouble(*r.mean_similarity) : std::string();
    out += ',' + std::to_string(r.nodes_compared) + ',';
    out += r.ok() ? std::string("ok") : CsvSafe(r.failure);
    out += '\n';
  }
  WriteTextFile(path, out);
}

MeasureTable ReadMeasureTable(const std::filesystem::path& path) {
  LineReader reader(ReadAll(path), path.string());
  std::string_view line;
  MeasureTable table;
  if (!reader.Next(line) || !line.starts_with("# ")) {
    reader.Bad("missing provenance line");
  }
  table.provenance = std::string(line.substr(2));
  if (!reader.Next(line) || line != kMeasureColumns) {
    reader.Bad("unexpected column header");
  }
  while (reader.Next(line)) {
    if (line.empty()) continue;
    const auto f = SplitCsv(line);
    if (f.size() != 10) reader.Bad("expected 10 columns");
    MeasureRow row;
    row.source = std::string(f[0]);
    row.ensemble = ParseNumber<std::size_t>(reader, f[1]);
    PairResult& r = row.result;
    r.id_a = std::string(f[2]);
    r.id_b = std::string(f[4]);
    try {
      r.half_a = ParseHalf(f[3]);
      r.half_b = ParseHalf(f[5]);
    } catch (const Error& e) {
      reader.Bad(e.what());
    }
    r.nodes_compared = ParseNumber<std::size_t>(reader, f[8]);
    if (f[9] == "ok") {
      r.jaccard = ParseNumber<double>(reader, f[6]);
      r.mean_similarity = ParseNumber<double>(reader, f[7]);
    } else {
      r.failure = std::string(f[9]);
    }
    if (table.source.empty()) table.source = row.source;
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace prefnet
