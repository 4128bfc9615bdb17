// Copyright 2026 The ordhc Authors.
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


#include "core/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace ordhc {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

template <typename T>
bool ParseNumber(std::string_view text, T* out) {
  text = Trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const char* end = text.data() + text.size();
  const auto result = std::from_chars(text.data(), end, *out);
  return !text.empty() && result.ec == std::errc() && result.ptr == end;
}

// Iterates the meaningful lines of a file together with their line numbers.
class LineReader {
 public:
  explicit LineReader(const std::string& path) : path_(path), in_(path) {
    if (!in_) Fail(ErrorCode::kIo, "cannot open " + path);
  }

  bool Next(std::string_view* line) {
    while (std::getline(in_, buffer_)) {
      ++number_;
      const std::string_view t = Trim(buffer_);
      if (t.empty() || t.front() == '#') continue;
      *line = t;
      return true;
    }
    return false;
  }

  [[noreturn]] void Error(const std::string& what) const {
    Fail(ErrorCode::kFormat,
         path_ + ":" + std::to_string(number_) + ": " + what);
  }

 private:
  std::string path_;
  std::ifstream in_;
  std::string buffer_;
  std::size_t number_ = 0;
};

void ExpectHeader(LineReader& reader, const std::vector<std::string>& names) {
  std::string_view line;
  std::string expected;
  for (const std::string& n : names) expected += (expected.empty() ? "" : ",") + n;
  if (!reader.Next(&line)) reader.Error("missing header \"" + expected + "\"");
  const std::vector<std::string_view> fields = SplitCsvLine(line);
  bool ok = fields.size() == names.size();
  for (std::size_t k = 0; ok && k < names.size(); ++k) ok = fields[k] == names[k];
  if (!ok) reader.Error("expected header \"" + expected + "\"");
}

std::vector<Index> ReadIndexRow(LineReader& reader, std::string_view line,
                                std::size_t width) {
  const std::vector<std::string_view> fields = SplitCsvLine(line);
  if (fields.size() != width) {
    reader.Error("expected " + std::to_string(width) + " fields, got " +
                 std::to_string(fields.size()));
  }
  std::vector<Index> out(width);
  for (std::size_t k = 0; k < width; ++k) {
    if (!ParseNumber(fields[k], &out[k]) || out[k] < 0) {
      reader.Error("field " + std::to_string(k + 1) +
                   " is not a non-negative integer: \"" +
                   std::string(fields[k]) + "\"");
    }
  }
  return out;
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

std::vector<std::string_view> SplitCsvLine(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(Trim(line.substr(start)));
      return out;
    }
    out.push_back(Trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

std::vector<std::vector<double>> ReadFeaturesCsv(const std::string& path) {
  LineReader reader(path);
  std::vector<std::vector<double>> rows;
  std::string_view line;
  bool first = true;
  while (reader.Next(&line)) {
    const std::vector<std::string_view> fields = SplitCsvLine(line);
    std::vector<double> row(fields.size());
    bool numeric = true;
    for (std::size_t k = 0; k < fields.size() && numeric; ++k) {
      numeric = ParseNumber(fields[k], &row[k]);
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;
      }
      reader.Error("non-numeric feature value");
    }
    first = false;
    if (!rows.empty() && row.size() != rows.front().size()) {
      reader.Error("expected " + std::to_string(rows.front().size()) +
                   " features, got " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) Fail(ErrorCode::kFormat, path + ": no feature rows");
  return rows;
}

QuadrupletFile ReadQuadrupletsCsv(const std::string& path) {
  LineReader reader(path);
  ExpectHeader(reader, {"i", "j", "k", "l"});
  QuadrupletFile file;
  std::string_view line;
  while (reader.Next(&line)) {
    const std::vector<Index> v = ReadIndexRow(reader, line, 4);
    if (v[0] == v[1] || v[2] == v[3]) reader.Error("pair repeats an item");
    const PairId w = MakePair(v[0], v[1]);
    const PairId l = MakePair(v[2], v[3]);
    if (w == l) reader.Error("a pair cannot be compared with itself");
    file.quadruplets.push_back({w, l});
    for (Index x : v) file.n_items = std::max(file.n_items, x + 1);
  }
  return file;
}

TripletFile ReadTripletsCsv(const std::string& path) {
  LineReader reader(path);
  ExpectHeader(reader, {"i", "j", "k"});
  TripletFile file;
  std::string_view line;
  while (reader.Next(&line)) {
    const std::vector<Index> v = ReadIndexRow(reader, line, 3);
    if (v[0] == v[1] || v[0] == v[2] || v[1] == v[2]) {
      reader.Error("triplet items must be distinct");
    }
    file.triplets.push_back({v[0], v[1], v[2]});
    for (Index x : v) file.n_items = std::max(file.n_items, x + 1);
  }
  return file;
}

std::vector<Index> ReadPartitionCsv(const std::string& path, Index n_items) {
  LineReader reader(path);
  ExpectHeader(reader, {"item_index", "cluster_id"});
  std::vector<Index> labels(static_cast<std::size_t>(n_items), -1);
  std::string_view line;
  while (reader.Next(&line)) {
    const std::vector<Index> v = ReadIndexRow(reader, line, 2);
    if (v[0] >= n_items) {
      reader.Error("item " + std::to_string(v[0]) + " is out of range for " +
                   std::to_string(n_items) + " items");
    }
    if (labels[v[0]] >= 0) {
      reader.Error("item " + std::to_string(v[0]) + " is listed twice");
    }
    labels[v[0]] = v[1];
  }
  return labels;
}

std::string LinkageCsv(const Dendrogram& tree) {
  std::ostringstream out;
  out << "step,left_id,right_id,new_id\n";
  std::size_t step = 0;
  for (const MergeStep& m : tree.merges()) {
    out << step++ << ',' << m.left << ',' << m.right << ',' << m.merged << '\n';
  }
  return out.str();
}

std::string KernelCsv(const KernelMatrix& kernel,
                      std::optional<std::uint64_t> queries_used) {
  std::ostringstream out;
  const Index n = kernel.size();
  out << "n," << n << '\n';
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (j > 0) out << ',';
      if (i != j) out << kernel(i, j);
    }
    out << '\n';
  }
  if (queries_used) out << "# queries_used," << *queries_used << '\n';
  return out.str();
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteTextFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path);
  out << content;
  if (!out) Fail(ErrorCode::kIo, "write failed for " + path);
}

}  // namespace ordhc
