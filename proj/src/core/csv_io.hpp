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


// Plain CSV readers and writers for the file formats the CLI exchanges.
// Blank lines and lines starting with '#' are ignored on input; parse errors
// carry the file name and 1-based line number.

#ifndef ORDHC_CORE_CSV_IO_HPP_
#define ORDHC_CORE_CSV_IO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/comparison_oracle.hpp"
#include "core/dendrogram.hpp"
#include "core/quadruplet_kernel.hpp"

namespace ordhc {

// Shortest representation that reads back to the same double.
std::string FormatDouble(double value);

std::vector<std::string_view> SplitCsvLine(std::string_view line);

// Rows of numbers. A first row that does not parse as numbers is taken as a
// header and skipped.
std::vector<std::vector<double>> ReadFeaturesCsv(const std::string& path);

// Header "i,j,k,l"; each row states that pair (i,j) is more similar than
// pair (k,l). The item count is one past the largest index seen.
struct QuadrupletFile {
  Index n_items = 0;
  std::vector<Quadruplet> quadruplets;
};
QuadrupletFile ReadQuadrupletsCsv(const std::string& path);

// Header "i,j,k"; each row states that i is more similar to j than to k.
struct TripletFile {
  Index n_items = 0;
  std::vector<Triplet> triplets;
};
TripletFile ReadTripletsCsv(const std::string& path);

// Header "item_index,cluster_id". Returns one label per item, -1 for items
// the file does not mention.
std::vector<Index> ReadPartitionCsv(const std::string& path, Index n_items);

// Header "step,left_id,right_id,new_id": one row per merge in order.
std::string LinkageCsv(const Dendrogram& tree);

// Header "n,<N>" then N rows of N values with an empty diagonal. Active
// kernels append "# queries_used,<count>".
std::string KernelCsv(const KernelMatrix& kernel,
                      std::optional<std::uint64_t> queries_used = {});

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& content);

}  // namespace ordhc

#endif  // ORDHC_CORE_CSV_IO_HPP_
