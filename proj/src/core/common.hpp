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

#ifndef ORDHC_CORE_COMMON_HPP_
#define ORDHC_CORE_COMMON_HPP_

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ordhc {

// Item index. Items are always 0..n-1.
using Index = std::int32_t;

// Identifier of a cluster inside a Partition. Initial clusters are numbered
// 0..K-1 and every merge mints the next unused id.
using ClusterId = std::int32_t;

// Position of an unordered item pair in lexicographic order, see PairIndexer.
using PairRank = std::uint32_t;

enum class ErrorCode {
  kInvalidArgument = 1,
  kOutOfRange = 2,
  kFormat = 3,
  kIo = 4,
  kContractViolation = 5,
  kInternal = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void Require(bool condition, ErrorCode code, const char* message) {
  if (!condition) Fail(code, message);
}

// Canonical unordered pair of distinct items, a < b.
struct PairId {
  Index a = 0;
  Index b = 0;

  friend auto operator<=>(const PairId&, const PairId&) = default;
};

// Builds the canonical pair for two distinct items in either order.
inline PairId MakePair(Index x, Index y) {
  if (x == y) {
    Fail(ErrorCode::kInvalidArgument,
         "pair needs two distinct items, got " + std::to_string(x) + " twice");
  }
  return x < y ? PairId{x, y} : PairId{y, x};
}

inline std::uint64_t Choose2(std::uint64_t n) {
  return n < 2 ? 0 : n * (n - 1) / 2;
}

// Dense ranking of the C(n,2) unordered pairs in lexicographic order:
// (0,1), (0,2), ..., (0,n-1), (1,2), ...  Rank order equals PairId order.
class PairIndexer {
 public:
  PairIndexer() = default;
  explicit PairIndexer(Index n);

  Index n() const { return n_; }
  std::uint64_t size() const { return table_.size(); }

  PairRank Rank(PairId p) const {
    const auto a = static_cast<std::uint64_t>(p.a);
    const auto n = static_cast<std::uint64_t>(n_);
    return static_cast<PairRank>(a * (2 * n - a - 1) / 2 +
                                 static_cast<std::uint64_t>(p.b - p.a - 1));
  }
  PairRank Rank(Index x, Index y) const { return Rank(MakePair(x, y)); }

  PairId Unrank(PairRank r) const { return table_[r]; }

  bool Contains(PairId p) const {
    return p.a >= 0 && p.a < p.b && p.b < n_;
  }

 private:
  Index n_ = 0;
  std::vector<PairId> table_;
};

inline PairIndexer::PairIndexer(Index n) : n_(n) {
  Require(n >= 0, ErrorCode::kInvalidArgument, "item count must be >= 0");
  // PairRank is 32 bits wide.
  Require(Choose2(static_cast<std::uint64_t>(n)) <= 0xFFFFFFFFull,
          ErrorCode::kOutOfRange, "too many items for 32-bit pair ranks");
  table_.reserve(Choose2(static_cast<std::uint64_t>(n)));
  for (Index a = 0; a < n; ++a) {
    for (Index b = a + 1; b < n; ++b) table_.push_back({a, b});
  }
}

}  // namespace ordhc

#endif  // ORDHC_CORE_COMMON_HPP_
