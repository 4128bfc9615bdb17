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

#ifndef ORDHC_CORE_RANDOM_HPP_
#define ORDHC_CORE_RANDOM_HPP_

#include <array>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace ordhc {

// Philox4x32-10 counter-based generator (Salmon et al., Random123).
// Stateless: the same (key, counter) always yields the same block.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  explicit Philox4x32(std::uint64_t seed)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)} {}
  explicit Philox4x32(Key key) : key_(key) {}

  Block operator()(Block counter) const;

 private:
  Key key_;
};

std::uint64_t SplitMix64(std::uint64_t x);

// Mixes a master seed with a list of stream coordinates into a new seed.
std::uint64_t DeriveSeed(std::uint64_t master,
                         std::initializer_list<std::uint64_t> coordinates);

// 53-bit uniform in [0, 1).
inline double ToUnitInterval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Sequential generator used for every non-counter-based random choice.
// Conversions are done by hand so streams are identical across standard
// library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }
  double Uniform01() { return ToUnitInterval(engine_()); }
  // Uniform in (0, 1]; safe for log().
  double UniformOpen() { return 1.0 - Uniform01(); }
  bool Bernoulli(double p) { return Uniform01() < p; }
  // Uniform integer in [0, bound). bound > 0.
  std::uint64_t Below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace ordhc

#endif  // ORDHC_CORE_RANDOM_HPP_
