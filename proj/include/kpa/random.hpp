// Copyright 2026 The kpa Authors.
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

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace kpa {

/// Generator identity recorded in manifests. Bump the suffix whenever the
/// derivation or the draw procedure changes.
inline constexpr std::string_view kRngName = "mt19937_64+splitmix64-streams/v1";

std::uint64_t splitmix64(std::uint64_t x);

/// Stream seed for one (topic, level, sample) cell:
///   h = seed
///   for v in [fnv1a64(topic_id), bits(level), sample_index]:
///     h = splitmix64(h ^ splitmix64(v))
std::uint64_t stream_seed(std::uint64_t seed, std::string_view topic_id, double level,
                          std::uint64_t sample_index);

/// mt19937_64 with a portable unbiased bounded draw; std distributions are
/// implementation-defined and would break cross-platform reproducibility.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform double in [0, 1) from the top 53 bits.
  double unit();

 private:
  std::mt19937_64 engine_;
};

}  // namespace kpa
