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

#include "kpa/random.hpp"

#include <bit>

#include "kpa/text.hpp"

namespace kpa {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::string_view topic_id, double level,
                          std::uint64_t sample_index) {
  std::uint64_t h = seed;
  for (std::uint64_t v : {fnv1a64(topic_id), std::bit_cast<std::uint64_t>(level), sample_index}) {
    h = splitmix64(h ^ splitmix64(v));
  }
  return h;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Reject the low values that would bias the modulo.
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return r % bound;
  }
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

}  // namespace kpa
