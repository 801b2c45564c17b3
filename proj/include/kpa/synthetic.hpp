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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kpa/corpus.hpp"

namespace kpa {

/// One generated topic: key point i gets kp_sizes[i] single-labeled
/// arguments; `unlabeled` arguments get no label at all.
struct SyntheticTopic {
  std::string text;
  std::vector<std::size_t> kp_sizes;
  std::size_t unlabeled = 0;
};

/// Texts are drawn from one shared English word pool, with a small share of
/// each argument's words taken from its key point's text. Ids are
/// "<topic#>_arg_<n>" and "<topic#>_kp_<n>". Deterministic in `seed`.
Corpus make_synthetic_corpus(std::span<const SyntheticTopic> topics, std::uint64_t seed);

}  // namespace kpa
