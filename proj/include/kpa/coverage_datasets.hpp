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
#include <string>
#include <vector>

#include <json.hpp>

#include "kpa/corpus.hpp"
#include "kpa/selection.hpp"

namespace kpa {

struct CoverageSampleSpec {
  std::string topic_id;
  double level = 1.0;  // in (0, 1]
  std::size_t size = 25;
  std::size_t n_samples = 10;
  std::uint64_t seed = 0;

  bool operator==(const CoverageSampleSpec&) const = default;
};

/// Fixed-size argument sample drawn only from the selected key points.
struct PseudoSummary {
  CoverageSampleSpec spec;
  std::size_t sample_index = 0;
  std::vector<std::string> selected_key_point_ids;  // sorted
  std::vector<std::string> argument_ids;           // draw order

  bool operator==(const PseudoSummary&) const = default;
};

/// round-half-up(level * n_key_points), at least 1.
std::size_t selected_key_point_count(double level, std::size_t n_key_points);

/// Chooses the key point subset uniformly, draws one argument per selected
/// key point, then fills up to spec.size uniformly without replacement.
/// Eligible arguments have all their non-catch-all positive labels inside
/// the selected subset. Fully determined by (seed, topic, level, index).
PseudoSummary sample_pseudo_summary(const Corpus& corpus, const CoverageSampleSpec& spec,
                                    std::size_t sample_index);

struct SuiteConfig {
  std::vector<double> levels{1.0, 0.75, 0.5};
  std::size_t size = 25;
  std::size_t n_samples = 10;
  std::uint64_t seed = 0;
};

/// n_samples pseudo-summaries per (topic, level), ordered topic-major then
/// level then sample index. Cells are sampled in parallel.
std::vector<PseudoSummary> generate_suite(const Corpus& corpus, const SuiteConfig& config);

/// View as a summary (one entry per sampled argument) for the metrics.
GeneratedSummary to_summary(const PseudoSummary& pseudo, const Corpus& corpus);

nlohmann::json pseudo_summary_to_json(const PseudoSummary& pseudo);
PseudoSummary pseudo_summary_from_json(const nlohmann::json& doc);

}  // namespace kpa
