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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kpa/clustering.hpp"
#include "kpa/corpus.hpp"
#include "kpa/matching.hpp"

namespace kpa {

enum class SelectionMethod { smm, ssf };

struct SelectionConfig {
  SelectionMethod method = SelectionMethod::smm;
  double exponent = 5.0;  // ssf only
  std::optional<std::size_t> max_key_points;
};

struct SummaryEntry {
  std::string argument_id;
  std::string text;
  std::size_t cluster_index = 0;
  std::size_t cluster_size = 0;
  double score = 0.0;

  bool operator==(const SummaryEntry&) const = default;
};

/// Selected representatives in cluster order (largest cluster first).
/// `method` is empty for summaries that were not produced by selection,
/// e.g. sampled pseudo-summaries.
struct GeneratedSummary {
  std::string topic_id;
  std::optional<SelectionMethod> method;
  std::vector<SummaryEntry> entries;

  bool operator==(const GeneratedSummary&) const = default;
};

double score_smm(std::size_t match_count);

/// match_count^exponent / word_count. Throws ErrorKind::input for a zero
/// word count or a non-positive exponent.
double score_ssf(std::size_t match_count, std::size_t word_count, double exponent);

/// One representative per cluster: the member with the highest score against
/// the rest of its cluster. Equal scores prefer fewer words, then the
/// lexicographically smaller text, then the smaller id. Only the first
/// max_key_points clusters are processed when a cap is set.
GeneratedSummary select_representatives(const ClusterAssignment& clusters, const Corpus& corpus,
                                        const Matcher& matcher, const SelectionConfig& config);

nlohmann::json summary_to_json(const GeneratedSummary& summary);
GeneratedSummary summary_from_json(const nlohmann::json& doc);

std::optional<SelectionMethod> parse_selection_method(std::string_view name);
std::string_view to_string(SelectionMethod method);

}  // namespace kpa
