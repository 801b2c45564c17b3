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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kpa/corpus.hpp"
#include "kpa/embedding.hpp"
#include "kpa/kernels.hpp"

namespace kpa {

enum class Linkage { average, complete, ward };

struct ClusterConfig {
  double distance_threshold = 1.5;
  Linkage linkage = Linkage::average;
  Metric metric = Metric::euclidean;
  // When set, merging stops at this many clusters and the threshold is unused.
  std::optional<std::size_t> n_clusters;
};

/// Throws ErrorKind::usage on a negative/non-finite threshold, a zero
/// n_clusters, or ward linkage with a non-euclidean metric.
void validate(const ClusterConfig& config);

/// Clusters ordered largest first; size ties go to the cluster holding the
/// smaller id. Members are sorted by id.
struct ClusterAssignment {
  std::vector<std::vector<std::string>> clusters;

  bool operator==(const ClusterAssignment&) const = default;
};

/// Bottom-up agglomeration. At every step the closest pair of clusters is
/// merged; equal distances go to the lexicographically smallest
/// (min-member-id, max-member-id) pair. Stops once every remaining linkage
/// distance exceeds the threshold, or at n_clusters.
ClusterAssignment cluster(const EmbeddingSet& embeddings, const ClusterConfig& config);

/// Orders clusters by the output rule above and sorts members.
ClusterAssignment canonical_order(std::vector<std::vector<std::string>> clusters);

nlohmann::json assignment_to_json(const ClusterAssignment& assignment);
ClusterAssignment assignment_from_json(const nlohmann::json& doc);

struct RandScores {
  double rand = 0.0;
  double adjusted_rand = 0.0;
  std::size_t n_retained = 0;
};

/// Gold cluster per argument of the topic: its smallest positive
/// non-catch-all key point. Catch-all-only and unlabeled arguments are absent.
std::map<std::string, std::string> gold_clusters(const Corpus& corpus, std::string_view topic_id);

/// Plain and adjusted Rand index by pair counting over the predicted ids
/// present in `gold`. Throws ErrorKind::input when none are.
RandScores rand_index(const ClusterAssignment& predicted,
                      const std::map<std::string, std::string>& gold);

std::optional<Linkage> parse_linkage(std::string_view name);
std::optional<Metric> parse_metric(std::string_view name);
std::string_view to_string(Linkage linkage);
std::string_view to_string(Metric metric);

}  // namespace kpa
