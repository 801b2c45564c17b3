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

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kpa/corpus.hpp"
#include "kpa/remote.hpp"

namespace kpa {

/// What the second (key-point) slot of a query holds.
enum class SlotKind { key_point, argument };

/// Ordered pair: the first slot is the argument, the second the key point.
struct MatchQuery {
  std::string_view argument_text;
  std::string_view key_point_text;
  std::optional<std::string_view> argument_id;
  std::optional<std::string_view> key_point_id;
  SlotKind slot = SlotKind::key_point;
};

struct MatchScore {
  double score = 0.0;
  bool is_match = false;
};

enum class MatchKind { oracle, lexical, file, remote };

struct MatcherConfig {
  MatchKind kind = MatchKind::lexical;
  double decision_threshold = 0.5;
  // Puts the candidate in the argument slot for argument-argument pairs.
  bool swap_slots = false;
  std::filesystem::path file;  // kind == file
  RemoteConfig remote;         // kind == remote
};

/// Scores in [0, 1]; implementations are safe to call concurrently.
class MatchBackend {
 public:
  virtual ~MatchBackend() = default;
  virtual std::vector<double> score(std::span<const MatchQuery> queries) const = 0;
};

/// Oracle needs `gold`; other kinds ignore it.
std::unique_ptr<MatchBackend> make_match_backend(const MatcherConfig& config, const Corpus* gold);

/// Decision layer plus a pair cache keyed by (slot kind, argument-slot id,
/// key-point-slot id). Thread-safe.
class Matcher {
 public:
  explicit Matcher(MatcherConfig config, const Corpus* gold = nullptr);
  Matcher(MatcherConfig config, std::unique_ptr<MatchBackend> backend);

  const MatcherConfig& config() const { return config_; }

  MatchScore match(const MatchQuery& query) const;
  std::vector<MatchScore> match_batch(std::span<const MatchQuery> queries) const;

  /// Members of `remainder` that the candidate matches: each member is put
  /// in the argument slot and the candidate in the key-point slot (reversed
  /// under swap_slots).
  std::size_t match_count(std::span<const Argument* const> remainder,
                          const Argument& candidate) const;

  /// Scores every ordered member pair of a cluster in one batch so later
  /// match_count calls are cache hits.
  void prefetch_cluster(std::span<const Argument* const> members) const;

  /// Number of pair scores requested from the backend so far.
  std::size_t backend_queries() const { return backend_queries_.load(); }

 private:
  MatchQuery pair_query(const Argument& member, const Argument& candidate) const;

  MatcherConfig config_;
  std::unique_ptr<MatchBackend> backend_;
  mutable std::shared_mutex cache_mutex_;
  mutable std::unordered_map<std::string, double> cache_;
  mutable std::atomic<std::size_t> backend_queries_{0};
};

/// Jaccard similarity of lowercased token sets.
double jaccard(std::string_view a, std::string_view b);

std::optional<MatchKind> parse_match_kind(std::string_view name);
std::string_view to_string(MatchKind kind);

}  // namespace kpa
