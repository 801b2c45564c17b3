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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kpa/corpus.hpp"
#include "kpa/remote.hpp"

namespace kpa {

/// Dense row-major vectors keyed by argument id. Immutable after
/// construction; every component is finite and every row has `dim` values.
class EmbeddingSet {
 public:
  EmbeddingSet() = default;
  EmbeddingSet(std::size_t dim, std::vector<std::string> ids, std::vector<double> values);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  std::span<const double> values() const { return values_; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(values_).subspan(i * dim_, dim_);
  }
  std::optional<std::span<const double>> find(std::string_view id) const;

  bool operator==(const EmbeddingSet& other) const {
    return dim_ == other.dim_ && ids_ == other.ids_ && values_ == other.values_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> ids_;
  std::vector<double> values_;
  std::unordered_map<std::string, std::size_t> index_;
};

enum class EmbeddingKind { oracle, lexical, file, remote };

struct EmbeddingBackendConfig {
  EmbeddingKind kind = EmbeddingKind::lexical;
  std::filesystem::path file;  // kind == file
  RemoteConfig remote;         // kind == remote
  std::size_t lexical_buckets = 4096;
};

/// One vector per argument of `topic_id`, in corpus order.
///  - oracle: multi-hot indicator over the topic's key points (load order)
///  - lexical: hashed term frequencies, L2-normalised
///  - file: JSON Lines {"id", "vector"}; extra ids are ignored
///  - remote: POST /v1/embed in batches
EmbeddingSet embed(const EmbeddingBackendConfig& config, const Corpus& corpus,
                   std::string_view topic_id);

/// Unit-norm copy; a zero vector is an ErrorKind::input naming its id.
EmbeddingSet normalize(const EmbeddingSet& set);

/// Lexical backend tokens: whitespace split, lowercased, punctuation removed.
std::vector<std::string> lexical_terms(std::string_view text);

std::optional<EmbeddingKind> parse_embedding_kind(std::string_view name);
std::string_view to_string(EmbeddingKind kind);

}  // namespace kpa
