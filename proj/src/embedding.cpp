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

#include "kpa/embedding.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <exception>
#include <map>

#include "kpa/error.hpp"
#include "kpa/io.hpp"
#include "kpa/text.hpp"

namespace kpa {

EmbeddingSet::EmbeddingSet(std::size_t dim, std::vector<std::string> ids,
                           std::vector<double> values)
    : dim_(dim), ids_(std::move(ids)), values_(std::move(values)) {
  if (dim_ == 0) fail(ErrorKind::format, "embedding dimension must be positive");
  if (values_.size() != ids_.size() * dim_) {
    fail(ErrorKind::format, "embedding values do not match " + std::to_string(ids_.size()) +
                                " x " + std::to_string(dim_));
  }
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], i).second) {
      fail(ErrorKind::format, "duplicate embedding id '" + ids_[i] + "'");
    }
    for (double v : row(i)) {
      if (!std::isfinite(v)) fail(ErrorKind::format, "non-finite component for '" + ids_[i] + "'");
    }
  }
}

std::optional<std::span<const double>> EmbeddingSet::find(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return row(it->second);
}

std::vector<std::string> lexical_terms(std::string_view text) {
  std::vector<std::string> out;
  for (const std::string& raw : split_whitespace(text)) {
    std::string term;
    for (char c : raw) {
      const auto u = static_cast<unsigned char>(c);
      if (std::ispunct(u) == 0) term.push_back(static_cast<char>(std::tolower(u)));
    }
    if (!term.empty()) out.push_back(std::move(term));
  }
  return out;
}

namespace {

void l2_normalize_row(std::span<double> row) {
  double norm = 0.0;
  for (double v : row) norm += v * v;
  norm = std::sqrt(norm);
  if (norm == 0.0) return;
  for (double& v : row) v /= norm;
}

EmbeddingSet embed_oracle(const Corpus& corpus, const std::vector<const Argument*>& args,
                          std::string_view topic_id) {
  const auto kps = corpus.key_points_of(topic_id);
  if (kps.empty()) fail(ErrorKind::input, "oracle embeddings: topic has no key points");
  std::map<std::string, std::size_t> column;
  for (std::size_t j = 0; j < kps.size(); ++j) column.emplace(kps[j]->id, j);
  std::vector<std::string> ids;
  std::vector<double> values(args.size() * kps.size(), 0.0);
  for (std::size_t i = 0; i < args.size(); ++i) {
    ids.push_back(args[i]->id);
    for (const std::string& kp : corpus.positive_key_points(args[i]->id)) {
      values[i * kps.size() + column.at(kp)] = 1.0;
    }
  }
  return EmbeddingSet(kps.size(), std::move(ids), std::move(values));
}

EmbeddingSet embed_lexical(const EmbeddingBackendConfig& config,
                           const std::vector<const Argument*>& args) {
  const std::size_t dim = config.lexical_buckets;
  if (dim == 0) fail(ErrorKind::usage, "lexical embeddings need at least one bucket");
  std::vector<std::string> ids;
  for (const Argument* a : args) ids.push_back(a->id);
  std::vector<double> values(args.size() * dim, 0.0);
  const auto n = static_cast<std::ptrdiff_t>(args.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    std::span<double> row(values.data() + i * static_cast<std::ptrdiff_t>(dim), dim);
    for (const std::string& term : lexical_terms(args[static_cast<std::size_t>(i)]->text)) {
      row[fnv1a64(term) % dim] += 1.0;
    }
    l2_normalize_row(row);
  }
  return EmbeddingSet(dim, std::move(ids), std::move(values));
}

EmbeddingSet embed_file(const EmbeddingBackendConfig& config,
                        const std::vector<const Argument*>& args) {
  std::map<std::string, std::size_t> wanted;
  for (std::size_t i = 0; i < args.size(); ++i) wanted.emplace(args[i]->id, i);

  std::optional<std::size_t> dim;
  std::vector<std::vector<double>> found(args.size());
  std::size_t line = 0;
  for (const auto& record : read_jsonl(config.file)) {
    ++line;
    std::string id;
    std::vector<double> vec;
    try {
      id = record.at("id").get<std::string>();
      vec = record.at("vector").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::parse, config.file.string() + ": record " + std::to_string(line) + ": " +
                                 e.what());
    }
    if (!dim) dim = vec.size();
    if (vec.size() != *dim) {
      fail(ErrorKind::format, config.file.string() + ": vector for '" + id + "' has dimension " +
                                  std::to_string(vec.size()) + ", expected " +
                                  std::to_string(*dim));
    }
    const auto it = wanted.find(id);
    if (it != wanted.end()) found[it->second] = std::move(vec);
  }
  std::vector<std::string> missing;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (found[i].empty()) missing.push_back(args[i]->id);
  }
  if (!missing.empty()) {
    std::string msg = config.file.string() + ": missing vectors for " +
                      std::to_string(missing.size()) + " argument(s):";
    for (std::size_t i = 0; i < missing.size() && i < 20; ++i) msg += " " + missing[i];
    if (missing.size() > 20) msg += " ...";
    fail(ErrorKind::coverage, msg);
  }
  std::vector<std::string> ids;
  std::vector<double> values;
  for (std::size_t i = 0; i < args.size(); ++i) {
    ids.push_back(args[i]->id);
    values.insert(values.end(), found[i].begin(), found[i].end());
  }
  return EmbeddingSet(dim.value_or(0), std::move(ids), std::move(values));
}

EmbeddingSet embed_remote(const EmbeddingBackendConfig& config,
                          const std::vector<const Argument*>& args) {
  const std::size_t batch = std::max<std::size_t>(1, config.remote.batch_size);
  const std::size_t n_batches = (args.size() + batch - 1) / batch;
  std::vector<std::vector<std::vector<double>>> results(n_batches);
  std::exception_ptr error;

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(n_batches); ++b) {
    try {
      const std::size_t begin = static_cast<std::size_t>(b) * batch;
      const std::size_t end = std::min(args.size(), begin + batch);
      nlohmann::json body;
      body["texts"] = nlohmann::json::array();
      for (std::size_t i = begin; i < end; ++i) body["texts"].push_back(args[i]->text);
      const nlohmann::json response = post_json(config.remote, "/v1/embed", body);
      auto vectors = response.at("vectors").get<std::vector<std::vector<double>>>();
      if (vectors.size() != end - begin) {
        fail(ErrorKind::transport, "/v1/embed returned " + std::to_string(vectors.size()) +
                                       " vectors for " + std::to_string(end - begin) + " texts");
      }
      results[static_cast<std::size_t>(b)] = std::move(vectors);
    } catch (const nlohmann::json::exception& e) {
#pragma omp critical(kpa_remote_embed_error)
      if (!error) error = std::make_exception_ptr(
                      Error(ErrorKind::transport, std::string("/v1/embed: ") + e.what()));
    } catch (...) {
#pragma omp critical(kpa_remote_embed_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  std::vector<std::string> ids;
  std::vector<double> values;
  std::optional<std::size_t> dim;
  std::size_t i = 0;
  for (const auto& chunk : results) {
    for (const auto& vec : chunk) {
      if (!dim) dim = vec.size();
      if (vec.size() != *dim) {
        fail(ErrorKind::format, "/v1/embed: inconsistent vector dimension for '" +
                                    args[i]->id + "'");
      }
      ids.push_back(args[i++]->id);
      values.insert(values.end(), vec.begin(), vec.end());
    }
  }
  return EmbeddingSet(dim.value_or(0), std::move(ids), std::move(values));
}

}  // namespace

EmbeddingSet embed(const EmbeddingBackendConfig& config, const Corpus& corpus,
                   std::string_view topic_id) {
  if (corpus.find_topic(topic_id) == nullptr) {
    fail(ErrorKind::input, "unknown topic '" + std::string(topic_id) + "'");
  }
  const auto args = corpus.arguments_of(topic_id);
  if (args.empty()) fail(ErrorKind::input, "topic '" + std::string(topic_id) + "' has no arguments");
  switch (config.kind) {
    case EmbeddingKind::oracle: return embed_oracle(corpus, args, topic_id);
    case EmbeddingKind::lexical: return embed_lexical(config, args);
    case EmbeddingKind::file: return embed_file(config, args);
    case EmbeddingKind::remote: return embed_remote(config, args);
  }
  fail(ErrorKind::internal, "unhandled embedding kind");
}

EmbeddingSet normalize(const EmbeddingSet& set) {
  std::vector<double> values(set.values().begin(), set.values().end());
  for (std::size_t i = 0; i < set.size(); ++i) {
    std::span<double> row(values.data() + i * set.dim(), set.dim());
    double norm = 0.0;
    for (double v : row) norm += v * v;
    if (norm == 0.0) fail(ErrorKind::input, "cannot normalise zero vector of '" + set.ids()[i] + "'");
    l2_normalize_row(row);
  }
  return EmbeddingSet(set.dim(), set.ids(), std::move(values));
}

std::optional<EmbeddingKind> parse_embedding_kind(std::string_view name) {
  if (name == "oracle") return EmbeddingKind::oracle;
  if (name == "lexical") return EmbeddingKind::lexical;
  if (name == "file") return EmbeddingKind::file;
  if (name == "remote") return EmbeddingKind::remote;
  return std::nullopt;
}

std::string_view to_string(EmbeddingKind kind) {
  switch (kind) {
    case EmbeddingKind::oracle: return "oracle";
    case EmbeddingKind::lexical: return "lexical";
    case EmbeddingKind::file: return "file";
    case EmbeddingKind::remote: return "remote";
  }
  return "unknown";
}

}  // namespace kpa
