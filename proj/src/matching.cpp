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

#include "kpa/matching.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <set>

#include "kpa/error.hpp"
#include "kpa/io.hpp"
#include "kpa/text.hpp"

namespace kpa {

namespace {

std::string cache_key(SlotKind slot, std::string_view a, std::string_view b) {
  std::string key(1, slot == SlotKind::key_point ? 'k' : 'a');
  key.append(a);
  key.push_back('\x1f');
  key.append(b);
  return key;
}

std::string describe(const MatchQuery& q) {
  return "('" + std::string(q.argument_id.value_or("?")) + "', '" +
         std::string(q.key_point_id.value_or("?")) + "')";
}

class OracleBackend final : public MatchBackend {
 public:
  explicit OracleBackend(const Corpus* gold) : gold_(gold) {
    if (gold_ == nullptr) fail(ErrorKind::usage, "oracle matcher requires a labeled corpus");
  }

  std::vector<double> score(std::span<const MatchQuery> queries) const override {
    std::vector<double> out;
    out.reserve(queries.size());
    for (const MatchQuery& q : queries) {
      if (!q.argument_id || !q.key_point_id) {
        fail(ErrorKind::usage, "oracle matcher needs argument and key point ids");
      }
      if (gold_->find_argument(*q.argument_id) == nullptr) {
        fail(ErrorKind::lookup, "oracle matcher: unknown argument '" +
                                    std::string(*q.argument_id) + "'");
      }
      if (q.slot == SlotKind::key_point) {
        out.push_back(gold_->label(*q.argument_id, *q.key_point_id) == 1 ? 1.0 : 0.0);
        continue;
      }
      if (gold_->find_argument(*q.key_point_id) == nullptr) {
        fail(ErrorKind::lookup, "oracle matcher: unknown argument '" +
                                    std::string(*q.key_point_id) + "'");
      }
      // Two arguments match iff they share a gold key point.
      const auto& a = gold_->positive_key_points(*q.argument_id);
      const auto& b = gold_->positive_key_points(*q.key_point_id);
      bool shared = false;
      for (auto i = a.begin(), j = b.begin(); i != a.end() && j != b.end();) {
        if (*i == *j) {
          shared = true;
          break;
        }
        if (*i < *j) ++i; else ++j;
      }
      out.push_back(shared ? 1.0 : 0.0);
    }
    return out;
  }

 private:
  const Corpus* gold_;
};

class LexicalBackend final : public MatchBackend {
 public:
  std::vector<double> score(std::span<const MatchQuery> queries) const override {
    std::vector<double> out;
    out.reserve(queries.size());
    for (const MatchQuery& q : queries) out.push_back(jaccard(q.argument_text, q.key_point_text));
    return out;
  }
};

class FileBackend final : public MatchBackend {
 public:
  explicit FileBackend(const std::filesystem::path& file) {
    std::size_t line = 0;
    for (const auto& record : read_jsonl(file)) {
      ++line;
      std::string a;
      std::string b;
      double s = 0.0;
      try {
        a = record.at("a").get<std::string>();
        b = record.at("b").get<std::string>();
        s = record.at("score").get<double>();
      } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::parse, file.string() + ": record " + std::to_string(line) + ": " + e.what());
      }
      if (!(s >= 0.0 && s <= 1.0)) {
        fail(ErrorKind::format, file.string() + ": score for ('" + a + "', '" + b +
                                    "') outside [0, 1]");
      }
      if (!scores_.emplace(a + '\x1f' + b, s).second) {
        fail(ErrorKind::format, file.string() + ": duplicate pair ('" + a + "', '" + b + "')");
      }
    }
  }

  std::vector<double> score(std::span<const MatchQuery> queries) const override {
    std::vector<double> out;
    out.reserve(queries.size());
    for (const MatchQuery& q : queries) {
      if (!q.argument_id || !q.key_point_id) {
        fail(ErrorKind::usage, "file matcher needs argument and key point ids");
      }
      std::string key(*q.argument_id);
      key.push_back('\x1f');
      key.append(*q.key_point_id);
      const auto it = scores_.find(key);
      if (it == scores_.end()) fail(ErrorKind::lookup, "match file has no score for " + describe(q));
      out.push_back(it->second);
    }
    return out;
  }

 private:
  std::unordered_map<std::string, double> scores_;
};

class RemoteBackend final : public MatchBackend {
 public:
  explicit RemoteBackend(RemoteConfig config) : config_(std::move(config)) {}

  std::vector<double> score(std::span<const MatchQuery> queries) const override {
    const std::size_t batch = std::max<std::size_t>(1, config_.batch_size);
    std::vector<double> out(queries.size());
    const std::size_t n_batches = (queries.size() + batch - 1) / batch;
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(n_batches); ++b) {
      try {
        const std::size_t begin = static_cast<std::size_t>(b) * batch;
        const std::size_t end = std::min(queries.size(), begin + batch);
        nlohmann::json body;
        body["pairs"] = nlohmann::json::array();
        for (std::size_t i = begin; i < end; ++i) {
          body["pairs"].push_back({{"argument", queries[i].argument_text},
                                   {"key_point", queries[i].key_point_text}});
        }
        const nlohmann::json response = post_json(config_, "/v1/match", body);
        const auto scores = response.at("scores").get<std::vector<double>>();
        if (scores.size() != end - begin) {
          fail(ErrorKind::transport, "/v1/match returned " + std::to_string(scores.size()) +
                                         " scores for " + std::to_string(end - begin) + " pairs");
        }
        for (std::size_t i = begin; i < end; ++i) {
          const double s = scores[i - begin];
          if (!(s >= 0.0 && s <= 1.0)) fail(ErrorKind::transport, "/v1/match score outside [0, 1]");
          out[i] = s;
        }
      } catch (const nlohmann::json::exception& e) {
#pragma omp critical(kpa_remote_match_error)
        if (!error) error = std::make_exception_ptr(
                        Error(ErrorKind::transport, std::string("/v1/match: ") + e.what()));
      } catch (...) {
#pragma omp critical(kpa_remote_match_error)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    return out;
  }

 private:
  RemoteConfig config_;
};

}  // namespace

double jaccard(std::string_view a, std::string_view b) {
  const auto ta = alnum_tokens(a);
  const auto tb = alnum_tokens(b);
  const std::set<std::string> sa(ta.begin(), ta.end());
  const std::set<std::string> sb(tb.begin(), tb.end());
  if (sa.empty() && sb.empty()) return 0.0;
  std::size_t common = 0;
  for (const auto& t : sa) common += sb.count(t);
  return static_cast<double>(common) / static_cast<double>(sa.size() + sb.size() - common);
}

std::unique_ptr<MatchBackend> make_match_backend(const MatcherConfig& config, const Corpus* gold) {
  switch (config.kind) {
    case MatchKind::oracle: return std::make_unique<OracleBackend>(gold);
    case MatchKind::lexical: return std::make_unique<LexicalBackend>();
    case MatchKind::file: return std::make_unique<FileBackend>(config.file);
    case MatchKind::remote: return std::make_unique<RemoteBackend>(config.remote);
  }
  fail(ErrorKind::internal, "unhandled matcher kind");
}

Matcher::Matcher(MatcherConfig config, const Corpus* gold)
    : Matcher(config, make_match_backend(config, gold)) {}

Matcher::Matcher(MatcherConfig config, std::unique_ptr<MatchBackend> backend)
    : config_(std::move(config)), backend_(std::move(backend)) {
  if (!(config_.decision_threshold > 0.0 && config_.decision_threshold < 1.0)) {
    fail(ErrorKind::usage, "decision threshold must lie in (0, 1)");
  }
}

MatchScore Matcher::match(const MatchQuery& query) const {
  return match_batch(std::span<const MatchQuery>(&query, 1)).front();
}

std::vector<MatchScore> Matcher::match_batch(std::span<const MatchQuery> queries) const {
  std::vector<double> scores(queries.size(), 0.0);
  std::vector<std::size_t> pending;
  std::vector<std::string> pending_keys;
  {
    std::shared_lock lock(cache_mutex_);
    for (std::size_t i = 0; i < queries.size(); ++i) {
      const MatchQuery& q = queries[i];
      if (trim(q.argument_text).empty() || trim(q.key_point_text).empty()) {
        fail(ErrorKind::input, "match: empty text in pair " + describe(q));
      }
      if (q.argument_id && q.key_point_id) {
        std::string key = cache_key(q.slot, *q.argument_id, *q.key_point_id);
        const auto it = cache_.find(key);
        if (it != cache_.end()) {
          scores[i] = it->second;
          continue;
        }
        pending_keys.push_back(std::move(key));
      } else {
        pending_keys.emplace_back();
      }
      pending.push_back(i);
    }
  }
  if (!pending.empty()) {
    std::vector<MatchQuery> batch;
    batch.reserve(pending.size());
    for (std::size_t i : pending) batch.push_back(queries[i]);
    const std::vector<double> fresh = backend_->score(batch);
    if (fresh.size() != batch.size()) fail(ErrorKind::internal, "backend returned wrong count");
    backend_queries_ += batch.size();
    std::unique_lock lock(cache_mutex_);
    for (std::size_t k = 0; k < pending.size(); ++k) {
      scores[pending[k]] = fresh[k];
      if (!pending_keys[k].empty()) cache_.try_emplace(pending_keys[k], fresh[k]);
    }
  }
  std::vector<MatchScore> out;
  out.reserve(scores.size());
  for (double s : scores) out.push_back(MatchScore{s, s >= config_.decision_threshold});
  return out;
}

MatchQuery Matcher::pair_query(const Argument& member, const Argument& candidate) const {
  const Argument& first = config_.swap_slots ? candidate : member;
  const Argument& second = config_.swap_slots ? member : candidate;
  return MatchQuery{first.text, second.text, first.id, second.id, SlotKind::argument};
}

std::size_t Matcher::match_count(std::span<const Argument* const> remainder,
                                 const Argument& candidate) const {
  std::vector<MatchQuery> queries;
  queries.reserve(remainder.size());
  for (const Argument* m : remainder) queries.push_back(pair_query(*m, candidate));
  std::size_t count = 0;
  for (const MatchScore& s : match_batch(queries)) count += s.is_match ? 1 : 0;
  return count;
}

void Matcher::prefetch_cluster(std::span<const Argument* const> members) const {
  std::vector<MatchQuery> queries;
  for (const Argument* candidate : members) {
    for (const Argument* m : members) {
      if (m != candidate) queries.push_back(pair_query(*m, *candidate));
    }
  }
  if (!queries.empty()) match_batch(queries);
}

std::optional<MatchKind> parse_match_kind(std::string_view name) {
  if (name == "oracle") return MatchKind::oracle;
  if (name == "lexical") return MatchKind::lexical;
  if (name == "file") return MatchKind::file;
  if (name == "remote") return MatchKind::remote;
  return std::nullopt;
}

std::string_view to_string(MatchKind kind) {
  switch (kind) {
    case MatchKind::oracle: return "oracle";
    case MatchKind::lexical: return "lexical";
    case MatchKind::file: return "file";
    case MatchKind::remote: return "remote";
  }
  return "unknown";
}

}  // namespace kpa
