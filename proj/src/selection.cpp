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

#include "kpa/selection.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "kpa/error.hpp"
#include "kpa/text.hpp"

namespace kpa {

double score_smm(std::size_t match_count) { return static_cast<double>(match_count); }

double score_ssf(std::size_t match_count, std::size_t word_count, double exponent) {
  if (word_count == 0) fail(ErrorKind::input, "score_ssf: word count must be positive");
  if (!(exponent > 0.0) || !std::isfinite(exponent)) {
    fail(ErrorKind::input, "score_ssf: exponent must be a positive number");
  }
  return std::pow(static_cast<double>(match_count), exponent) / static_cast<double>(word_count);
}

namespace {

struct Scored {
  const Argument* argument;
  double score;
  std::size_t words;
};

bool preferred(const Scored& a, const Scored& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.words != b.words) return a.words < b.words;
  if (a.argument->text != b.argument->text) return a.argument->text < b.argument->text;
  return a.argument->id < b.argument->id;
}

SummaryEntry select_one(const std::vector<std::string>& ids, std::size_t index,
                        const Corpus& corpus, const Matcher& matcher,
                        const SelectionConfig& config) {
  if (ids.empty()) fail(ErrorKind::internal, "empty cluster at index " + std::to_string(index));
  std::vector<const Argument*> members;
  members.reserve(ids.size());
  for (const std::string& id : ids) {
    const Argument* a = corpus.find_argument(id);
    if (a == nullptr) fail(ErrorKind::integrity, "cluster member '" + id + "' is not in the corpus");
    members.push_back(a);
  }
  matcher.prefetch_cluster(members);

  std::optional<Scored> best;
  std::vector<const Argument*> remainder;
  remainder.reserve(members.size());
  for (const Argument* candidate : members) {
    remainder.clear();
    for (const Argument* m : members) {
      if (m != candidate) remainder.push_back(m);
    }
    const std::size_t matches = matcher.match_count(remainder, *candidate);
    const std::size_t words = word_count(candidate->text);
    const double score = config.method == SelectionMethod::smm
                             ? score_smm(matches)
                             : score_ssf(matches, words, config.exponent);
    const Scored s{candidate, score, words};
    if (!best || preferred(s, *best)) best = s;
  }
  return SummaryEntry{best->argument->id, best->argument->text, index, ids.size(), best->score};
}

}  // namespace

GeneratedSummary select_representatives(const ClusterAssignment& clusters, const Corpus& corpus,
                                        const Matcher& matcher, const SelectionConfig& config) {
  if (clusters.clusters.empty()) fail(ErrorKind::input, "select_representatives: no clusters");
  if (config.method == SelectionMethod::ssf && !(config.exponent > 0.0)) {
    fail(ErrorKind::usage, "ssf exponent must be positive");
  }
  if (config.max_key_points && *config.max_key_points == 0) {
    fail(ErrorKind::usage, "max_key_points must be positive");
  }
  for (std::size_t c = 1; c < clusters.clusters.size(); ++c) {
    if (clusters.clusters[c].size() > clusters.clusters[c - 1].size()) {
      fail(ErrorKind::internal, "clusters are not sorted by size");
    }
  }

  GeneratedSummary summary;
  summary.method = config.method;
  const auto& first = clusters.clusters.front();
  if (first.empty()) fail(ErrorKind::internal, "empty cluster at index 0");
  const Argument* anchor = corpus.find_argument(first.front());
  if (anchor == nullptr) {
    fail(ErrorKind::integrity, "cluster member '" + first.front() + "' is not in the corpus");
  }
  summary.topic_id = anchor->topic_id;

  const std::size_t n = std::min(clusters.clusters.size(),
                                 config.max_key_points.value_or(clusters.clusters.size()));
  std::vector<SummaryEntry> entries(n);
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(n); ++c) {
    try {
      const auto i = static_cast<std::size_t>(c);
      entries[i] = select_one(clusters.clusters[i], i, corpus, matcher, config);
    } catch (...) {
#pragma omp critical(kpa_selection_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  for (const SummaryEntry& e : entries) {
    if (corpus.find_argument(e.argument_id)->topic_id != summary.topic_id) {
      fail(ErrorKind::integrity, "clusters span more than one topic");
    }
  }
  summary.entries = std::move(entries);
  return summary;
}

nlohmann::json summary_to_json(const GeneratedSummary& summary) {
  nlohmann::json doc;
  doc["topic_id"] = summary.topic_id;
  if (summary.method) doc["method"] = to_string(*summary.method);
  doc["entries"] = nlohmann::json::array();
  for (const SummaryEntry& e : summary.entries) {
    doc["entries"].push_back({{"argument_id", e.argument_id},
                              {"text", e.text},
                              {"cluster_index", e.cluster_index},
                              {"cluster_size", e.cluster_size},
                              {"score", e.score}});
  }
  return doc;
}

GeneratedSummary summary_from_json(const nlohmann::json& doc) {
  GeneratedSummary out;
  try {
    out.topic_id = doc.at("topic_id").get<std::string>();
    if (doc.contains("method")) {
      const auto method = parse_selection_method(doc["method"].get<std::string>());
      if (!method) fail(ErrorKind::parse, "summary: unknown method");
      out.method = method;
    }
    for (const auto& j : doc.at("entries")) {
      SummaryEntry e;
      e.argument_id = j.at("argument_id").get<std::string>();
      e.text = j.at("text").get<std::string>();
      e.cluster_index = j.value("cluster_index", out.entries.size());
      e.cluster_size = j.value("cluster_size", std::size_t{1});
      e.score = j.value("score", 0.0);
      out.entries.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse, std::string("summary JSON: ") + e.what());
  }
  return out;
}

std::optional<SelectionMethod> parse_selection_method(std::string_view name) {
  if (name == "smm") return SelectionMethod::smm;
  if (name == "ssf") return SelectionMethod::ssf;
  return std::nullopt;
}

std::string_view to_string(SelectionMethod method) {
  return method == SelectionMethod::smm ? "smm" : "ssf";
}

}  // namespace kpa
