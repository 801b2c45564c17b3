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

#include "kpa/evaluation.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "kpa/error.hpp"
#include "kpa/porter.hpp"
#include "kpa/text.hpp"

namespace kpa {

CoverageResult coverage_predicted(const GeneratedSummary& summary,
                                  std::span<const KeyPoint* const> references,
                                  const Matcher& matcher) {
  if (references.empty()) fail(ErrorKind::input, "coverage_predicted: no reference key points");
  std::vector<MatchQuery> queries;
  queries.reserve(summary.entries.size() * references.size());
  for (const SummaryEntry& e : summary.entries) {
    for (const KeyPoint* k : references) {
      queries.push_back(MatchQuery{e.text, k->text, e.argument_id, k->id, SlotKind::key_point});
    }
  }
  const std::vector<MatchScore> scores = matcher.match_batch(queries);

  CoverageResult out;
  std::set<std::string> covered;
  for (std::size_t i = 0; i < summary.entries.size(); ++i) {
    CoverageAssignment a{i, std::nullopt, 0.0};
    for (std::size_t r = 0; r < references.size(); ++r) {
      const MatchScore& s = scores[i * references.size() + r];
      if (!s.is_match) continue;
      const std::string& id = references[r]->id;
      if (!a.key_point_id || s.score > a.score || (s.score == a.score && id < *a.key_point_id)) {
        a.key_point_id = id;
        a.score = s.score;
      }
    }
    if (a.key_point_id) covered.insert(*a.key_point_id);
    out.assignments.push_back(std::move(a));
  }
  out.covered_key_point_ids.assign(covered.begin(), covered.end());
  out.coverage = static_cast<double>(covered.size()) / static_cast<double>(references.size());
  return out;
}

namespace {

const std::vector<std::string>& entry_labels(const SummaryEntry& e, const Corpus& corpus) {
  if (corpus.find_argument(e.argument_id) == nullptr) {
    fail(ErrorKind::integrity, "summary entry '" + e.argument_id + "' is not in the corpus");
  }
  const auto& kps = corpus.positive_key_points(e.argument_id);
  if (kps.empty()) {
    fail(ErrorKind::integrity, "summary entry '" + e.argument_id + "' has no gold key point");
  }
  return kps;
}

}  // namespace

double coverage_actual(const GeneratedSummary& summary, const Corpus& corpus) {
  const auto kps = corpus.key_points_of(summary.topic_id);
  if (kps.empty()) {
    fail(ErrorKind::input, "coverage_actual: topic '" + summary.topic_id + "' has no key points");
  }
  std::set<std::string> covered;
  for (const SummaryEntry& e : summary.entries) {
    for (const std::string& kp : entry_labels(e, corpus)) covered.insert(kp);
  }
  std::size_t hits = 0;
  for (const KeyPoint* k : kps) hits += covered.count(k->id);
  return static_cast<double>(hits) / static_cast<double>(kps.size());
}

double redundancy_actual(const GeneratedSummary& summary, const Corpus& corpus) {
  const std::size_t n = summary.entries.size();
  std::vector<const std::vector<std::string>*> labels;
  for (const SummaryEntry& e : summary.entries) labels.push_back(&entry_labels(e, corpus));
  if (n < 2) return 0.0;
  std::size_t duplicates = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& a = *labels[i];
      const auto& b = *labels[j];
      const bool shared = std::find_first_of(a.begin(), a.end(), b.begin(), b.end()) != a.end();
      duplicates += shared ? 1 : 0;
    }
  }
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return static_cast<double>(duplicates) / pairs;
}

double avg_words(const GeneratedSummary& summary) {
  if (summary.entries.empty()) fail(ErrorKind::input, "avg_words: empty summary");
  double total = 0.0;
  for (const SummaryEntry& e : summary.entries) total += static_cast<double>(word_count(e.text));
  return total / static_cast<double>(summary.entries.size());
}

std::vector<std::string> rouge_tokens(std::string_view text, const RougeOptions& options) {
  std::vector<std::string> tokens = alnum_tokens(text);
  if (options.stem) {
    for (std::string& t : tokens) {
      if (t.size() > 3) t = porter_stem(t);
    }
  }
  return tokens;
}

namespace {

double f_measure(double overlap, double candidate_total, double reference_total) {
  if (overlap == 0.0 || candidate_total == 0.0 || reference_total == 0.0) return 0.0;
  const double p = overlap / candidate_total;
  const double r = overlap / reference_total;
  return 2.0 * p * r / (p + r);
}

double ngram_f(const std::vector<std::string>& cand, const std::vector<std::string>& ref,
               std::size_t n) {
  auto grams = [n](const std::vector<std::string>& t) {
    std::map<std::vector<std::string>, std::size_t> out;
    for (std::size_t i = 0; i + n <= t.size(); ++i) {
      ++out[std::vector<std::string>(t.begin() + static_cast<std::ptrdiff_t>(i),
                                     t.begin() + static_cast<std::ptrdiff_t>(i + n))];
    }
    return out;
  };
  const auto c = grams(cand);
  const auto r = grams(ref);
  std::size_t overlap = 0;
  std::size_t c_total = 0;
  std::size_t r_total = 0;
  for (const auto& [g, k] : c) {
    c_total += k;
    const auto it = r.find(g);
    if (it != r.end()) overlap += std::min(k, it->second);
  }
  for (const auto& [g, k] : r) r_total += k;
  return f_measure(static_cast<double>(overlap), static_cast<double>(c_total),
                   static_cast<double>(r_total));
}

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

RougeScores rouge(std::string_view candidate, std::string_view reference,
                  const RougeOptions& options) {
  const auto cand = rouge_tokens(candidate, options);
  const auto ref = rouge_tokens(reference, options);
  RougeScores out;
  if (cand.empty() || ref.empty()) {
    out.degenerate = true;
    return out;
  }
  out.rouge1 = ngram_f(cand, ref, 1);
  out.rouge2 = ngram_f(cand, ref, 2);
  out.rougeL = f_measure(static_cast<double>(lcs_length(cand, ref)),
                         static_cast<double>(cand.size()), static_cast<double>(ref.size()));
  return out;
}

RougeScores summary_rouge(const GeneratedSummary& summary,
                          std::span<const KeyPoint* const> references,
                          const RougeOptions& options) {
  std::string candidate;
  for (const SummaryEntry& e : summary.entries) {
    if (!candidate.empty()) candidate.push_back('\n');
    candidate += e.text;
  }
  std::string reference;
  for (const KeyPoint* k : references) {
    if (!reference.empty()) reference.push_back('\n');
    reference += k->text;
  }
  return rouge(candidate, reference, options);
}

EvaluationReport evaluate(const GeneratedSummary& summary, const Corpus& corpus,
                          std::span<const EvalMode> modes, const Matcher* matcher,
                          const RougeOptions& rouge_options) {
  if (corpus.find_topic(summary.topic_id) == nullptr) {
    fail(ErrorKind::input, "summary topic '" + summary.topic_id + "' is not in the corpus");
  }
  const auto references = corpus.key_points_of(summary.topic_id);
  EvaluationReport report;
  report.topic_id = summary.topic_id;
  report.n_entries = summary.entries.size();
  if (!summary.entries.empty()) report.avg_words = avg_words(summary);
  for (EvalMode mode : modes) {
    switch (mode) {
      case EvalMode::predicted:
        if (matcher == nullptr) fail(ErrorKind::usage, "predicted coverage needs a matcher");
        report.predicted_coverage = coverage_predicted(summary, references, *matcher);
        break;
      case EvalMode::actual:
        report.actual_coverage = coverage_actual(summary, corpus);
        report.redundancy = redundancy_actual(summary, corpus);
        break;
      case EvalMode::rouge:
        report.rouge = summary_rouge(summary, references, rouge_options);
        break;
    }
  }
  return report;
}

nlohmann::json report_to_json(const EvaluationReport& report) {
  nlohmann::json doc;
  doc["topic_id"] = report.topic_id;
  doc["n_entries"] = report.n_entries;
  doc["avg_words"] = report.avg_words;
  if (report.predicted_coverage) {
    const CoverageResult& c = *report.predicted_coverage;
    nlohmann::json assignments = nlohmann::json::array();
    for (const CoverageAssignment& a : c.assignments) {
      nlohmann::json j = {{"entry_index", a.entry_index}, {"score", a.score}};
      j["key_point_id"] = a.key_point_id ? nlohmann::json(*a.key_point_id) : nlohmann::json();
      assignments.push_back(std::move(j));
    }
    doc["predicted_coverage"] = {{"coverage", c.coverage},
                                 {"covered_key_point_ids", c.covered_key_point_ids},
                                 {"assignments", std::move(assignments)}};
  }
  if (report.actual_coverage) doc["actual_coverage"] = *report.actual_coverage;
  if (report.redundancy) doc["redundancy"] = *report.redundancy;
  if (report.rouge) {
    doc["rouge1"] = report.rouge->rouge1;
    doc["rouge2"] = report.rouge->rouge2;
    doc["rougeL"] = report.rouge->rougeL;
    if (report.rouge->degenerate) doc["rouge_degenerate"] = true;
  }
  return doc;
}

}  // namespace kpa
