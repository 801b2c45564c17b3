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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kpa/corpus.hpp"
#include "kpa/matching.hpp"
#include "kpa/selection.hpp"

namespace kpa {

struct CoverageAssignment {
  std::size_t entry_index = 0;
  std::optional<std::string> key_point_id;
  double score = 0.0;
};

struct CoverageResult {
  std::vector<std::string> covered_key_point_ids;  // sorted
  double coverage = 0.0;
  std::vector<CoverageAssignment> assignments;  // one per summary entry
};

/// Pairs every entry (argument slot) with every reference key point and
/// assigns the entry to its highest-scoring matching reference, smallest id
/// on ties. Coverage is the fraction of references assigned to some entry.
CoverageResult coverage_predicted(const GeneratedSummary& summary,
                                  std::span<const KeyPoint* const> references,
                                  const Matcher& matcher);

/// Fraction of the topic's key points (catch-all included) that some entry
/// is gold-labeled to. Entries without a positive label are integrity errors.
double coverage_actual(const GeneratedSummary& summary, const Corpus& corpus);

/// Entry pairs sharing a gold key point over C(n, 2); 0 for n < 2.
double redundancy_actual(const GeneratedSummary& summary, const Corpus& corpus);

double avg_words(const GeneratedSummary& summary);

struct RougeOptions {
  bool stem = false;
};

struct RougeScores {
  double rouge1 = 0.0;
  double rouge2 = 0.0;
  double rougeL = 0.0;
  bool degenerate = false;  // one side tokenised to nothing
};

/// F-measures of unigram and bigram overlap (clipped counts) and of the
/// longest common subsequence.
RougeScores rouge(std::string_view candidate, std::string_view reference,
                  const RougeOptions& options = {});

/// Entries joined by newlines against references joined by newlines.
RougeScores summary_rouge(const GeneratedSummary& summary,
                          std::span<const KeyPoint* const> references,
                          const RougeOptions& options = {});

std::vector<std::string> rouge_tokens(std::string_view text, const RougeOptions& options);

enum class EvalMode { predicted, actual, rouge };

struct EvaluationReport {
  std::string topic_id;
  std::size_t n_entries = 0;
  std::optional<CoverageResult> predicted_coverage;
  std::optional<double> actual_coverage;
  std::optional<double> redundancy;
  double avg_words = 0.0;
  std::optional<RougeScores> rouge;
};

/// References default to the topic's key points in `corpus`.
EvaluationReport evaluate(const GeneratedSummary& summary, const Corpus& corpus,
                          std::span<const EvalMode> modes, const Matcher* matcher,
                          const RougeOptions& rouge_options = {});

nlohmann::json report_to_json(const EvaluationReport& report);

}  // namespace kpa
