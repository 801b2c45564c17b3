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

#include "kpa/coverage_datasets.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <set>

#include "kpa/error.hpp"
#include "kpa/random.hpp"

namespace kpa {

std::size_t selected_key_point_count(double level, std::size_t n_key_points) {
  const double raw = std::floor(level * static_cast<double>(n_key_points) + 0.5);
  return std::max<std::size_t>(1, static_cast<std::size_t>(raw));
}

namespace {

std::string cell(const CoverageSampleSpec& spec) {
  return "topic '" + spec.topic_id + "', level " + std::to_string(spec.level);
}

// Partial Fisher-Yates: the first k entries become a uniform k-subset.
template <typename T>
void shuffle_prefix(std::vector<T>& items, std::size_t k, Rng& rng) {
  for (std::size_t i = 0; i < k && i < items.size(); ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(items.size() - i));
    std::swap(items[i], items[j]);
  }
}

}  // namespace

PseudoSummary sample_pseudo_summary(const Corpus& corpus, const CoverageSampleSpec& spec,
                                    std::size_t sample_index) {
  if (corpus.find_topic(spec.topic_id) == nullptr) {
    fail(ErrorKind::input, "unknown topic '" + spec.topic_id + "'");
  }
  if (!(spec.level > 0.0 && spec.level <= 1.0)) {
    fail(ErrorKind::input, "coverage level must lie in (0, 1]");
  }
  if (spec.size == 0) fail(ErrorKind::input, "pseudo-summary size must be positive");

  std::vector<std::string> candidates;
  for (const KeyPoint* k : corpus.key_points_of(spec.topic_id)) {
    if (!k->is_catch_all) candidates.push_back(k->id);
  }
  std::sort(candidates.begin(), candidates.end());
  if (spec.level * static_cast<double>(candidates.size()) < 1.0) {
    fail(ErrorKind::capacity, cell(spec) + ": level x key points (" +
                                  std::to_string(candidates.size()) + ") is below 1");
  }
  const std::size_t k = selected_key_point_count(spec.level, candidates.size());
  if (spec.size < k) {
    fail(ErrorKind::capacity, cell(spec) + ": size " + std::to_string(spec.size) +
                                  " cannot represent " + std::to_string(k) + " key points");
  }

  Rng rng(stream_seed(spec.seed, spec.topic_id, spec.level, sample_index));
  shuffle_prefix(candidates, k, rng);
  std::vector<std::string> selected(candidates.begin(),
                                    candidates.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(selected.begin(), selected.end());
  const std::set<std::string> selected_set(selected.begin(), selected.end());

  std::vector<std::string> pool;
  for (const Argument* a : corpus.arguments_of(spec.topic_id)) {
    bool has_selected = false;
    bool leaks = false;
    for (const std::string& kp : corpus.positive_key_points(a->id)) {
      if (corpus.find_key_point(kp)->is_catch_all) continue;
      if (selected_set.contains(kp)) has_selected = true; else leaks = true;
    }
    if (has_selected && !leaks) pool.push_back(a->id);
  }
  std::sort(pool.begin(), pool.end());
  if (pool.size() < spec.size) {
    fail(ErrorKind::capacity, cell(spec) + ": required " + std::to_string(spec.size) +
                                  " arguments, available " + std::to_string(pool.size()));
  }

  PseudoSummary out{spec, sample_index, selected, {}};
  std::set<std::string> drawn;
  std::set<std::string> represented;
  for (const std::string& kp : selected) {
    if (represented.contains(kp)) continue;
    std::vector<std::string> options;
    for (const std::string& id : pool) {
      if (!drawn.contains(id) && corpus.label(id, kp) == 1) options.push_back(id);
    }
    if (options.empty()) {
      fail(ErrorKind::capacity, cell(spec) + ": key point '" + kp + "' has no eligible argument");
    }
    const std::string& pick = options[static_cast<std::size_t>(rng.below(options.size()))];
    drawn.insert(pick);
    out.argument_ids.push_back(pick);
    for (const std::string& covered : corpus.positive_key_points(pick)) represented.insert(covered);
  }
  std::vector<std::string> rest;
  for (const std::string& id : pool) {
    if (!drawn.contains(id)) rest.push_back(id);
  }
  const std::size_t remaining = spec.size - out.argument_ids.size();
  shuffle_prefix(rest, remaining, rng);
  out.argument_ids.insert(out.argument_ids.end(), rest.begin(),
                          rest.begin() + static_cast<std::ptrdiff_t>(remaining));
  return out;
}

std::vector<PseudoSummary> generate_suite(const Corpus& corpus, const SuiteConfig& config) {
  if (config.levels.empty()) fail(ErrorKind::input, "no coverage levels requested");
  if (config.n_samples == 0) fail(ErrorKind::input, "n_samples must be positive");
  std::vector<CoverageSampleSpec> specs;
  for (const Topic& t : corpus.topics()) {
    for (double level : config.levels) {
      specs.push_back(CoverageSampleSpec{t.id, level, config.size, config.n_samples, config.seed});
    }
  }
  std::vector<PseudoSummary> out(specs.size() * config.n_samples);
  std::exception_ptr error;
  const auto total = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t t = 0; t < total; ++t) {
    const auto task = static_cast<std::size_t>(t);
    try {
      out[task] = sample_pseudo_summary(corpus, specs[task / config.n_samples],
                                        task % config.n_samples);
    } catch (...) {
#pragma omp critical(kpa_suite_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

GeneratedSummary to_summary(const PseudoSummary& pseudo, const Corpus& corpus) {
  GeneratedSummary out;
  out.topic_id = pseudo.spec.topic_id;
  for (std::size_t i = 0; i < pseudo.argument_ids.size(); ++i) {
    const Argument* a = corpus.find_argument(pseudo.argument_ids[i]);
    if (a == nullptr) {
      fail(ErrorKind::integrity, "pseudo-summary argument '" + pseudo.argument_ids[i] +
                                     "' is not in the corpus");
    }
    out.entries.push_back(SummaryEntry{a->id, a->text, i, 1, 0.0});
  }
  return out;
}

nlohmann::json pseudo_summary_to_json(const PseudoSummary& pseudo) {
  return nlohmann::json{
      {"spec",
       {{"topic_id", pseudo.spec.topic_id},
        {"level", pseudo.spec.level},
        {"size", pseudo.spec.size},
        {"n_samples", pseudo.spec.n_samples},
        {"seed", pseudo.spec.seed}}},
      {"sample_index", pseudo.sample_index},
      {"selected_key_point_ids", pseudo.selected_key_point_ids},
      {"argument_ids", pseudo.argument_ids}};
}

PseudoSummary pseudo_summary_from_json(const nlohmann::json& doc) {
  try {
    const auto& s = doc.at("spec");
    PseudoSummary out;
    out.spec = CoverageSampleSpec{s.at("topic_id").get<std::string>(), s.at("level").get<double>(),
                                  s.at("size").get<std::size_t>(),
                                  s.at("n_samples").get<std::size_t>(),
                                  s.at("seed").get<std::uint64_t>()};
    out.sample_index = doc.at("sample_index").get<std::size_t>();
    out.selected_key_point_ids = doc.at("selected_key_point_ids").get<std::vector<std::string>>();
    out.argument_ids = doc.at("argument_ids").get<std::vector<std::string>>();
    return out;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse, std::string("pseudo-summary JSON: ") + e.what());
  }
}

}  // namespace kpa
