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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace kpa {

inline constexpr std::string_view kCatchAllText = "No matching key point";
inline constexpr std::string_view kCatchAllSuffix = "__none";

struct Topic {
  std::string id;
  std::string text;

  bool operator==(const Topic&) const = default;
};

struct Argument {
  std::string id;
  std::string topic_id;
  std::string text;
  std::optional<int> stance;
  // Set on arguments derived by split_sentences.
  std::optional<std::string> parent_id;
  std::optional<int> sentence_index;

  bool operator==(const Argument&) const = default;
};

struct KeyPoint {
  std::string id;
  std::string topic_id;
  std::string text;
  std::optional<int> stance;
  bool is_catch_all = false;

  bool operator==(const KeyPoint&) const = default;
};

struct GoldLabel {
  std::string argument_id;
  std::string key_point_id;
  int label = 0;

  bool operator==(const GoldLabel&) const = default;
};

/// Validated, immutable argument collection. Construction checks every
/// invariant (unique ids, referential integrity, catch-all shape) and throws
/// kpa::Error on violation. Safe to share between threads once built.
class Corpus {
 public:
  Corpus() = default;
  Corpus(std::vector<Topic> topics, std::vector<Argument> arguments,
         std::vector<KeyPoint> key_points, std::vector<GoldLabel> labels);

  const std::vector<Topic>& topics() const { return topics_; }
  const std::vector<Argument>& arguments() const { return arguments_; }
  const std::vector<KeyPoint>& key_points() const { return key_points_; }
  const std::vector<GoldLabel>& labels() const { return labels_; }

  const Topic* find_topic(std::string_view id) const;
  const Argument* find_argument(std::string_view id) const;
  const KeyPoint* find_key_point(std::string_view id) const;

  /// Arguments / key points of one topic, in load order.
  std::vector<const Argument*> arguments_of(std::string_view topic_id) const;
  std::vector<const KeyPoint*> key_points_of(std::string_view topic_id) const;

  /// Key point ids with a positive label for the argument, sorted.
  const std::vector<std::string>& positive_key_points(std::string_view argument_id) const;

  /// Gold label of the pair; pairs absent from the label table are 0.
  int label(std::string_view argument_id, std::string_view key_point_id) const;

  bool operator==(const Corpus& other) const;

 private:
  void build_indexes();

  std::vector<Topic> topics_;
  std::vector<Argument> arguments_;
  std::vector<KeyPoint> key_points_;
  std::vector<GoldLabel> labels_;

  std::unordered_map<std::string, std::size_t> topic_index_;
  std::unordered_map<std::string, std::size_t> argument_index_;
  std::unordered_map<std::string, std::size_t> key_point_index_;
  std::unordered_map<std::string, int> label_index_;
  std::unordered_map<std::string, std::vector<std::string>> positives_;
};

/// Topic id derived from topic text; stable under row order and slicing.
std::string topic_id_for(std::string_view topic_text);

Corpus load_argkp(const std::filesystem::path& arguments_file,
                  const std::filesystem::path& key_points_file,
                  const std::filesystem::path& labels_file);
Corpus load_debate(const std::filesystem::path& file);
Corpus load_corpus_json(const std::filesystem::path& file);

/// Writes arguments.csv, key_points.csv and labels.csv into `dir`.
/// Catch-all key points and their labels are not written.
void write_argkp(const Corpus& corpus, const std::filesystem::path& dir);

nlohmann::json corpus_to_json(const Corpus& corpus);
Corpus corpus_from_json(const nlohmann::json& doc);

/// Adds one catch-all key point per topic that has unlabeled arguments and
/// labels each such argument to it. Idempotent.
Corpus attach_catch_all(const Corpus& corpus);

/// Sentence boundaries per the splitter rules: '.', '!' or '?' (runs
/// included) followed by whitespace and an uppercase letter, or by end of
/// text.
std::vector<std::string> split_into_sentences(std::string_view text);

/// Replaces every multi-sentence argument by one argument per sentence with
/// id "<parent>#<index>"; labels are copied from the parent.
Corpus split_sentences(const Corpus& corpus);

std::string derived_argument_id(std::string_view parent_id, int sentence_index);

}  // namespace kpa
