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

#include "kpa/synthetic.hpp"

#include <array>
#include <cctype>
#include <string_view>

#include "kpa/random.hpp"
#include "kpa/text.hpp"

namespace kpa {

namespace {

constexpr std::array<std::string_view, 96> kWords = {
    "people",   "should",   "children", "health",   "public",   "rights",   "freedom",
    "cost",     "money",    "safety",   "risk",     "parents",  "society",  "government",
    "law",      "choice",   "benefit",  "harm",     "education", "economy", "jobs",
    "workers",  "future",   "families", "community", "protect", "allow",    "ban",
    "reduce",   "increase", "support",  "prevent",  "because",  "many",     "most",
    "every",    "their",    "would",    "could",    "always",   "never",    "often",
    "important", "dangerous", "necessary", "unfair", "effective", "cheap",  "expensive",
    "natural",  "modern",   "social",   "media",    "online",   "school",   "students",
    "teachers", "doctors",  "disease",  "vaccine",  "medicine", "science",  "evidence",
    "data",     "privacy",  "security", "crime",    "police",   "prison",   "justice",
    "religion", "culture",  "tradition", "animals", "nature",   "energy",   "climate",
    "tax",      "market",   "business", "trade",    "country",  "world",    "war",
    "peace",    "vote",     "power",    "control",  "life",     "death",    "time",
    "reason",   "person",   "value",    "help",     "need"};

std::string sentence(Rng& rng, std::size_t length, std::span<const std::string> flavour,
                     double flavour_share) {
  std::string out;
  for (std::size_t w = 0; w < length; ++w) {
    std::string word;
    if (!flavour.empty() && rng.unit() < flavour_share) {
      word = flavour[static_cast<std::size_t>(rng.below(flavour.size()))];
    } else {
      word = std::string(kWords[static_cast<std::size_t>(rng.below(kWords.size()))]);
    }
    if (w == 0) word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
    if (!out.empty()) out.push_back(' ');
    out += word;
  }
  out.push_back('.');
  return out;
}

}  // namespace

Corpus make_synthetic_corpus(std::span<const SyntheticTopic> topics, std::uint64_t seed) {
  std::vector<Topic> out_topics;
  std::vector<Argument> arguments;
  std::vector<KeyPoint> key_points;
  std::vector<GoldLabel> labels;
  Rng rng(splitmix64(seed));
  for (std::size_t t = 0; t < topics.size(); ++t) {
    const SyntheticTopic& spec = topics[t];
    const std::string topic_id = topic_id_for(spec.text);
    out_topics.push_back(Topic{topic_id, spec.text});
    const std::string prefix = "t" + std::to_string(t) + "_";
    std::size_t arg_counter = 0;
    for (std::size_t k = 0; k < spec.kp_sizes.size(); ++k) {
      const std::string kp_id = prefix + "kp_" + std::to_string(k);
      const std::string kp_text = sentence(rng, 4 + rng.below(5), {}, 0.0);
      key_points.push_back(KeyPoint{kp_id, topic_id, kp_text, std::nullopt, false});
      const std::vector<std::string> flavour = alnum_tokens(kp_text);
      for (std::size_t a = 0; a < spec.kp_sizes[k]; ++a) {
        const std::string id = prefix + "arg_" + std::to_string(arg_counter++);
        arguments.push_back(Argument{id, topic_id, sentence(rng, 6 + rng.below(19), flavour, 0.1),
                                     std::nullopt, std::nullopt, std::nullopt});
        labels.push_back(GoldLabel{id, kp_id, 1});
      }
    }
    for (std::size_t a = 0; a < spec.unlabeled; ++a) {
      const std::string id = prefix + "arg_" + std::to_string(arg_counter++);
      arguments.push_back(Argument{id, topic_id, sentence(rng, 6 + rng.below(19), {}, 0.0),
                                   std::nullopt, std::nullopt, std::nullopt});
    }
  }
  return Corpus(std::move(out_topics), std::move(arguments), std::move(key_points),
                std::move(labels));
}

}  // namespace kpa
