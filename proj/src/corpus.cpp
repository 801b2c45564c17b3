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

#include "kpa/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "csv.hpp"
#include "kpa/error.hpp"
#include "kpa/io.hpp"
#include "kpa/text.hpp"

namespace kpa {

namespace {

std::string pair_key(std::string_view argument_id, std::string_view key_point_id) {
  std::string key;
  key.reserve(argument_id.size() + key_point_id.size() + 1);
  key.append(argument_id);
  key.push_back('\x1f');
  key.append(key_point_id);
  return key;
}

void check_stance(const std::optional<int>& stance, std::string_view what, std::string_view id) {
  if (stance && *stance != -1 && *stance != 1) {
    fail(ErrorKind::integrity, std::string(what) + " '" + std::string(id) +
                                   "': stance must be -1 or +1, got " + std::to_string(*stance));
  }
}

std::string at_row(const csv::Table& table, const csv::Row& row) {
  return table.source + ":" + std::to_string(row.line);
}

std::optional<int> parse_stance(const csv::Table& table, const csv::Row& row, std::size_t col) {
  const std::string_view raw = trim(row.fields[col]);
  if (raw.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    const double value = std::stod(std::string(raw), &used);
    if (used == raw.size() && (value == 1.0 || value == -1.0)) return static_cast<int>(value);
  } catch (const std::exception&) {
  }
  fail(ErrorKind::parse, at_row(table, row) + ": invalid stance '" + std::string(raw) + "'");
}

int parse_label(const csv::Table& table, const csv::Row& row, std::size_t col) {
  const std::string_view raw = trim(row.fields[col]);
  if (raw == "1" || raw == "1.0") return 1;
  if (raw == "0" || raw == "0.0") return 0;
  fail(ErrorKind::parse, at_row(table, row) + ": invalid label '" + std::string(raw) + "'");
}

std::string required_text(const csv::Table& table, const csv::Row& row, std::size_t col,
                          std::string_view what) {
  std::string value(trim(row.fields[col]));
  if (value.empty()) fail(ErrorKind::parse, at_row(table, row) + ": empty " + std::string(what));
  return value;
}

// Collects topics by first appearance of their text.
class TopicRegistry {
 public:
  const std::string& id_for(const std::string& text) {
    auto it = by_text_.find(text);
    if (it != by_text_.end()) return topics_[it->second].id;
    by_text_.emplace(text, topics_.size());
    topics_.push_back(Topic{topic_id_for(text), text});
    return topics_.back().id;
  }
  std::vector<Topic> take() { return std::move(topics_); }

 private:
  std::map<std::string, std::size_t> by_text_;
  std::vector<Topic> topics_;
};

}  // namespace

std::string topic_id_for(std::string_view topic_text) {
  return "topic-" + hex64(fnv1a64(trim(topic_text))).substr(0, 12);
}

Corpus::Corpus(std::vector<Topic> topics, std::vector<Argument> arguments,
               std::vector<KeyPoint> key_points, std::vector<GoldLabel> labels)
    : topics_(std::move(topics)),
      arguments_(std::move(arguments)),
      key_points_(std::move(key_points)),
      labels_(std::move(labels)) {
  build_indexes();
}

void Corpus::build_indexes() {
  for (std::size_t i = 0; i < topics_.size(); ++i) {
    const Topic& t = topics_[i];
    if (t.id.empty()) fail(ErrorKind::integrity, "topic with empty id");
    if (trim(t.text).empty()) fail(ErrorKind::integrity, "topic '" + t.id + "' has empty text");
    if (!topic_index_.emplace(t.id, i).second) {
      fail(ErrorKind::integrity, "duplicate topic id '" + t.id + "'");
    }
  }
  for (std::size_t i = 0; i < arguments_.size(); ++i) {
    const Argument& a = arguments_[i];
    if (a.id.empty()) fail(ErrorKind::integrity, "argument with empty id");
    if (!argument_index_.emplace(a.id, i).second) {
      fail(ErrorKind::integrity, "duplicate argument id '" + a.id + "'");
    }
    if (!topic_index_.contains(a.topic_id)) {
      fail(ErrorKind::integrity,
           "argument '" + a.id + "' refers to unknown topic '" + a.topic_id + "'");
    }
    if (trim(a.text).empty()) fail(ErrorKind::integrity, "argument '" + a.id + "' has empty text");
    check_stance(a.stance, "argument", a.id);
  }
  std::set<std::string> catch_all_topics;
  for (std::size_t i = 0; i < key_points_.size(); ++i) {
    const KeyPoint& k = key_points_[i];
    if (k.id.empty()) fail(ErrorKind::integrity, "key point with empty id");
    if (!key_point_index_.emplace(k.id, i).second) {
      fail(ErrorKind::integrity, "duplicate key point id '" + k.id + "'");
    }
    if (!topic_index_.contains(k.topic_id)) {
      fail(ErrorKind::integrity,
           "key point '" + k.id + "' refers to unknown topic '" + k.topic_id + "'");
    }
    if (trim(k.text).empty()) fail(ErrorKind::integrity, "key point '" + k.id + "' has empty text");
    check_stance(k.stance, "key point", k.id);
    if (k.is_catch_all) {
      if (k.text != kCatchAllText || k.id != k.topic_id + std::string(kCatchAllSuffix)) {
        fail(ErrorKind::integrity, "malformed catch-all key point '" + k.id + "'");
      }
      if (!catch_all_topics.insert(k.topic_id).second) {
        fail(ErrorKind::integrity, "topic '" + k.topic_id + "' has more than one catch-all");
      }
    }
  }
  for (const GoldLabel& l : labels_) {
    const auto a = argument_index_.find(l.argument_id);
    if (a == argument_index_.end()) {
      fail(ErrorKind::integrity, "label refers to unknown argument '" + l.argument_id + "'");
    }
    const auto k = key_point_index_.find(l.key_point_id);
    if (k == key_point_index_.end()) {
      fail(ErrorKind::integrity, "label refers to unknown key point '" + l.key_point_id + "'");
    }
    if (l.label != 0 && l.label != 1) {
      fail(ErrorKind::integrity, "label for ('" + l.argument_id + "', '" + l.key_point_id +
                                     "') must be 0 or 1");
    }
    if (arguments_[a->second].topic_id != key_points_[k->second].topic_id) {
      fail(ErrorKind::integrity, "label pairs argument '" + l.argument_id +
                                     "' with key point '" + l.key_point_id +
                                     "' from a different topic");
    }
    if (!label_index_.emplace(pair_key(l.argument_id, l.key_point_id), l.label).second) {
      fail(ErrorKind::integrity, "duplicate label for ('" + l.argument_id + "', '" +
                                     l.key_point_id + "')");
    }
    if (l.label == 1) positives_[l.argument_id].push_back(l.key_point_id);
  }
  for (auto& [id, kps] : positives_) std::sort(kps.begin(), kps.end());
}

const Topic* Corpus::find_topic(std::string_view id) const {
  const auto it = topic_index_.find(std::string(id));
  return it == topic_index_.end() ? nullptr : &topics_[it->second];
}

const Argument* Corpus::find_argument(std::string_view id) const {
  const auto it = argument_index_.find(std::string(id));
  return it == argument_index_.end() ? nullptr : &arguments_[it->second];
}

const KeyPoint* Corpus::find_key_point(std::string_view id) const {
  const auto it = key_point_index_.find(std::string(id));
  return it == key_point_index_.end() ? nullptr : &key_points_[it->second];
}

std::vector<const Argument*> Corpus::arguments_of(std::string_view topic_id) const {
  std::vector<const Argument*> out;
  for (const Argument& a : arguments_) {
    if (a.topic_id == topic_id) out.push_back(&a);
  }
  return out;
}

std::vector<const KeyPoint*> Corpus::key_points_of(std::string_view topic_id) const {
  std::vector<const KeyPoint*> out;
  for (const KeyPoint& k : key_points_) {
    if (k.topic_id == topic_id) out.push_back(&k);
  }
  return out;
}

const std::vector<std::string>& Corpus::positive_key_points(std::string_view argument_id) const {
  static const std::vector<std::string> kNone;
  const auto it = positives_.find(std::string(argument_id));
  return it == positives_.end() ? kNone : it->second;
}

int Corpus::label(std::string_view argument_id, std::string_view key_point_id) const {
  const auto it = label_index_.find(pair_key(argument_id, key_point_id));
  return it == label_index_.end() ? 0 : it->second;
}

bool Corpus::operator==(const Corpus& other) const {
  return topics_ == other.topics_ && arguments_ == other.arguments_ &&
         key_points_ == other.key_points_ && labels_ == other.labels_;
}

Corpus load_argkp(const std::filesystem::path& arguments_file,
                  const std::filesystem::path& key_points_file,
                  const std::filesystem::path& labels_file) {
  const csv::Table args = csv::read(arguments_file);
  const csv::Table kps = csv::read(key_points_file);
  const csv::Table labels = csv::read(labels_file);

  TopicRegistry topics;
  std::vector<Argument> arguments;
  std::vector<KeyPoint> key_points;
  std::vector<GoldLabel> gold;

  {
    const std::size_t c_id = args.column("arg_id");
    const std::size_t c_text = args.column("argument");
    const std::size_t c_topic = args.column("topic");
    const bool has_stance = args.has_column("stance");
    const std::size_t c_stance = has_stance ? args.column("stance") : 0;
    std::set<std::string> seen;
    for (const csv::Row& row : args.rows) {
      Argument a;
      a.id = required_text(args, row, c_id, "arg_id");
      if (!seen.insert(a.id).second) {
        fail(ErrorKind::integrity, at_row(args, row) + ": duplicate arg_id '" + a.id + "'");
      }
      a.text = required_text(args, row, c_text, "argument");
      a.topic_id = topics.id_for(required_text(args, row, c_topic, "topic"));
      if (has_stance) a.stance = parse_stance(args, row, c_stance);
      arguments.push_back(std::move(a));
    }
  }
  {
    const std::size_t c_id = kps.column("key_point_id");
    const std::size_t c_text = kps.column("key_point");
    const std::size_t c_topic = kps.column("topic");
    const bool has_stance = kps.has_column("stance");
    const std::size_t c_stance = has_stance ? kps.column("stance") : 0;
    std::set<std::string> seen;
    for (const csv::Row& row : kps.rows) {
      KeyPoint k;
      k.id = required_text(kps, row, c_id, "key_point_id");
      if (!seen.insert(k.id).second) {
        fail(ErrorKind::integrity, at_row(kps, row) + ": duplicate key_point_id '" + k.id + "'");
      }
      k.text = required_text(kps, row, c_text, "key_point");
      k.topic_id = topics.id_for(required_text(kps, row, c_topic, "topic"));
      if (has_stance) k.stance = parse_stance(kps, row, c_stance);
      key_points.push_back(std::move(k));
    }
  }
  {
    std::set<std::string> arg_ids;
    std::set<std::string> kp_ids;
    for (const auto& a : arguments) arg_ids.insert(a.id);
    for (const auto& k : key_points) kp_ids.insert(k.id);
    const std::size_t c_arg = labels.column("arg_id");
    const std::size_t c_kp = labels.column("key_point_id");
    const std::size_t c_label = labels.column("label");
    std::set<std::pair<std::string, std::string>> seen;
    for (const csv::Row& row : labels.rows) {
      GoldLabel l;
      l.argument_id = required_text(labels, row, c_arg, "arg_id");
      l.key_point_id = required_text(labels, row, c_kp, "key_point_id");
      l.label = parse_label(labels, row, c_label);
      if (!arg_ids.contains(l.argument_id)) {
        fail(ErrorKind::integrity,
             at_row(labels, row) + ": unknown argument id '" + l.argument_id + "'");
      }
      if (!kp_ids.contains(l.key_point_id)) {
        fail(ErrorKind::integrity,
             at_row(labels, row) + ": unknown key point id '" + l.key_point_id + "'");
      }
      if (!seen.emplace(l.argument_id, l.key_point_id).second) {
        fail(ErrorKind::integrity, at_row(labels, row) + ": duplicate label for ('" +
                                       l.argument_id + "', '" + l.key_point_id + "')");
      }
      gold.push_back(std::move(l));
    }
  }
  return Corpus(topics.take(), std::move(arguments), std::move(key_points), std::move(gold));
}

Corpus load_debate(const std::filesystem::path& file) {
  const csv::Table table = csv::read(file);
  if (table.rows.empty()) fail(ErrorKind::input, file.string() + ": empty corpus");
  const std::size_t c_id = table.column("arg_id");
  const std::size_t c_text = table.column("argument");
  const std::size_t c_topic = table.column("topic");
  const std::size_t c_aspect = table.column("aspect");

  TopicRegistry topics;
  std::vector<Argument> arguments;
  std::vector<KeyPoint> key_points;
  std::vector<GoldLabel> gold;
  std::map<std::string, std::size_t> argument_pos;
  std::map<std::pair<std::string, std::string>, std::string> aspect_ids;
  std::set<std::pair<std::string, std::string>> seen_labels;

  for (const csv::Row& row : table.rows) {
    const std::string id = required_text(table, row, c_id, "arg_id");
    const std::string text = required_text(table, row, c_text, "argument");
    const std::string topic_id = topics.id_for(required_text(table, row, c_topic, "topic"));
    const auto existing = argument_pos.find(id);
    if (existing == argument_pos.end()) {
      argument_pos.emplace(id, arguments.size());
      arguments.push_back(Argument{id, topic_id, text, std::nullopt, std::nullopt, std::nullopt});
    } else {
      const Argument& prev = arguments[existing->second];
      if (prev.text != text || prev.topic_id != topic_id) {
        fail(ErrorKind::integrity,
             at_row(table, row) + ": arg_id '" + id + "' repeated with different text or topic");
      }
    }
    const std::string aspect(trim(row.fields[c_aspect]));
    if (aspect.empty()) continue;
    auto [it, inserted] = aspect_ids.try_emplace({topic_id, aspect}, "");
    if (inserted) {
      it->second = "aspect_" + std::to_string(key_points.size());
      key_points.push_back(KeyPoint{it->second, topic_id, aspect, std::nullopt, false});
    }
    if (!seen_labels.emplace(id, it->second).second) {
      fail(ErrorKind::integrity, at_row(table, row) + ": duplicate (arg_id, aspect) row for '" +
                                     id + "'");
    }
    gold.push_back(GoldLabel{id, it->second, 1});
  }
  return Corpus(topics.take(), std::move(arguments), std::move(key_points), std::move(gold));
}

nlohmann::json corpus_to_json(const Corpus& corpus) {
  using nlohmann::json;
  json doc;
  json& topics = doc["topics"] = json::array();
  for (const Topic& t : corpus.topics()) topics.push_back({{"id", t.id}, {"text", t.text}});
  json& arguments = doc["arguments"] = json::array();
  for (const Argument& a : corpus.arguments()) {
    json j = {{"id", a.id}, {"topic_id", a.topic_id}, {"text", a.text}};
    if (a.stance) j["stance"] = *a.stance;
    if (a.parent_id) j["parent_id"] = *a.parent_id;
    if (a.sentence_index) j["sentence_index"] = *a.sentence_index;
    arguments.push_back(std::move(j));
  }
  json& key_points = doc["key_points"] = json::array();
  for (const KeyPoint& k : corpus.key_points()) {
    json j = {{"id", k.id}, {"topic_id", k.topic_id}, {"text", k.text},
              {"is_catch_all", k.is_catch_all}};
    if (k.stance) j["stance"] = *k.stance;
    key_points.push_back(std::move(j));
  }
  json& labels = doc["labels"] = json::array();
  for (const GoldLabel& l : corpus.labels()) {
    labels.push_back(
        {{"argument_id", l.argument_id}, {"key_point_id", l.key_point_id}, {"label", l.label}});
  }
  return doc;
}

Corpus corpus_from_json(const nlohmann::json& doc) {
  try {
    std::vector<Topic> topics;
    for (const auto& t : doc.at("topics")) {
      topics.push_back(Topic{t.at("id").get<std::string>(), t.at("text").get<std::string>()});
    }
    std::vector<Argument> arguments;
    for (const auto& j : doc.at("arguments")) {
      Argument a;
      a.id = j.at("id").get<std::string>();
      a.topic_id = j.at("topic_id").get<std::string>();
      a.text = j.at("text").get<std::string>();
      if (j.contains("stance") && !j["stance"].is_null()) a.stance = j["stance"].get<int>();
      if (j.contains("parent_id")) a.parent_id = j["parent_id"].get<std::string>();
      if (j.contains("sentence_index")) a.sentence_index = j["sentence_index"].get<int>();
      arguments.push_back(std::move(a));
    }
    std::vector<KeyPoint> key_points;
    for (const auto& j : doc.at("key_points")) {
      KeyPoint k;
      k.id = j.at("id").get<std::string>();
      k.topic_id = j.at("topic_id").get<std::string>();
      k.text = j.at("text").get<std::string>();
      if (j.contains("stance") && !j["stance"].is_null()) k.stance = j["stance"].get<int>();
      k.is_catch_all = j.value("is_catch_all", false);
      key_points.push_back(std::move(k));
    }
    std::vector<GoldLabel> labels;
    for (const auto& j : doc.at("labels")) {
      labels.push_back(GoldLabel{j.at("argument_id").get<std::string>(),
                                 j.at("key_point_id").get<std::string>(), j.at("label").get<int>()});
    }
    return Corpus(std::move(topics), std::move(arguments), std::move(key_points),
                  std::move(labels));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse, std::string("corpus JSON: ") + e.what());
  }
}

Corpus load_corpus_json(const std::filesystem::path& file) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(file));
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::parse, file.string() + ": " + e.what());
  }
  return corpus_from_json(doc);
}

void write_argkp(const Corpus& corpus, const std::filesystem::path& dir) {
  auto stance = [](const std::optional<int>& s) { return s ? std::to_string(*s) : std::string(); };
  std::ostringstream args;
  args << "arg_id,argument,topic,stance\n";
  for (const Argument& a : corpus.arguments()) {
    args << csv::quote(a.id) << ',' << csv::quote(a.text) << ','
         << csv::quote(corpus.find_topic(a.topic_id)->text) << ',' << stance(a.stance) << '\n';
  }
  std::ostringstream kps;
  kps << "key_point_id,key_point,topic,stance\n";
  for (const KeyPoint& k : corpus.key_points()) {
    if (k.is_catch_all) continue;
    kps << csv::quote(k.id) << ',' << csv::quote(k.text) << ','
        << csv::quote(corpus.find_topic(k.topic_id)->text) << ',' << stance(k.stance) << '\n';
  }
  std::ostringstream labels;
  labels << "arg_id,key_point_id,label\n";
  for (const GoldLabel& l : corpus.labels()) {
    if (corpus.find_key_point(l.key_point_id)->is_catch_all) continue;
    labels << csv::quote(l.argument_id) << ',' << csv::quote(l.key_point_id) << ',' << l.label
           << '\n';
  }
  write_file_atomic(dir / "arguments.csv", args.str());
  write_file_atomic(dir / "key_points.csv", kps.str());
  write_file_atomic(dir / "labels.csv", labels.str());
}

Corpus attach_catch_all(const Corpus& corpus) {
  std::vector<KeyPoint> key_points = corpus.key_points();
  std::vector<GoldLabel> labels = corpus.labels();
  for (const Topic& topic : corpus.topics()) {
    std::vector<const Argument*> unmatched;
    for (const Argument* a : corpus.arguments_of(topic.id)) {
      if (corpus.positive_key_points(a->id).empty()) unmatched.push_back(a);
    }
    if (unmatched.empty()) continue;
    const std::string id = topic.id + std::string(kCatchAllSuffix);
    if (corpus.find_key_point(id) == nullptr) {
      key_points.push_back(KeyPoint{id, topic.id, std::string(kCatchAllText), std::nullopt, true});
    }
    for (const Argument* a : unmatched) {
      // A stale 0-label to the catch-all would collide with the new positive.
      std::erase_if(labels, [&](const GoldLabel& l) {
        return l.argument_id == a->id && l.key_point_id == id;
      });
      labels.push_back(GoldLabel{a->id, id, 1});
    }
  }
  return Corpus(corpus.topics(), corpus.arguments(), std::move(key_points), std::move(labels));
}

std::vector<std::string> split_into_sentences(std::string_view text) {
  auto is_terminator = [](char c) { return c == '.' || c == '!' || c == '?'; };
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  std::vector<std::string> out;
  auto emit = [&](std::string_view piece) {
    piece = trim(piece);
    if (!piece.empty()) out.emplace_back(piece);
  };
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_terminator(text[i])) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < text.size() && is_terminator(text[end])) ++end;
    std::size_t next = end;
    while (next < text.size() && is_space(text[next])) ++next;
    const bool at_end = next == text.size();
    const bool before_capital = next > end && !at_end &&
                                std::isupper(static_cast<unsigned char>(text[next])) != 0;
    if (at_end || before_capital) {
      emit(text.substr(start, end - start));
      start = next;
    }
    i = end;
  }
  if (start < text.size()) emit(text.substr(start));
  return out;
}

std::string derived_argument_id(std::string_view parent_id, int sentence_index) {
  return std::string(parent_id) + "#" + std::to_string(sentence_index);
}

Corpus split_sentences(const Corpus& corpus) {
  std::vector<Argument> arguments;
  std::map<std::string, std::vector<std::string>> derived;
  for (const Argument& a : corpus.arguments()) {
    const std::vector<std::string> sentences = split_into_sentences(a.text);
    if (sentences.size() <= 1) {
      arguments.push_back(a);
      continue;
    }
    auto& ids = derived[a.id];
    for (std::size_t s = 0; s < sentences.size(); ++s) {
      Argument piece = a;
      piece.id = derived_argument_id(a.id, static_cast<int>(s));
      piece.text = sentences[s];
      piece.parent_id = a.id;
      piece.sentence_index = static_cast<int>(s);
      ids.push_back(piece.id);
      arguments.push_back(std::move(piece));
    }
  }
  std::vector<GoldLabel> labels;
  for (const GoldLabel& l : corpus.labels()) {
    const auto it = derived.find(l.argument_id);
    if (it == derived.end()) {
      labels.push_back(l);
      continue;
    }
    for (const std::string& id : it->second) labels.push_back(GoldLabel{id, l.key_point_id, l.label});
  }
  return Corpus(corpus.topics(), std::move(arguments), corpus.key_points(), std::move(labels));
}

}  // namespace kpa
