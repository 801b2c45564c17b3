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


#include <doctest.h>

#include <cmath>
#include <random>

#include "kpa/evaluation.hpp"
#include "kpa/porter.hpp"
#include "kpa/synthetic.hpp"
#include "support.hpp"

using namespace kpa;
using kpa::testing::catch_error;
using kpa::testing::labeled_corpus;

namespace {

GeneratedSummary summary_of(const Corpus& c, const std::vector<std::string>& ids) {
  GeneratedSummary s;
  s.topic_id = "t";
  for (const std::string& id : ids) {
    s.entries.push_back({id, c.find_argument(id)->text, s.entries.size(), 1, 0.0});
  }
  return s;
}

Matcher oracle(const Corpus& c) {
  MatcherConfig m;
  m.kind = MatchKind::oracle;
  return Matcher(m, &c);
}

// Longest common subsequence by enumerating every subsequence of `a`.
std::size_t brute_lcs(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << a.size()); ++mask) {
    std::size_t j = 0, len = 0;
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) {
      if (!(mask >> i & 1u)) continue;
      while (j < b.size() && b[j] != a[i]) ++j;
      if (j == b.size()) ok = false; else { ++j; ++len; }
    }
    if (ok) best = std::max(best, len);
  }
  return best;
}

}  // namespace

TEST_CASE("coverage_predicted counts distinct matched references") {
  // Two arguments per key point; the summary covers key points 0..4.
  std::vector<int> groups;
  for (int k = 0; k < 9; ++k) groups.insert(groups.end(), {k, k});
  const Corpus c = labeled_corpus(groups, 9);
  const GeneratedSummary s = summary_of(c, {"a0", "a1", "a2", "a4", "a6", "a8"});
  const auto refs = c.key_points_of("t");
  const CoverageResult r = coverage_predicted(s, refs, oracle(c));
  CHECK(r.coverage == doctest::Approx(5.0 / 9.0).epsilon(1e-12));
  CHECK(r.covered_key_point_ids == std::vector<std::string>{"k0", "k1", "k2", "k3", "k4"});
  REQUIRE(r.assignments.size() == 6);
  CHECK(r.assignments[1].key_point_id == "k0");
  CHECK(r.assignments[1].score == 1.0);

  const CoverageResult empty = coverage_predicted(GeneratedSummary{"t", {}, {}}, refs, oracle(c));
  CHECK(empty.coverage == 0.0);
  CHECK(empty.assignments.empty());
}

TEST_CASE("each entry is assigned to one best reference, smallest id on ties") {
  const Corpus c({{"t", "T"}}, {{"a", "t", "x", {}, {}, {}}},
                 {{"k2", "t", "p", {}, false}, {"k1", "t", "q", {}, false}},
                 {{"a", "k2", 1}, {"a", "k1", 1}});
  const GeneratedSummary s{"t", {}, {{"a", "x", 0, 1, 0.0}}};
  const CoverageResult r = coverage_predicted(s, c.key_points_of("t"), oracle(c));
  CHECK(r.covered_key_point_ids == std::vector<std::string>{"k1"});
  CHECK(r.coverage == 0.5);
  CHECK(coverage_actual(s, c) == 1.0);
}

TEST_CASE("coverage_actual") {
  std::vector<int> groups;
  for (int k = 0; k < 10; ++k) groups.push_back(k);
  const Corpus c = labeled_corpus(groups, 10);
  CHECK(coverage_actual(summary_of(c, {"a0", "a1", "a2", "a3", "a4", "a5"}), c) ==
        doctest::Approx(0.6));
  CHECK(coverage_actual(summary_of(c, {"a0", "a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9"}),
                        c) == 1.0);
  const Corpus partial = labeled_corpus({0, -1}, 1);
  const auto e = catch_error([&] { coverage_actual(summary_of(partial, {"a1"}), partial); });
  CHECK(e.kind == ErrorKind::integrity);
  CHECK(e.message.find("a1") != std::string::npos);
}

TEST_CASE("redundancy_actual") {
  const Corpus c = labeled_corpus({0, 0, 1, 2, 3, 4, 5, 6, 7}, 8);
  CHECK(redundancy_actual(summary_of(c, {"a0", "a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8"}),
                          c) == 1.0 / 36.0);
  const Corpus same = labeled_corpus({0, 0, 0, 0}, 1);
  CHECK(redundancy_actual(summary_of(same, {"a0", "a1", "a2", "a3"}), same) == 1.0);
  CHECK(redundancy_actual(summary_of(same, {"a0"}), same) == 0.0);
}

TEST_CASE("avg_words") {
  const Corpus c = labeled_corpus({0, 0, 0}, 1, {"one two three", "one two three four five",
                                                 "a b c d e f g"});
  CHECK(avg_words(summary_of(c, {"a0", "a1"})) == 4.0);
  CHECK(avg_words(summary_of(c, {"a2"})) == 7.0);
  CHECK(catch_error([] { avg_words(GeneratedSummary{}); }).kind == ErrorKind::input);
}

TEST_CASE("rouge on hand-computed cases") {
  const RougeScores same = rouge("Vaccines save lives.", "vaccines save lives");
  CHECK(same.rouge1 == 1.0);
  CHECK(same.rouge2 == 1.0);
  CHECK(same.rougeL == 1.0);

  const RougeScores disjoint = rouge("red green", "blue yellow");
  CHECK(disjoint.rouge1 == 0.0);
  CHECK(disjoint.rouge2 == 0.0);
  CHECK(disjoint.rougeL == 0.0);
  CHECK_FALSE(disjoint.degenerate);

  // Unigrams: the, cat shared of 3 each. Bigrams: "the cat" shared of 2 each.
  const RougeScores cat = rouge("the cat sat", "the cat ran");
  CHECK(cat.rouge1 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(cat.rouge2 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cat.rougeL == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  const RougeScores empty = rouge("", "the cat");
  CHECK(empty.degenerate);
  CHECK(empty.rouge1 == 0.0);
  CHECK(rouge("!!!", "the cat").degenerate);
}

TEST_CASE("rouge is symmetric and bounded, rougeL agrees with brute-force LCS") {
  std::mt19937_64 rng(9);
  const std::vector<std::string> vocab{"a", "b", "c", "d", "e"};
  std::uniform_int_distribution<std::size_t> word(0, vocab.size() - 1), len(1, 9);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> x(len(rng)), y(len(rng));
    for (auto& w : x) w = vocab[word(rng)];
    for (auto& w : y) w = vocab[word(rng)];
    std::string sx, sy;
    for (const auto& w : x) sx += w + " ";
    for (const auto& w : y) sy += w + " ";
    const RougeScores xy = rouge(sx, sy);
    const RougeScores yx = rouge(sy, sx);
    CHECK(xy.rouge1 == doctest::Approx(yx.rouge1));
    CHECK(xy.rouge2 == doctest::Approx(yx.rouge2));
    CHECK(xy.rougeL == doctest::Approx(yx.rougeL));
    for (double v : {xy.rouge1, xy.rouge2, xy.rougeL}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    const double lcs = static_cast<double>(brute_lcs(x, y));
    const double expected =
        lcs == 0 ? 0.0 : 2.0 * (lcs / x.size()) * (lcs / y.size()) / (lcs / x.size() + lcs / y.size());
    CHECK(xy.rougeL == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("porter stemmer on known words") {
  const std::vector<std::pair<std::string, std::string>> cases{
      {"caresses", "caress"}, {"ponies", "poni"},       {"cats", "cat"},
      {"agreed", "agre"},     {"plastered", "plaster"}, {"motoring", "motor"},
      {"hopping", "hop"},     {"filing", "file"},       {"happy", "happi"},
      {"relational", "relat"}, {"conditional", "condit"}, {"generalization", "gener"},
      {"adjustable", "adjust"}, {"controlling", "control"}, {"rolling", "roll"},
      {"vaccinations", "vaccin"}, {"sky", "sky"}};
  for (const auto& [word, stem] : cases) {
    CAPTURE(word);
    CHECK(porter_stem(word) == stem);
  }
}

TEST_CASE("stemming affects only tokens longer than three characters") {
  RougeOptions stem{true};
  CHECK(rouge_tokens("Vaccinations are saving lives", stem) ==
        std::vector<std::string>{"vaccin", "are", "save", "live"});
  CHECK(rouge_tokens("Vaccinations are", {}) == std::vector<std::string>{"vaccinations", "are"});
  CHECK(rouge("vaccinations", "vaccination", stem).rouge1 == 1.0);
  CHECK(rouge("vaccinations", "vaccination").rouge1 == 0.0);
}

TEST_CASE("summary_rouge joins entries and references") {
  const Corpus c({{"t", "T"}}, {{"a", "t", "cats are nice", {}, {}, {}}},
                 {{"k", "t", "cats are nice", {}, false}}, {{"a", "k", 1}});
  const GeneratedSummary s = summary_of(c, {"a"});
  CHECK(summary_rouge(s, c.key_points_of("t")).rouge1 == 1.0);
}

TEST_CASE("oracle predicted coverage equals actual coverage on single-label corpora") {
  const std::vector<SyntheticTopic> topics{{"First topic", {6, 4, 3, 2}, 3},
                                           {"Second topic", {5, 5, 1}, 0}};
  const Corpus c = attach_catch_all(make_synthetic_corpus(topics, 17));
  const Matcher m = oracle(c);
  std::mt19937_64 rng(1);
  for (const Topic& t : c.topics()) {
    auto args = c.arguments_of(t.id);
    const auto refs = c.key_points_of(t.id);
    for (int trial = 0; trial < 50; ++trial) {
      std::shuffle(args.begin(), args.end(), rng);
      const std::size_t n = 1 + rng() % args.size();
      GeneratedSummary s;
      s.topic_id = t.id;
      for (std::size_t i = 0; i < n; ++i) {
        s.entries.push_back({args[i]->id, args[i]->text, i, 1, 0.0});
      }
      CHECK(coverage_predicted(s, refs, m).coverage == coverage_actual(s, c));
    }
  }
}

TEST_CASE("adding entries never lowers coverage") {
  std::vector<int> groups;
  for (int i = 0; i < 30; ++i) groups.push_back(i % 7);
  const Corpus c = labeled_corpus(groups, 7);
  const Matcher m = oracle(c);
  GeneratedSummary s;
  s.topic_id = "t";
  double previous = 0.0;
  for (int i = 0; i < 30; ++i) {
    const std::string id = "a" + std::to_string((i * 11) % 30);
    s.entries.push_back({id, c.find_argument(id)->text, s.entries.size(), 1, 0.0});
    const double cov = coverage_predicted(s, c.key_points_of("t"), m).coverage;
    CHECK(cov >= previous);
    CHECK(coverage_actual(s, c) >= previous);
    previous = cov;
  }
  CHECK(previous == 1.0);
}

TEST_CASE("evaluate fills the requested modes") {
  const Corpus c = labeled_corpus({0, 1}, 2);
  const Matcher m = oracle(c);
  const GeneratedSummary s = summary_of(c, {"a0", "a1"});
  const std::vector<EvalMode> all{EvalMode::predicted, EvalMode::actual, EvalMode::rouge};
  const EvaluationReport r = evaluate(s, c, all, &m);
  REQUIRE(r.predicted_coverage);
  CHECK(r.predicted_coverage->coverage == 1.0);
  CHECK(r.actual_coverage == 1.0);
  CHECK(r.redundancy == 0.0);
  CHECK(r.rouge);
  CHECK(r.avg_words == 2.0);
  const nlohmann::json doc = report_to_json(r);
  CHECK(doc.at("actual_coverage") == 1.0);

  const std::vector<EvalMode> predicted{EvalMode::predicted};
  CHECK(catch_error([&] { evaluate(s, c, predicted, nullptr); }).kind == ErrorKind::usage);
  GeneratedSummary other = s;
  other.topic_id = "nope";
  CHECK(catch_error([&] { evaluate(other, c, all, &m); }).kind == ErrorKind::input);
}
