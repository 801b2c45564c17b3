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

#include <atomic>

#include "fake_server.hpp"
#include "kpa/matching.hpp"
#include "support.hpp"

using namespace kpa;
using kpa::testing::catch_error;
using kpa::testing::FakeServer;
using kpa::testing::labeled_corpus;
using kpa::testing::TempDir;
using kpa::testing::write_text;

namespace {

MatcherConfig kind(MatchKind k) {
  MatcherConfig c;
  c.kind = k;
  return c;
}

MatchQuery kp_query(std::string_view arg, std::string_view kp) {
  return MatchQuery{"argument text", "key point text", arg, kp, SlotKind::key_point};
}

std::vector<const Argument*> members(const Corpus& c, std::initializer_list<int> idx) {
  std::vector<const Argument*> out;
  for (int i : idx) out.push_back(c.find_argument("a" + std::to_string(i)));
  return out;
}

}  // namespace

TEST_CASE("oracle matcher follows gold labels") {
  const Corpus c = labeled_corpus({0, 1}, 2);
  const Matcher m(kind(MatchKind::oracle), &c);
  const MatchScore yes = m.match(kp_query("a0", "k0"));
  CHECK(yes.score == 1.0);
  CHECK(yes.is_match);
  const MatchScore no = m.match(kp_query("a0", "k1"));
  CHECK(no.score == 0.0);
  CHECK_FALSE(no.is_match);

  const Corpus sparse({{"t", "T"}}, {{"a", "t", "x", {}, {}, {}}},
                      {{"k", "t", "p", {}, false}}, {});
  const Matcher ms(kind(MatchKind::oracle), &sparse);
  CHECK(ms.match(kp_query("a", "k")).score == 0.0);
}

TEST_CASE("oracle matcher without ids or corpus is a usage error") {
  const Corpus c = labeled_corpus({0}, 1);
  const Matcher m(kind(MatchKind::oracle), &c);
  const auto e = catch_error([&] { m.match(MatchQuery{"x", "y", {}, {}, SlotKind::key_point}); });
  CHECK(e.kind == ErrorKind::usage);
  CHECK(catch_error([] { Matcher(kind(MatchKind::oracle), nullptr); }).kind == ErrorKind::usage);
}

TEST_CASE("oracle argument pairs match when they share a gold key point") {
  const Corpus c({{"t", "T"}},
                 {{"a", "t", "x", {}, {}, {}}, {"b", "t", "y", {}, {}, {}},
                  {"c", "t", "z", {}, {}, {}}},
                 {{"k0", "t", "p", {}, false}, {"k1", "t", "q", {}, false}},
                 {{"a", "k0", 1}, {"a", "k1", 1}, {"b", "k1", 1}, {"c", "k0", 0}});
  const Matcher m(kind(MatchKind::oracle), &c);
  CHECK(m.match(MatchQuery{"x", "y", "a", "b", SlotKind::argument}).is_match);
  CHECK_FALSE(m.match(MatchQuery{"x", "z", "a", "c", SlotKind::argument}).is_match);
}

TEST_CASE("lexical matcher is token-set Jaccard") {
  const Matcher m(kind(MatchKind::lexical));
  const MatchScore same = m.match(MatchQuery{"Vaccines save lives", "vaccines save LIVES!"});
  CHECK(same.score == 1.0);
  CHECK(same.is_match);
  CHECK(jaccard("a b c", "b c d") == doctest::Approx(0.5));
  CHECK(jaccard("a b", "c d") == 0.0);
  CHECK(catch_error([&] { m.match(MatchQuery{"", "x"}); }).kind == ErrorKind::input);
}

TEST_CASE("file matcher looks up scored pairs") {
  TempDir dir;
  write_text(dir / "m.jsonl",
             "{\"a\":\"a0\",\"b\":\"k0\",\"score\":0.9}\n{\"a\":\"a1\",\"b\":\"k0\",\"score\":0.2}\n");
  MatcherConfig config = kind(MatchKind::file);
  config.file = dir / "m.jsonl";
  const Matcher m(config);
  CHECK(m.match(kp_query("a0", "k0")).score == 0.9);
  CHECK_FALSE(m.match(kp_query("a1", "k0")).is_match);
  const auto e = catch_error([&] { m.match(kp_query("a1", "k9")); });
  CHECK(e.kind == ErrorKind::lookup);
  CHECK(e.message.find("a1") != std::string::npos);
  CHECK(e.message.find("k9") != std::string::npos);

  write_text(dir / "bad.jsonl", "{\"a\":\"a0\",\"b\":\"k0\",\"score\":1.5}\n");
  config.file = dir / "bad.jsonl";
  CHECK(catch_error([&] { Matcher{config}; }).kind == ErrorKind::format);
}

TEST_CASE("decision threshold must lie strictly between 0 and 1") {
  for (double t : {0.0, 1.0, -0.5, 2.0}) {
    MatcherConfig c;
    c.decision_threshold = t;
    CHECK(catch_error([&] { Matcher{c}; }).kind == ErrorKind::usage);
  }
}

TEST_CASE("match_count") {
  // Candidate a0 shares key point 0 with four of six remaining members.
  const Corpus c = labeled_corpus({0, 0, 0, 1, 0, 1, 0}, 2);
  const Matcher m(kind(MatchKind::oracle), &c);
  const Argument& candidate = *c.find_argument("a0");
  CHECK(m.match_count(members(c, {1, 2, 3, 4, 5, 6}), candidate) == 4);
  CHECK(m.match_count({}, candidate) == 0);
}

TEST_CASE("raising the threshold never increases match_count") {
  TempDir dir;
  std::string jsonl;
  for (int i = 1; i < 8; ++i) {
    jsonl += "{\"a\":\"a" + std::to_string(i) + "\",\"b\":\"a0\",\"score\":" +
             std::to_string(i / 8.0) + "}\n";
  }
  write_text(dir / "m.jsonl", jsonl);
  const Corpus c = labeled_corpus(std::vector<int>(8, 0), 1);
  std::size_t previous = 8;
  for (double t = 0.05; t < 1.0; t += 0.05) {
    MatcherConfig config = kind(MatchKind::file);
    config.file = dir / "m.jsonl";
    config.decision_threshold = t;
    const Matcher m(config);
    const std::size_t n = m.match_count(members(c, {1, 2, 3, 4, 5, 6, 7}), *c.find_argument("a0"));
    CHECK(n <= previous);
    previous = n;
  }
  CHECK(previous == 0);
}

TEST_CASE("swap_slots puts the candidate in the argument slot") {
  TempDir dir;
  write_text(dir / "m.jsonl", "{\"a\":\"a0\",\"b\":\"a1\",\"score\":1.0}\n");
  const Corpus c = labeled_corpus({0, 0}, 1);
  MatcherConfig config = kind(MatchKind::file);
  config.file = dir / "m.jsonl";
  const Matcher plain(config);
  CHECK(catch_error([&] { plain.match_count(members(c, {1}), *c.find_argument("a0")); }).kind ==
        ErrorKind::lookup);
  config.swap_slots = true;
  const Matcher swapped(config);
  CHECK(swapped.match_count(members(c, {1}), *c.find_argument("a0")) == 1);
}

TEST_CASE("pair scores are cached") {
  const Corpus c = labeled_corpus({0, 0, 0}, 1);
  const Matcher m(kind(MatchKind::oracle), &c);
  const auto all = members(c, {0, 1, 2});
  m.prefetch_cluster(all);
  CHECK(m.backend_queries() == 6);
  for (const Argument* a : all) {
    std::vector<const Argument*> rest;
    for (const Argument* b : all) if (b != a) rest.push_back(b);
    CHECK(m.match_count(rest, *a) == 2);
  }
  CHECK(m.backend_queries() == 6);
}

TEST_CASE("remote matcher issues one pair request per member") {
  std::atomic<int> pairs{0};
  FakeServer server("/v1/match", [&](const nlohmann::json& body) {
    nlohmann::json scores = nlohmann::json::array();
    for (const auto& p : body.at("pairs")) {
      ++pairs;
      scores.push_back(p.at("argument").get<std::string>() == "same" ? 1.0 : 0.0);
    }
    return nlohmann::json{{"scores", scores}};
  });
  std::vector<std::string> texts{"candidate"};
  for (int i = 0; i < 10; ++i) texts.push_back(i % 2 == 0 ? "same" : "other");
  const Corpus c = labeled_corpus(std::vector<int>(11, 0), 1, texts);
  MatcherConfig config = kind(MatchKind::remote);
  config.remote.endpoint = server.endpoint();
  config.remote.batch_size = 4;
  const Matcher m(config);
  const std::size_t n = m.match_count(members(c, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}),
                                      *c.find_argument("a0"));
  CHECK(n == 5);
  CHECK(pairs.load() == 10);
  CHECK(server.requests() == 3);
  CHECK(m.backend_queries() == 10);
}

TEST_CASE("remote matcher retries and then reports transport errors") {
  auto ok = [](const nlohmann::json& body) {
    return nlohmann::json{{"scores", std::vector<double>(body.at("pairs").size(), 0.75)}};
  };
  MatcherConfig config = kind(MatchKind::remote);
  config.remote.backoff = std::chrono::milliseconds(1);
  config.remote.retries = 2;
  {
    FakeServer flaky("/v1/match", ok, 2);
    config.remote.endpoint = flaky.endpoint();
    const Matcher m(config);
    CHECK(m.match(MatchQuery{"x", "y"}).score == 0.75);
    CHECK(flaky.requests() == 3);
  }
  {
    FakeServer down("/v1/match", ok, 100, 500);
    config.remote.endpoint = down.endpoint();
    const Matcher m(config);
    const auto e = catch_error([&] { m.match(MatchQuery{"x", "y"}); });
    CHECK(e.kind == ErrorKind::transport);
    CHECK(e.message.find("500") != std::string::npos);
    CHECK(down.requests() == 3);
  }
  {
    FakeServer bad("/v1/match", [](const nlohmann::json&) {
      return nlohmann::json{{"scores", {2.0}}};
    });
    config.remote.endpoint = bad.endpoint();
    const Matcher m(config);
    CHECK(catch_error([&] { m.match(MatchQuery{"x", "y"}); }).kind == ErrorKind::transport);
  }
}
