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

#include <json.hpp>

#include "cli_support.hpp"
#include "kpa/corpus.hpp"
#include "kpa/io.hpp"
#include "kpa/synthetic.hpp"

using namespace kpa;
using kpa::testing::argkp_flags;
using kpa::testing::concat;
using kpa::testing::read_text;
using kpa::testing::run_cli;
using kpa::testing::TempDir;
using kpa::testing::write_text;
using nlohmann::json;

namespace fs = std::filesystem;

namespace {

Corpus three_topics() {
  const std::vector<SyntheticTopic> topics{{"Topic one", {12, 9, 7, 5}, 3},
                                           {"Topic two", {10, 8, 8, 6, 4}, 0},
                                           {"Topic three", {15, 9, 6}, 2}};
  return make_synthetic_corpus(topics, 8);
}

const std::vector<std::string> kOracle{"--embed-backend", "oracle", "--matcher", "oracle",
                                       "--distance-threshold", "1.0"};

std::vector<std::string> summary_files(const fs::path& out) {
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(out / "summaries")) files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

TEST_CASE("summarize with oracle backends covers every gold key point") {
  TempDir dir;
  const Corpus c = three_topics();
  write_argkp(c, dir / "data");
  const auto r = run_cli(concat(concat({"summarize"}, argkp_flags(dir / "data")),
                                concat(kOracle, {"--output-dir", (dir / "out").string()})));
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const auto files = summary_files(dir / "out");
  CHECK(files.size() == 3);
  CHECK(fs::exists(dir / "out" / "manifest.json"));
  CHECK(fs::exists(dir / "out" / "summarize.config.toml"));

  const auto ev = run_cli(concat(concat({"evaluate", "--matcher", "oracle", "--mode", "predicted",
                                         "--mode", "actual", "--output-dir",
                                         (dir / "eval").string()},
                                        argkp_flags(dir / "data")),
                                 concat({"--summaries"}, files)));
  REQUIRE_MESSAGE(ev.code == 0, ev.err);
  const json report = json::parse(read_text(dir / "eval" / "report.json"));
  for (const auto& t : report.at("topics")) {
    CHECK(t.at("actual_coverage") == 1.0);
    CHECK(t.at("redundancy") == 0.0);
    CHECK(t.at("predicted_coverage").at("coverage") == t.at("actual_coverage"));
  }
}

TEST_CASE("max-key-points caps every summary") {
  TempDir dir;
  const std::vector<SyntheticTopic> topics{{"Big", {9, 8, 7, 6, 5, 4, 3, 3, 2, 2, 1, 1}, 0}};
  write_argkp(make_synthetic_corpus(topics, 3), dir / "data");
  const auto r = run_cli(concat(concat({"summarize", "--max-key-points", "9", "--output-dir",
                                        (dir / "out").string()},
                                       argkp_flags(dir / "data")),
                                kOracle));
  REQUIRE_MESSAGE(r.code == 0, r.err);
  for (const auto& f : summary_files(dir / "out")) {
    CHECK(json::parse(read_text(f)).at("entries").size() <= 9);
  }
}

TEST_CASE("summarize output is byte-identical across runs and replayable from its config") {
  TempDir dir;
  write_argkp(three_topics(), dir / "data");
  for (const std::string backend : {"oracle", "lexical"}) {
    const auto base = concat(concat({"summarize"}, argkp_flags(dir / "data")),
                             {"--embed-backend", backend, "--matcher", backend,
                              "--distance-threshold", "1.0"});
    REQUIRE(run_cli(concat(base, {"--output-dir", (dir / "a").string()})).code == 0);
    REQUIRE(run_cli(concat(base, {"--output-dir", (dir / "b").string()})).code == 0);
    for (const auto& f : fs::directory_iterator(dir / "a" / "summaries")) {
      CHECK(read_text(f.path()) == read_text(dir / "b" / "summaries" / f.path().filename()));
    }
    const auto replay = run_cli({"--config", (dir / "a" / "summarize.config.toml").string(),
                                 "summarize", "--output-dir", (dir / "c").string()});
    REQUIRE_MESSAGE(replay.code == 0, replay.err);
    for (const auto& f : fs::directory_iterator(dir / "a" / "summaries")) {
      CHECK(read_text(f.path()) == read_text(dir / "c" / "summaries" / f.path().filename()));
    }
  }
}

TEST_CASE("manifest records inputs and every output by relative path") {
  TempDir dir;
  write_argkp(three_topics(), dir / "data");
  REQUIRE(run_cli(concat(concat({"summarize", "--output-dir", (dir / "out").string()},
                                argkp_flags(dir / "data")),
                         kOracle))
              .code == 0);
  const json m = json::parse(read_text(dir / "out" / "manifest.json"));
  CHECK(m.at("inputs").size() == 3);
  CHECK(m.at("outputs").size() == 6);
  CHECK(m.at("command") == "summarize");
  for (const auto& [name, hash] : m.at("outputs").items()) {
    CHECK(fs::exists(dir / "out" / name));
  }
}

TEST_CASE("rouge mode on summaries identical to the references scores 1") {
  TempDir dir;
  // One argument per key point whose text is the key point's text.
  std::vector<KeyPoint> kps;
  std::vector<Argument> args;
  std::vector<GoldLabel> labels;
  for (int k = 0; k < 3; ++k) {
    const std::string text = "key point number " + std::to_string(k) + " text";
    kps.push_back({"k" + std::to_string(k), "t", text, 1, false});
    args.push_back({"a" + std::to_string(k), "t", text, 1, {}, {}});
    labels.push_back({args.back().id, kps.back().id, 1});
  }
  const Corpus c({{"t", "The topic"}}, args, kps, labels);
  write_text(dir / "c.json", corpus_to_json(c).dump());
  REQUIRE(run_cli(concat({"summarize", "--format", "json", "--input", (dir / "c.json").string(),
                          "--output-dir", (dir / "out").string()},
                         kOracle))
              .code == 0);
  const auto ev = run_cli(concat({"evaluate", "--format", "json", "--input",
                                  (dir / "c.json").string(), "--mode", "rouge", "--output-dir",
                                  (dir / "eval").string(), "--summaries"},
                                 summary_files(dir / "out")));
  REQUIRE_MESSAGE(ev.code == 0, ev.err);
  const json t = json::parse(read_text(dir / "eval" / "report.json")).at("topics").at(0);
  CHECK(t.at("rouge1") == 1.0);
  CHECK(t.at("rouge2") == 1.0);
  CHECK(t.at("rougeL") == 1.0);
}

TEST_CASE("sample-coverage cardinality and determinism") {
  TempDir dir;
  write_argkp(three_topics(), dir / "data");
  const auto base = concat({"sample-coverage", "--size", "8"}, argkp_flags(dir / "data"));
  REQUIRE(run_cli(concat(base, {"--output-dir", (dir / "a").string()})).code == 0);
  REQUIRE(run_cli(concat(base, {"--output-dir", (dir / "b").string()})).code == 0);
  const std::string a = read_text(dir / "a" / "coverage_suite.jsonl");
  CHECK(a == read_text(dir / "b" / "coverage_suite.jsonl"));
  CHECK(std::count(a.begin(), a.end(), '\n') == 90);

  REQUIRE(run_cli(concat(base, {"--levels", "0.5", "--samples", "1", "--output-dir",
                                (dir / "c").string()}))
              .code == 0);
  const std::string one = read_text(dir / "c" / "coverage_suite.jsonl");
  CHECK(std::count(one.begin(), one.end(), '\n') == 3);

  REQUIRE(run_cli(concat(base, {"--seed", "9", "--output-dir", (dir / "d").string()})).code == 0);
  CHECK(read_text(dir / "d" / "coverage_suite.jsonl") != a);

  const auto ev = run_cli(concat({"evaluate", "--matcher", "oracle", "--suite",
                                  (dir / "a" / "coverage_suite.jsonl").string(), "--output-dir",
                                  (dir / "e").string()},
                                 argkp_flags(dir / "data")));
  REQUIRE_MESSAGE(ev.code == 0, ev.err);
  const json report = json::parse(read_text(dir / "e" / "suite_report.json"));
  CHECK(report.at("cells").size() == 9);
  for (const auto& cell : report.at("cells")) {
    CHECK(cell.at("mean").at("predicted_coverage") == cell.at("mean").at("actual_coverage"));
  }
}

TEST_CASE("cluster-eval reports rand scores") {
  TempDir dir;
  write_argkp(three_topics(), dir / "data");
  REQUIRE(run_cli(concat(concat({"summarize", "--output-dir", (dir / "out").string()},
                                argkp_flags(dir / "data")),
                         kOracle))
              .code == 0);
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(dir / "out" / "clusters")) files.push_back(e.path().string());
  std::vector<std::string> args{"cluster-eval", "--output-dir", (dir / "ce").string()};
  for (const auto& f : files) args.insert(args.end(), {"--assignment", f});
  const auto r = run_cli(concat(args, argkp_flags(dir / "data")));
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const json doc = json::parse(read_text(dir / "ce" / "cluster_eval.json"));
  REQUIRE(doc.at("results").size() == 3);
  for (const auto& row : doc.at("results")) {
    CHECK(row.at("rand") == 1.0);
    CHECK(row.at("adjusted_rand") == 1.0);
  }
}

TEST_CASE("error surface and exit codes") {
  TempDir dir;
  write_argkp(three_topics(), dir / "data");

  auto r = run_cli(concat(concat({"summarize", "--embed-backend", "file", "--embeddings",
                                  (dir / "missing.jsonl").string(), "--output-dir",
                                  (dir / "out").string()},
                                 argkp_flags(dir / "data")),
                          {"--matcher", "oracle"}));
  CHECK(r.code == 2);
  CHECK(r.err.find("missing.jsonl") != std::string::npos);
  const json err = json::parse(r.err);
  CHECK(err.at("error").contains("kind"));

  CHECK(run_cli({"summarize", "--no-such-flag"}).code == 1);
  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"summarize", "--method", "best"}).code == 1);
  CHECK(run_cli({"--help"}).code == 0);

  r = run_cli({"summarize", "--arguments", (dir / "nope.csv").string(), "--key-points",
               (dir / "nope.csv").string(), "--labels", (dir / "nope.csv").string()});
  CHECK(r.code == 2);

  r = run_cli(concat(concat({"summarize", "--embed-backend", "remote", "--embed-endpoint",
                             "http://127.0.0.1:1", "--retries", "0", "--timeout-ms", "200",
                             "--output-dir", (dir / "out").string()},
                            argkp_flags(dir / "data")),
                     {"--matcher", "oracle"}));
  CHECK(r.code == 3);

  write_text(dir / "s.json", R"({"topic_id":"topic-000000000000","entries":[]})");
  r = run_cli(concat({"evaluate", "--mode", "actual", "--summaries", (dir / "s.json").string(),
                      "--output-dir", (dir / "ev").string()},
                     argkp_flags(dir / "data")));
  CHECK(r.code == 2);
  CHECK(r.err.find("topic-000000000000") != std::string::npos);
}
