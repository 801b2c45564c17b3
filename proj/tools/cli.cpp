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

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "kpa/clustering.hpp"
#include "kpa/corpus.hpp"
#include "kpa/coverage_datasets.hpp"
#include "kpa/embedding.hpp"
#include "kpa/error.hpp"
#include "kpa/evaluation.hpp"
#include "kpa/io.hpp"
#include "kpa/matching.hpp"
#include "kpa/random.hpp"
#include "kpa/selection.hpp"
#include "kpa/text.hpp"

namespace kpa::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct DatasetOptions {
  std::string format = "argkp";
  std::string arguments;
  std::string key_points;
  std::string labels;
  std::string input;
  bool split_sentences = false;
};

struct CommonOptions {
  DatasetOptions dataset;
  std::string output_dir = "kpa-out";
  std::uint64_t seed = 0;
};

struct BackendOptions {
  std::string embed_backend = "lexical";
  std::string embeddings;
  std::string embed_endpoint;
  bool no_normalize = false;
  std::string matcher = "lexical";
  std::string match_file;
  std::string match_endpoint;
  double match_threshold = 0.5;
  bool swap_slots = false;
  std::size_t batch_size = 64;
  long timeout_ms = 30'000;
  int retries = 2;
};

struct SummarizeOptions {
  std::string method = "smm";
  double exponent = 5.0;
  double distance_threshold = 1.5;
  std::size_t n_clusters = 0;  // 0: threshold governs
  std::string linkage = "average";
  std::string metric = "euclidean";
  std::size_t max_key_points = 0;  // 0: no cap
};

struct EvaluateOptions {
  std::vector<std::string> summaries;
  std::string suite;
  std::vector<std::string> modes{"all"};
  bool stem = false;
};

struct SampleOptions {
  std::vector<double> levels{1.0, 0.75, 0.5};
  std::size_t samples = 10;
  std::size_t size = 0;  // 0: format default
};

struct ClusterEvalOptions {
  std::vector<std::string> assignments;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--format", o.dataset.format, "Dataset format: argkp, debate or json")
      ->check(CLI::IsMember({"argkp", "debate", "json"}))
      ->capture_default_str();
  cmd->add_option("--arguments", o.dataset.arguments, "ArgKP arguments.csv");
  cmd->add_option("--key-points", o.dataset.key_points, "ArgKP key_points.csv");
  cmd->add_option("--labels", o.dataset.labels, "ArgKP labels.csv");
  cmd->add_option("--input", o.dataset.input, "Debate CSV or corpus JSON");
  cmd->add_flag("--split-sentences", o.dataset.split_sentences,
                "Split multi-sentence arguments before processing");
  cmd->add_option("--output-dir", o.output_dir, "Directory for outputs")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
}

void add_matcher(CLI::App* cmd, BackendOptions& o) {
  cmd->add_option("--matcher", o.matcher, "Match backend: oracle, lexical, file, remote")
      ->check(CLI::IsMember({"oracle", "lexical", "file", "remote"}))
      ->capture_default_str();
  cmd->add_option("--match-file", o.match_file, "Precomputed match scores (JSON Lines)");
  cmd->add_option("--match-endpoint", o.match_endpoint, "Match service base URL");
  cmd->add_option("--match-threshold", o.match_threshold, "Decision threshold on match scores")
      ->capture_default_str();
  cmd->add_flag("--swap-slots", o.swap_slots,
                "Put the candidate in the argument slot for argument pairs");
  cmd->add_option("--batch-size", o.batch_size, "Remote batch size")->capture_default_str();
  cmd->add_option("--timeout-ms", o.timeout_ms, "Remote per-request timeout")->capture_default_str();
  cmd->add_option("--retries", o.retries, "Remote retries")->capture_default_str();
}

void add_embedder(CLI::App* cmd, BackendOptions& o) {
  cmd->add_option("--embed-backend", o.embed_backend,
                  "Embedding backend: oracle, lexical, file, remote")
      ->check(CLI::IsMember({"oracle", "lexical", "file", "remote"}))
      ->capture_default_str();
  cmd->add_option("--embeddings", o.embeddings, "Embedding file (JSON Lines)");
  cmd->add_option("--embed-endpoint", o.embed_endpoint, "Embedding service base URL");
  cmd->add_flag("--no-normalize", o.no_normalize, "Skip L2 normalisation before clustering");
}

RemoteConfig remote_config(const BackendOptions& o, const std::string& endpoint) {
  RemoteConfig r;
  r.endpoint = endpoint;
  r.batch_size = o.batch_size;
  r.timeout = std::chrono::milliseconds(o.timeout_ms);
  r.retries = o.retries;
  return r;
}

MatcherConfig matcher_config(const BackendOptions& o) {
  MatcherConfig m;
  m.kind = *parse_match_kind(o.matcher);
  m.decision_threshold = o.match_threshold;
  m.swap_slots = o.swap_slots;
  m.file = o.match_file;
  m.remote = remote_config(o, o.match_endpoint);
  if (m.kind == MatchKind::file && o.match_file.empty()) {
    fail(ErrorKind::usage, "--matcher file requires --match-file");
  }
  if (m.kind == MatchKind::remote && o.match_endpoint.empty()) {
    fail(ErrorKind::usage, "--matcher remote requires --match-endpoint");
  }
  return m;
}

EmbeddingBackendConfig embedding_config(const BackendOptions& o) {
  EmbeddingBackendConfig e;
  e.kind = *parse_embedding_kind(o.embed_backend);
  e.file = o.embeddings;
  e.remote = remote_config(o, o.embed_endpoint);
  if (e.kind == EmbeddingKind::file) {
    if (o.embeddings.empty()) fail(ErrorKind::usage, "--embed-backend file requires --embeddings");
    if (!fs::exists(o.embeddings)) fail(ErrorKind::input, "embeddings file '" + o.embeddings + "' not found");
  }
  if (e.kind == EmbeddingKind::remote && o.embed_endpoint.empty()) {
    fail(ErrorKind::usage, "--embed-backend remote requires --embed-endpoint");
  }
  return e;
}

std::vector<fs::path> dataset_files(const DatasetOptions& d) {
  if (d.format == "argkp") return {d.arguments, d.key_points, d.labels};
  return {d.input};
}

Corpus load_dataset(const DatasetOptions& d) {
  for (const fs::path& p : dataset_files(d)) {
    if (p.empty()) {
      fail(ErrorKind::usage, d.format == "argkp"
                                 ? "--format argkp needs --arguments, --key-points and --labels"
                                 : "--format " + d.format + " needs --input");
    }
    if (!fs::exists(p)) fail(ErrorKind::input, "input file '" + p.string() + "' not found");
  }
  Corpus corpus;
  if (d.format == "argkp") {
    corpus = load_argkp(d.arguments, d.key_points, d.labels);
  } else if (d.format == "debate") {
    corpus = load_debate(d.input);
  } else {
    corpus = load_corpus_json(d.input);
  }
  if (d.split_sentences) corpus = split_sentences(corpus);
  return corpus;
}

// File names keep ids readable while staying filesystem-safe.
std::string file_stem(std::string_view id) {
  std::string out;
  for (char c : id) {
    const bool safe = std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '-' || c == '_' || c == '.';
    out.push_back(safe ? c : '_');
  }
  return out;
}

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * fraction);
  return buf;
}

std::string fixed(double value, int digits = 3) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

class Manifest {
 public:
  Manifest(std::string command, std::string effective_config, fs::path output_dir)
      : command_(std::move(command)),
        config_(std::move(effective_config)),
        output_dir_(std::move(output_dir)) {}

  void input(const fs::path& p) { inputs_[p.string()] = hash(read_file(p)); }
  void output(const fs::path& p, std::string_view content) {
    outputs_[p.lexically_relative(output_dir_).generic_string()] = hash(content);
  }

  void write(const fs::path& dir) const {
    write_file_atomic(dir / (command_ + ".config.toml"), config_);
    json doc{{"command", command_},
             {"config", config_},
             {"hash", "fnv1a64"},
             {"rng", kRngName},
             {"inputs", inputs_},
             {"outputs", outputs_}};
    write_file_atomic(dir / "manifest.json", doc.dump(2) + "\n");
  }

 private:
  static std::string hash(std::string_view content) { return hex64(fnv1a64(content)); }

  std::string command_;
  std::string config_;
  fs::path output_dir_;
  std::map<std::string, std::string> inputs_;
  std::map<std::string, std::string> outputs_;
};

void record_inputs(Manifest& manifest, const DatasetOptions& d) {
  for (const fs::path& p : dataset_files(d)) manifest.input(p);
}

void write_output(Manifest& manifest, const fs::path& file, const std::string& content) {
  write_file_atomic(file, content);
  manifest.output(file, content);
}

int cmd_summarize(const CommonOptions& common, const BackendOptions& backends,
                  const SummarizeOptions& opts, const std::string& config, std::ostream& out) {
  ClusterConfig cluster_config;
  cluster_config.distance_threshold = opts.distance_threshold;
  cluster_config.linkage = *parse_linkage(opts.linkage);
  cluster_config.metric = *parse_metric(opts.metric);
  if (opts.n_clusters > 0) cluster_config.n_clusters = opts.n_clusters;
  validate(cluster_config);

  SelectionConfig selection;
  selection.method = *parse_selection_method(opts.method);
  selection.exponent = opts.exponent;
  if (opts.max_key_points > 0) selection.max_key_points = opts.max_key_points;

  const EmbeddingBackendConfig embed_config = embedding_config(backends);
  const MatcherConfig match_config = matcher_config(backends);
  const Corpus corpus = attach_catch_all(load_dataset(common.dataset));
  const Matcher matcher(match_config, &corpus);

  const auto& topics = corpus.topics();
  std::vector<GeneratedSummary> summaries(topics.size());
  std::vector<ClusterAssignment> assignments(topics.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(topics.size()); ++t) {
    try {
      const auto i = static_cast<std::size_t>(t);
      EmbeddingSet vectors = embed(embed_config, corpus, topics[i].id);
      if (!backends.no_normalize) vectors = normalize(vectors);
      assignments[i] = cluster(vectors, cluster_config);
      summaries[i] = select_representatives(assignments[i], corpus, matcher, selection);
    } catch (...) {
#pragma omp critical(kpa_cli_summarize)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  const fs::path dir = common.output_dir;
  Manifest manifest("summarize", config, common.output_dir);
  record_inputs(manifest, common.dataset);
  if (embed_config.kind == EmbeddingKind::file) manifest.input(embed_config.file);
  if (match_config.kind == MatchKind::file) manifest.input(match_config.file);
  out << "topic\tclusters\tentries\tavg_words\n";
  for (std::size_t i = 0; i < topics.size(); ++i) {
    const std::string stem = file_stem(topics[i].id);
    write_output(manifest, dir / "summaries" / (stem + ".json"),
                 summary_to_json(summaries[i]).dump(2) + "\n");
    write_output(manifest, dir / "clusters" / (stem + ".json"),
                 assignment_to_json(assignments[i]).dump(2) + "\n");
    out << topics[i].id << '\t' << assignments[i].clusters.size() << '\t'
        << summaries[i].entries.size() << '\t' << fixed(avg_words(summaries[i]), 1) << '\n';
  }
  manifest.write(dir);
  return kOk;
}

std::vector<EvalMode> parse_modes(const std::vector<std::string>& names) {
  std::set<EvalMode> modes;
  for (const std::string& n : names) {
    if (n == "all") {
      modes.insert({EvalMode::predicted, EvalMode::actual, EvalMode::rouge});
    } else if (n == "predicted") {
      modes.insert(EvalMode::predicted);
    } else if (n == "actual") {
      modes.insert(EvalMode::actual);
    } else if (n == "rouge") {
      modes.insert(EvalMode::rouge);
    } else {
      fail(ErrorKind::usage, "unknown evaluation mode '" + n + "'");
    }
  }
  return {modes.begin(), modes.end()};
}

// Mean of every numeric metric present in the reports.
json mean_report(const std::vector<EvaluationReport>& reports) {
  std::map<std::string, std::pair<double, std::size_t>> sums;
  auto add = [&](const std::string& key, double v) {
    sums[key].first += v;
    sums[key].second += 1;
  };
  for (const EvaluationReport& r : reports) {
    add("avg_words", r.avg_words);
    if (r.predicted_coverage) add("predicted_coverage", r.predicted_coverage->coverage);
    if (r.actual_coverage) add("actual_coverage", *r.actual_coverage);
    if (r.redundancy) add("redundancy", *r.redundancy);
    if (r.rouge) {
      add("rouge1", r.rouge->rouge1);
      add("rouge2", r.rouge->rouge2);
      add("rougeL", r.rouge->rougeL);
    }
  }
  json mean = json::object();
  for (const auto& [key, s] : sums) mean[key] = s.first / static_cast<double>(s.second);
  mean["n"] = reports.size();
  return mean;
}

void print_row(std::ostream& out, const std::string& label, const json& m) {
  auto cell = [&](const char* key, bool as_percent) -> std::string {
    if (!m.contains(key)) return "-";
    return as_percent ? percent(m[key].get<double>()) : fixed(m[key].get<double>());
  };
  out << label << '\t' << cell("predicted_coverage", true) << '\t' << cell("actual_coverage", true)
      << '\t' << cell("redundancy", true) << '\t' << cell("rouge1", false) << '\t'
      << cell("rouge2", false) << '\t' << cell("rougeL", false) << '\t'
      << fixed(m.value("avg_words", 0.0), 1) << '\n';
}

constexpr const char* kTableHeader =
    "\tpredicted\tactual\tredundancy\tR1\tR2\tRL\tavg_words\n";

int cmd_evaluate(const CommonOptions& common, const BackendOptions& backends,
                 const EvaluateOptions& opts, const std::string& config, std::ostream& out) {
  if (opts.summaries.empty() == opts.suite.empty()) {
    fail(ErrorKind::usage, "evaluate needs either --summaries or --suite");
  }
  const std::vector<EvalMode> modes = parse_modes(opts.modes);
  const bool needs_matcher =
      std::find(modes.begin(), modes.end(), EvalMode::predicted) != modes.end();
  const RougeOptions rouge_options{opts.stem};

  // Coverage datasets never contain catch-all key points, so suites are
  // scored against the plain corpus.
  Corpus corpus = load_dataset(common.dataset);
  if (opts.suite.empty()) corpus = attach_catch_all(corpus);
  std::optional<Matcher> matcher;
  if (needs_matcher) matcher.emplace(matcher_config(backends), &corpus);
  const Matcher* matcher_ptr = matcher ? &*matcher : nullptr;

  Manifest manifest("evaluate", config, common.output_dir);
  record_inputs(manifest, common.dataset);
  const fs::path dir = common.output_dir;

  if (!opts.suite.empty()) {
    if (!fs::exists(opts.suite)) fail(ErrorKind::input, "suite file '" + opts.suite + "' not found");
    manifest.input(opts.suite);
    std::map<std::pair<std::string, double>, std::vector<EvaluationReport>> cells;
    std::vector<std::pair<std::string, double>> order;
    for (const json& line : read_jsonl(opts.suite)) {
      const PseudoSummary pseudo = pseudo_summary_from_json(line);
      const auto key = std::make_pair(pseudo.spec.topic_id, pseudo.spec.level);
      if (!cells.contains(key)) order.push_back(key);
      cells[key].push_back(
          evaluate(to_summary(pseudo, corpus), corpus, modes, matcher_ptr, rouge_options));
    }
    json doc{{"cells", json::array()}};
    out << "topic@level" << kTableHeader;
    for (const auto& key : order) {
      const json mean = mean_report(cells[key]);
      doc["cells"].push_back({{"topic_id", key.first}, {"level", key.second}, {"mean", mean}});
      print_row(out, key.first + "@" + fixed(key.second, 2), mean);
    }
    write_output(manifest, dir / "suite_report.json", doc.dump(2) + "\n");
    manifest.write(dir);
    return kOk;
  }

  std::vector<GeneratedSummary> summaries;
  std::vector<std::string> unresolved;
  for (const std::string& file : opts.summaries) {
    if (!fs::exists(file)) fail(ErrorKind::input, "summary file '" + file + "' not found");
    manifest.input(file);
    summaries.push_back(summary_from_json(json::parse(read_file(file))));
    if (corpus.find_topic(summaries.back().topic_id) == nullptr) {
      unresolved.push_back(summaries.back().topic_id);
    }
  }
  if (!unresolved.empty()) {
    std::string msg = "summary topics not in corpus:";
    for (const auto& id : unresolved) msg += " " + id;
    fail(ErrorKind::input, msg);
  }
  std::vector<EvaluationReport> reports;
  for (const GeneratedSummary& s : summaries) {
    reports.push_back(evaluate(s, corpus, modes, matcher_ptr, rouge_options));
  }
  json doc{{"topics", json::array()}, {"mean", mean_report(reports)}};
  out << "topic" << kTableHeader;
  for (const EvaluationReport& r : reports) {
    const json j = report_to_json(r);
    doc["topics"].push_back(j);
    json flat = j;
    if (j.contains("predicted_coverage")) flat["predicted_coverage"] = j["predicted_coverage"]["coverage"];
    print_row(out, r.topic_id, flat);
  }
  print_row(out, "mean", doc["mean"]);
  write_output(manifest, dir / "report.json", doc.dump(2) + "\n");
  manifest.write(dir);
  return kOk;
}

int cmd_sample_coverage(const CommonOptions& common, const SampleOptions& opts,
                        const std::string& config, std::ostream& out) {
  const Corpus corpus = load_dataset(common.dataset);
  SuiteConfig suite;
  suite.levels = opts.levels;
  suite.n_samples = opts.samples;
  suite.seed = common.seed;
  suite.size = opts.size > 0 ? opts.size : (common.dataset.format == "debate" ? 75 : 25);
  const std::vector<PseudoSummary> samples = generate_suite(corpus, suite);

  std::string content;
  for (const PseudoSummary& p : samples) content += pseudo_summary_to_json(p).dump() + "\n";
  const fs::path dir = common.output_dir;
  Manifest manifest("sample-coverage", config, common.output_dir);
  record_inputs(manifest, common.dataset);
  write_output(manifest, dir / "coverage_suite.jsonl", content);
  manifest.write(dir);
  out << samples.size() << " pseudo-summaries (" << corpus.topics().size() << " topics x "
      << suite.levels.size() << " levels x " << suite.n_samples << " samples, size "
      << suite.size << ")\n";
  return kOk;
}

int cmd_cluster_eval(const CommonOptions& common, const ClusterEvalOptions& opts,
                     const std::string& config, std::ostream& out) {
  for (const std::string& f : opts.assignments) {
    if (!fs::exists(f)) fail(ErrorKind::input, "assignment file '" + f + "' not found");
  }
  const Corpus corpus = load_dataset(common.dataset);
  Manifest manifest("cluster-eval", config, common.output_dir);
  record_inputs(manifest, common.dataset);
  json rows = json::array();
  out << "assignment\ttopic\tn\trand\tadjusted_rand\n";
  for (const std::string& f : opts.assignments) {
    manifest.input(f);
    json doc;
    try {
      doc = json::parse(read_file(f));
    } catch (const json::parse_error& e) {
      fail(ErrorKind::parse, f + ": " + e.what());
    }
    const ClusterAssignment assignment = assignment_from_json(doc);
    if (assignment.clusters.empty()) fail(ErrorKind::input, f + ": no clusters");
    const Argument* first = corpus.find_argument(assignment.clusters.front().front());
    if (first == nullptr) fail(ErrorKind::input, f + ": ids do not resolve in the corpus");
    for (const auto& c : assignment.clusters) {
      for (const auto& id : c) {
        const Argument* a = corpus.find_argument(id);
        if (a == nullptr || a->topic_id != first->topic_id) {
          fail(ErrorKind::input, f + ": argument '" + id + "' is unknown or from another topic");
        }
      }
    }
    const RandScores scores = rand_index(assignment, gold_clusters(corpus, first->topic_id));
    rows.push_back({{"assignment", f},
                    {"topic_id", first->topic_id},
                    {"n", scores.n_retained},
                    {"rand", scores.rand},
                    {"adjusted_rand", scores.adjusted_rand}});
    out << f << '\t' << first->topic_id << '\t' << scores.n_retained << '\t'
        << fixed(scores.rand) << '\t' << fixed(scores.adjusted_rand) << '\n';
  }
  write_output(manifest, fs::path(common.output_dir) / "cluster_eval.json",
               json{{"results", rows}}.dump(2) + "\n");
  manifest.write(common.output_dir);
  return kOk;
}

// The executed subcommand's options as a config file that `--config` accepts.
std::string effective_config(const CLI::App* cmd) {
  std::istringstream lines(cmd->config_to_str(true, false));
  std::string out = "[" + cmd->get_name() + "]\n";
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty()) out += line + "\n";
  }
  return out;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::transport: return kBackendError;
    case ErrorKind::internal: return kInternalError;
    default: return kInputError;
  }
}

void report_error(std::ostream& err, std::string_view kind, std::string_view message) {
  err << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extractive key point generation and coverage evaluation", "kpa"};
  app.set_config("--config", "", "TOML config file; command-line flags take precedence");
  app.require_subcommand(1);

  CommonOptions common;
  BackendOptions backends;
  SummarizeOptions summarize;
  EvaluateOptions evaluate_opts;
  SampleOptions sample;
  ClusterEvalOptions cluster_eval;

  CLI::App* sum_cmd = app.add_subcommand("summarize", "Generate key point summaries per topic");
  add_common(sum_cmd, common);
  add_embedder(sum_cmd, backends);
  add_matcher(sum_cmd, backends);
  sum_cmd->add_option("--method", summarize.method, "Selection method: smm or ssf")
      ->check(CLI::IsMember({"smm", "ssf"}))
      ->capture_default_str();
  sum_cmd->add_option("--exponent", summarize.exponent, "SSF exponent")->capture_default_str();
  sum_cmd->add_option("--distance-threshold", summarize.distance_threshold,
                      "Agglomerative clustering distance threshold")
      ->capture_default_str();
  sum_cmd->add_option("--n-clusters", summarize.n_clusters,
                      "Fixed number of clusters (overrides the threshold; 0 = off)")
      ->capture_default_str();
  sum_cmd->add_option("--linkage", summarize.linkage, "average, complete or ward")
      ->check(CLI::IsMember({"average", "complete", "ward"}))
      ->capture_default_str();
  sum_cmd->add_option("--metric", summarize.metric, "euclidean or cosine")
      ->check(CLI::IsMember({"euclidean", "cosine"}))
      ->capture_default_str();
  sum_cmd->add_option("--max-key-points", summarize.max_key_points,
                      "Keep only the largest K clusters' representatives (0 = no cap)")
      ->capture_default_str();

  CLI::App* eval_cmd = app.add_subcommand("evaluate", "Score summaries or a coverage suite");
  add_common(eval_cmd, common);
  add_matcher(eval_cmd, backends);
  eval_cmd->add_option("--summaries", evaluate_opts.summaries, "Summary JSON files");
  eval_cmd->add_option("--suite", evaluate_opts.suite, "Coverage suite JSON Lines file");
  eval_cmd->add_option("--mode", evaluate_opts.modes, "predicted, actual, rouge or all")
      ->capture_default_str();
  eval_cmd->add_flag("--stem", evaluate_opts.stem, "Porter-stem ROUGE tokens longer than 3");

  CLI::App* sample_cmd =
      app.add_subcommand("sample-coverage", "Build pseudo-summaries at fixed coverage levels");
  add_common(sample_cmd, common);
  sample_cmd->add_option("--levels", sample.levels, "Coverage levels in (0, 1]")
      ->capture_default_str();
  sample_cmd->add_option("--samples", sample.samples, "Samples per topic and level")
      ->capture_default_str();
  sample_cmd->add_option("--size", sample.size,
                         "Arguments per pseudo-summary (0 = 25, or 75 for debate)")
      ->capture_default_str();

  CLI::App* ce_cmd = app.add_subcommand("cluster-eval", "Rand / adjusted Rand of cluster files");
  add_common(ce_cmd, common);
  ce_cmd->add_option("--assignment", cluster_eval.assignments, "Cluster assignment JSON files")
      ->required();

  std::vector<std::string> argv_tail(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv_tail.begin(), argv_tail.end());
  try {
    app.parse(argv_tail);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "FileError") {
      report_error(err, "input", e.what());
      return kInputError;
    }
    report_error(err, "usage", e.what());
    return kUsage;
  }

  try {
    if (sum_cmd->parsed()) {
      return cmd_summarize(common, backends, summarize, effective_config(sum_cmd), out);
    }
    if (eval_cmd->parsed()) {
      return cmd_evaluate(common, backends, evaluate_opts, effective_config(eval_cmd), out);
    }
    if (sample_cmd->parsed()) {
      return cmd_sample_coverage(common, sample, effective_config(sample_cmd), out);
    }
    if (ce_cmd->parsed()) {
      return cmd_cluster_eval(common, cluster_eval, effective_config(ce_cmd), out);
    }
    report_error(err, "usage", "no command");
    return kUsage;
  } catch (const Error& e) {
    report_error(err, to_string(e.kind()), e.what());
    return exit_code_for(e.kind());
  } catch (const fs::filesystem_error& e) {
    report_error(err, "input", e.what());
    return kInputError;
  } catch (const json::exception& e) {
    report_error(err, "parse", e.what());
    return kInputError;
  } catch (const std::exception& e) {
    report_error(err, "internal", e.what());
    return kInternalError;
  }
}

}  // namespace kpa::cli
