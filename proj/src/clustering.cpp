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

#include "kpa/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kpa/error.hpp"

namespace kpa {

void validate(const ClusterConfig& config) {
  if (!config.n_clusters &&
      (!std::isfinite(config.distance_threshold) || config.distance_threshold < 0.0)) {
    fail(ErrorKind::usage, "distance threshold must be a finite non-negative number");
  }
  if (config.n_clusters && *config.n_clusters == 0) {
    fail(ErrorKind::usage, "n_clusters must be positive");
  }
  if (config.linkage == Linkage::ward && config.metric != Metric::euclidean) {
    fail(ErrorKind::usage, "ward linkage requires the euclidean metric");
  }
}

namespace {

// Candidate merge: clusters are identified by their smallest member rank,
// which is also the slot they occupy, so (lo, hi) is the tie-break key.
struct Candidate {
  double distance;
  std::size_t lo;
  std::size_t hi;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.distance != b.distance) return a.distance < b.distance;
  if (a.lo != b.lo) return a.lo < b.lo;
  return a.hi < b.hi;
}

Candidate make_candidate(double d, std::size_t i, std::size_t j) {
  return Candidate{d, std::min(i, j), std::max(i, j)};
}

class Agglomerator {
 public:
  Agglomerator(DistanceMatrix distances, Linkage linkage)
      : d_(std::move(distances)),
        linkage_(linkage),
        n_(d_.n),
        active_(n_, true),
        size_(n_, 1),
        nn_(n_),
        members_(n_) {
    for (std::size_t i = 0; i < n_; ++i) members_[i] = {i};
    for (std::size_t i = 0; i < n_; ++i) rescan(i);
  }

  std::size_t active_count() const { return n_ - merged_; }

  std::optional<Candidate> closest() const {
    std::optional<Candidate> best;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!active_[i] || !nn_[i]) continue;
      if (!best || better(*nn_[i], *best)) best = nn_[i];
    }
    return best;
  }

  void merge(std::size_t lo, std::size_t hi) {
    const double d_lohi = d_.at(lo, hi);
    const auto n_lo = static_cast<double>(size_[lo]);
    const auto n_hi = static_cast<double>(size_[hi]);
    for (std::size_t k = 0; k < n_; ++k) {
      if (!active_[k] || k == lo || k == hi) continue;
      const double merged = update(d_.at(k, lo), d_.at(k, hi), d_lohi, n_lo, n_hi,
                                   static_cast<double>(size_[k]));
      d_.at(k, lo) = merged;
      d_.at(lo, k) = merged;
    }
    active_[hi] = false;
    size_[lo] += size_[hi];
    members_[lo].insert(members_[lo].end(), members_[hi].begin(), members_[hi].end());
    members_[hi].clear();
    nn_[hi].reset();
    ++merged_;

    rescan(lo);
    for (std::size_t k = 0; k < n_; ++k) {
      if (!active_[k] || k == lo) continue;
      const auto& current = nn_[k];
      if (!current || current->lo == hi || current->hi == hi || current->lo == lo ||
          current->hi == lo) {
        rescan(k);
      } else {
        // Only d(k, lo) changed in row k.
        const Candidate c = make_candidate(d_.at(k, lo), k, lo);
        if (better(c, *current)) nn_[k] = c;
      }
    }
  }

  std::vector<std::vector<std::size_t>> clusters() const {
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < n_; ++i) {
      if (active_[i]) out.push_back(members_[i]);
    }
    return out;
  }

 private:
  double update(double d_klo, double d_khi, double d_lohi, double n_lo, double n_hi,
                double n_k) const {
    switch (linkage_) {
      case Linkage::average:
        return (n_lo * d_klo + n_hi * d_khi) / (n_lo + n_hi);
      case Linkage::complete:
        return std::max(d_klo, d_khi);
      case Linkage::ward: {
        const double sq = ((n_lo + n_k) * d_klo * d_klo + (n_hi + n_k) * d_khi * d_khi -
                           n_k * d_lohi * d_lohi) /
                          (n_lo + n_hi + n_k);
        return std::sqrt(std::max(0.0, sq));
      }
    }
    return d_klo;
  }

  void rescan(std::size_t i) {
    std::optional<Candidate> best;
    for (std::size_t j = 0; j < n_; ++j) {
      if (j == i || !active_[j]) continue;
      const Candidate c = make_candidate(d_.at(i, j), i, j);
      if (!best || better(c, *best)) best = c;
    }
    nn_[i] = best;
  }

  DistanceMatrix d_;
  Linkage linkage_;
  std::size_t n_;
  std::size_t merged_ = 0;
  std::vector<bool> active_;
  std::vector<std::size_t> size_;
  std::vector<std::optional<Candidate>> nn_;
  std::vector<std::vector<std::size_t>> members_;
};

}  // namespace

ClusterAssignment canonical_order(std::vector<std::vector<std::string>> clusters) {
  for (auto& c : clusters) std::sort(c.begin(), c.end());
  std::sort(clusters.begin(), clusters.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  return ClusterAssignment{std::move(clusters)};
}

ClusterAssignment cluster(const EmbeddingSet& embeddings, const ClusterConfig& config) {
  validate(config);
  const std::size_t n = embeddings.size();
  if (n == 0) fail(ErrorKind::input, "cluster: no embeddings");
  if (config.n_clusters && *config.n_clusters > n) {
    fail(ErrorKind::usage, "n_clusters (" + std::to_string(*config.n_clusters) +
                               ") exceeds number of points (" + std::to_string(n) + ")");
  }

  // Points are processed in id order so the tie rule and the result do not
  // depend on input order.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return embeddings.ids()[a] < embeddings.ids()[b];
  });
  const std::size_t dim = embeddings.dim();
  std::vector<double> rows;
  rows.reserve(n * dim);
  for (std::size_t i : order) {
    const auto r = embeddings.row(i);
    rows.insert(rows.end(), r.begin(), r.end());
  }

  DistanceMatrix distances = pairwise_distances(rows, dim, config.metric);
  for (double v : distances.values) {
    if (!std::isfinite(v)) fail(ErrorKind::format, "cluster: non-finite distance");
  }

  Agglomerator agg(std::move(distances), config.linkage);
  while (agg.active_count() > 1) {
    const auto next = agg.closest();
    if (config.n_clusters) {
      if (agg.active_count() <= *config.n_clusters) break;
    } else if (next->distance > config.distance_threshold) {
      break;
    }
    agg.merge(next->lo, next->hi);
  }

  std::vector<std::vector<std::string>> clusters;
  for (const auto& members : agg.clusters()) {
    std::vector<std::string> ids;
    for (std::size_t rank : members) ids.push_back(embeddings.ids()[order[rank]]);
    clusters.push_back(std::move(ids));
  }
  return canonical_order(std::move(clusters));
}

nlohmann::json assignment_to_json(const ClusterAssignment& assignment) {
  return nlohmann::json{{"clusters", assignment.clusters}};
}

ClusterAssignment assignment_from_json(const nlohmann::json& doc) {
  ClusterAssignment out;
  try {
    out.clusters = doc.at("clusters").get<std::vector<std::vector<std::string>>>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse, std::string("cluster assignment: ") + e.what());
  }
  std::vector<std::string> seen;
  for (const auto& c : out.clusters) {
    if (c.empty()) fail(ErrorKind::format, "cluster assignment contains an empty cluster");
    seen.insert(seen.end(), c.begin(), c.end());
  }
  std::sort(seen.begin(), seen.end());
  const auto dup = std::adjacent_find(seen.begin(), seen.end());
  if (dup != seen.end()) {
    fail(ErrorKind::format, "cluster assignment lists '" + *dup + "' more than once");
  }
  return out;
}

std::map<std::string, std::string> gold_clusters(const Corpus& corpus,
                                                 std::string_view topic_id) {
  std::map<std::string, std::string> gold;
  for (const Argument* a : corpus.arguments_of(topic_id)) {
    for (const std::string& kp : corpus.positive_key_points(a->id)) {
      if (corpus.find_key_point(kp)->is_catch_all) continue;
      gold.emplace(a->id, kp);  // positives are sorted, first wins
      break;
    }
  }
  return gold;
}

RandScores rand_index(const ClusterAssignment& predicted,
                      const std::map<std::string, std::string>& gold) {
  // Contingency table between predicted clusters and gold groups.
  std::map<std::string, std::size_t> gold_ids;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> cells;
  std::vector<std::size_t> row_sums(predicted.clusters.size(), 0);
  std::map<std::size_t, std::size_t> col_sums;
  std::size_t n = 0;
  for (std::size_t c = 0; c < predicted.clusters.size(); ++c) {
    for (const std::string& id : predicted.clusters[c]) {
      const auto it = gold.find(id);
      if (it == gold.end()) continue;
      const std::size_t g = gold_ids.try_emplace(it->second, gold_ids.size()).first->second;
      ++cells[{c, g}];
      ++row_sums[c];
      ++col_sums[g];
      ++n;
    }
  }
  if (n == 0) fail(ErrorKind::input, "no labeled arguments");

  auto pairs = [](std::size_t k) { return static_cast<double>(k) * (static_cast<double>(k) - 1) / 2; };
  double sum_cells = 0.0;
  for (const auto& [key, count] : cells) sum_cells += pairs(count);
  double sum_rows = 0.0;
  for (std::size_t r : row_sums) sum_rows += pairs(r);
  double sum_cols = 0.0;
  for (const auto& [g, count] : col_sums) sum_cols += pairs(count);
  const double total = pairs(n);

  RandScores out;
  out.n_retained = n;
  if (total == 0.0) {
    out.rand = 1.0;
    out.adjusted_rand = 1.0;
    return out;
  }
  // Agreements: pairs together in both plus pairs apart in both.
  out.rand = (total + 2.0 * sum_cells - sum_rows - sum_cols) / total;
  const double expected = sum_rows * sum_cols / total;
  const double max_index = 0.5 * (sum_rows + sum_cols);
  const double denom = max_index - expected;
  out.adjusted_rand = denom == 0.0 ? 1.0 : (sum_cells - expected) / denom;
  return out;
}

std::optional<Linkage> parse_linkage(std::string_view name) {
  if (name == "average") return Linkage::average;
  if (name == "complete") return Linkage::complete;
  if (name == "ward" || name == "ward-like") return Linkage::ward;
  return std::nullopt;
}

std::optional<Metric> parse_metric(std::string_view name) {
  if (name == "euclidean") return Metric::euclidean;
  if (name == "cosine" || name == "cosine-distance") return Metric::cosine;
  return std::nullopt;
}

std::string_view to_string(Linkage linkage) {
  switch (linkage) {
    case Linkage::average: return "average";
    case Linkage::complete: return "complete";
    case Linkage::ward: return "ward";
  }
  return "unknown";
}

std::string_view to_string(Metric metric) {
  return metric == Metric::euclidean ? "euclidean" : "cosine";
}

}  // namespace kpa
