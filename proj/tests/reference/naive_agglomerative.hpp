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


// Textbook agglomeration: every step recomputes every cluster-pair linkage
// from the original points and merges the closest pair. Quadratic memory,
// cubic-or-worse time; only for checking kpa::cluster.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace kpa::reference {

enum class NaiveLinkage { average, complete, ward };
enum class NaiveMetric { euclidean, cosine };

using Partition = std::set<std::set<std::string>>;

inline double naive_distance(const std::vector<double>& a, const std::vector<double>& b,
                             NaiveMetric metric) {
  if (metric == NaiveMetric::euclidean) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return std::sqrt(s);
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    dot += a[k] * b[k];
    na += a[k] * a[k];
    nb += b[k] * b[k];
  }
  return 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
}

inline double linkage_distance(const std::vector<std::size_t>& x,
                               const std::vector<std::size_t>& y,
                               const std::vector<std::vector<double>>& points,
                               NaiveLinkage linkage, NaiveMetric metric) {
  if (linkage == NaiveLinkage::ward) {
    const std::size_t dim = points.front().size();
    std::vector<double> cx(dim, 0.0), cy(dim, 0.0);
    for (std::size_t i : x) for (std::size_t k = 0; k < dim; ++k) cx[k] += points[i][k];
    for (std::size_t i : y) for (std::size_t k = 0; k < dim; ++k) cy[k] += points[i][k];
    double s = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double d = cx[k] / x.size() - cy[k] / y.size();
      s += d * d;
    }
    const double nx = static_cast<double>(x.size());
    const double ny = static_cast<double>(y.size());
    return std::sqrt(2.0 * nx * ny / (nx + ny) * s);
  }
  double acc = linkage == NaiveLinkage::average ? 0.0 : -1.0;
  for (std::size_t i : x) {
    for (std::size_t j : y) {
      const double d = naive_distance(points[i], points[j], metric);
      acc = linkage == NaiveLinkage::average ? acc + d : std::max(acc, d);
    }
  }
  if (linkage == NaiveLinkage::average) acc /= static_cast<double>(x.size() * y.size());
  return acc;
}

// Points are ranked by id; a cluster's key is its smallest member rank and
// ties on distance go to the smallest (key_lo, key_hi). Merging continues
// while the closest distance is <= threshold, or until n_clusters remain.
inline Partition naive_agglomerative(const std::vector<std::string>& ids,
                                     const std::vector<std::vector<double>>& points,
                                     NaiveLinkage linkage, NaiveMetric metric, double threshold,
                                     std::optional<std::size_t> n_clusters = std::nullopt) {
  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return ids[a] < ids[b]; });
  std::vector<std::vector<double>> ranked;
  for (std::size_t i : order) ranked.push_back(points[i]);

  std::vector<std::vector<std::size_t>> clusters;
  for (std::size_t r = 0; r < ranked.size(); ++r) clusters.push_back({r});

  while (clusters.size() > 1) {
    if (n_clusters && clusters.size() <= *n_clusters) break;
    double best = 0.0;
    std::size_t bx = 0, by = 0;
    bool found = false;
    for (std::size_t x = 0; x < clusters.size(); ++x) {
      for (std::size_t y = x + 1; y < clusters.size(); ++y) {
        const double d = linkage_distance(clusters[x], clusters[y], ranked, linkage, metric);
        const std::size_t kx = clusters[x].front(), ky = clusters[y].front();
        const std::size_t lo = std::min(kx, ky), hi = std::max(kx, ky);
        const std::size_t blo = std::min(clusters[bx].front(), clusters[by].front());
        const std::size_t bhi = std::max(clusters[bx].front(), clusters[by].front());
        if (!found || d < best || (d == best && (lo < blo || (lo == blo && hi < bhi)))) {
          best = d;
          bx = x;
          by = y;
          found = true;
        }
      }
    }
    if (!n_clusters && best > threshold) break;
    auto& into = clusters[bx];
    into.insert(into.end(), clusters[by].begin(), clusters[by].end());
    std::sort(into.begin(), into.end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(by));
  }

  Partition out;
  for (const auto& c : clusters) {
    std::set<std::string> members;
    for (std::size_t r : c) members.insert(ids[order[r]]);
    out.insert(std::move(members));
  }
  return out;
}

}  // namespace kpa::reference
