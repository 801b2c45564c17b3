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

#include "kpa/kernels.hpp"

#include <cmath>

namespace kpa {

double pair_distance(std::span<const double> a, std::span<const double> b, Metric metric) {
  if (metric == Metric::euclidean) {
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double d = a[k] - b[k];
      sum += d * d;
    }
    return std::sqrt(sum);
  }
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    dot += a[k] * b[k];
    na += a[k] * a[k];
    nb += b[k] * b[k];
  }
  // Zero vectors yield NaN; callers reject non-finite distances.
  return 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
}

DistanceMatrix pairwise_distances(std::span<const double> rows, std::size_t dim, Metric metric) {
  const std::size_t n = dim == 0 ? 0 : rows.size() / dim;
  DistanceMatrix out{n, std::vector<double>(n * n, 0.0)};
  const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t si = 0; si < sn; ++si) {
    const auto i = static_cast<std::size_t>(si);
    const auto a = rows.subspan(i * dim, dim);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = pair_distance(a, rows.subspan(j * dim, dim), metric);
      out.values[i * n + j] = d;
      out.values[j * n + i] = d;
    }
  }
  return out;
}

DistanceMatrix pairwise_distances_serial(std::span<const double> rows, std::size_t dim,
                                         Metric metric) {
  const std::size_t n = dim == 0 ? 0 : rows.size() / dim;
  DistanceMatrix out{n, std::vector<double>(n * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = pair_distance(rows.subspan(i * dim, dim), rows.subspan(j * dim, dim), metric);
      out.at(i, j) = d;
      out.at(j, i) = d;
    }
  }
  return out;
}

}  // namespace kpa
