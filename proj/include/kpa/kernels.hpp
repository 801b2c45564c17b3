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

#include <cstddef>
#include <span>
#include <vector>

namespace kpa {

enum class Metric { euclidean, cosine };

/// Dense symmetric n x n matrix with a zero diagonal.
struct DistanceMatrix {
  std::size_t n = 0;
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
  double& at(std::size_t i, std::size_t j) { return values[i * n + j]; }
};

double pair_distance(std::span<const double> a, std::span<const double> b, Metric metric);

/// OpenMP kernel over the upper triangle. `rows` is row-major n x dim.
DistanceMatrix pairwise_distances(std::span<const double> rows, std::size_t dim, Metric metric);

/// Single-threaded reference; bit-identical to pairwise_distances.
DistanceMatrix pairwise_distances_serial(std::span<const double> rows, std::size_t dim,
                                         Metric metric);

}  // namespace kpa
