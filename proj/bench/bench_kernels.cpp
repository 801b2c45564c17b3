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


#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "kpa/clustering.hpp"
#include "kpa/kernels.hpp"
#include "reference/naive_agglomerative.hpp"

namespace {

std::vector<double> random_rows(std::size_t n, std::size_t dim) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> gauss;
  std::vector<double> rows(n * dim);
  for (double& v : rows) v = gauss(rng);
  return rows;
}

void BM_PairwiseParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto dim = static_cast<std::size_t>(state.range(1));
  const auto rows = random_rows(n, dim);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kpa::pairwise_distances(rows, dim, kpa::Metric::euclidean));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n * (n - 1) / 2));
}

void BM_PairwiseSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto dim = static_cast<std::size_t>(state.range(1));
  const auto rows = random_rows(n, dim);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kpa::pairwise_distances_serial(rows, dim, kpa::Metric::euclidean));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n * (n - 1) / 2));
}

struct Points {
  std::vector<std::string> ids;
  std::vector<std::vector<double>> points;
  kpa::EmbeddingSet set;
};

Points random_points(std::size_t n, std::size_t dim) {
  Points p;
  const auto rows = random_rows(n, dim);
  for (std::size_t i = 0; i < n; ++i) {
    p.ids.push_back("p" + std::to_string(i));
    p.points.emplace_back(rows.begin() + static_cast<std::ptrdiff_t>(i * dim),
                          rows.begin() + static_cast<std::ptrdiff_t>((i + 1) * dim));
  }
  p.set = kpa::EmbeddingSet(dim, p.ids, rows);
  return p;
}

constexpr double kThreshold = 4.0;

void BM_ClusterFast(benchmark::State& state) {
  const auto p = random_points(static_cast<std::size_t>(state.range(0)), 16);
  kpa::ClusterConfig config;
  config.distance_threshold = kThreshold;
  for (auto _ : state) benchmark::DoNotOptimize(kpa::cluster(p.set, config));
}

void BM_ClusterNaive(benchmark::State& state) {
  const auto p = random_points(static_cast<std::size_t>(state.range(0)), 16);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kpa::reference::naive_agglomerative(
        p.ids, p.points, kpa::reference::NaiveLinkage::average,
        kpa::reference::NaiveMetric::euclidean, kThreshold));
  }
}

}  // namespace

BENCHMARK(BM_PairwiseParallel)->Args({256, 64})->Args({1024, 64})->Args({1024, 768});
BENCHMARK(BM_PairwiseSerial)->Args({256, 64})->Args({1024, 64})->Args({1024, 768});
BENCHMARK(BM_ClusterFast)->Arg(20)->Arg(60)->Arg(500)->Arg(2000);
BENCHMARK(BM_ClusterNaive)->Arg(20)->Arg(60);

BENCHMARK_MAIN();
