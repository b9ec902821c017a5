// Copyright 2026 The docrag Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <vector>

#include "docrag/kernels.hpp"
#include "docrag/rng.hpp"

namespace {

using namespace docrag;

std::vector<kernels::Point2> random_points(std::size_t n) {
  Rng rng(7);
  std::vector<kernels::Point2> pts(n);
  for (auto& p : pts) p = {rng.unit(), rng.unit()};
  return pts;
}

std::vector<double> random_matrix(std::size_t rows, std::size_t dim) {
  Rng rng(11);
  std::vector<double> m(rows * dim);
  for (auto& v : m) v = rng.uniform(-1, 1);
  return m;
}

template <auto Fn>
void BM_RegionQueries(benchmark::State& state) {
  const auto pts = random_points(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(pts, 0.01));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

template <auto Fn>
void BM_CosineScores(benchmark::State& state) {
  const std::size_t rows = static_cast<std::size_t>(state.range(0));
  const std::size_t dim = 128;
  const auto m = random_matrix(rows, dim);
  const auto q = random_matrix(1, dim);
  std::vector<double> norms(rows, 1.0), out(rows);
  for (auto _ : state) {
    Fn(q, 1.0, kernels::MatrixView{m, dim}, norms, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Fn>
void BM_AssignNearest(benchmark::State& state) {
  const std::size_t rows = static_cast<std::size_t>(state.range(0));
  const std::size_t dim = 128, k = rows / 5;
  const auto pts = random_matrix(rows, dim);
  const auto cents = random_matrix(k, dim);
  std::vector<std::size_t> labels(rows);
  std::vector<double> d2(rows);
  for (auto _ : state) {
    Fn(kernels::MatrixView{pts, dim}, kernels::MatrixView{cents, dim}, labels, d2);
    benchmark::DoNotOptimize(labels.data());
  }
}

BENCHMARK(BM_RegionQueries<kernels::serial::region_queries>)->Name("region_queries/serial")->Arg(500)->Arg(2000);
BENCHMARK(BM_RegionQueries<kernels::omp::region_queries>)->Name("region_queries/omp")->Arg(500)->Arg(2000);
BENCHMARK(BM_CosineScores<kernels::serial::cosine_scores>)->Name("cosine_scores/serial")->Arg(10000)->Arg(100000);
BENCHMARK(BM_CosineScores<kernels::omp::cosine_scores>)->Name("cosine_scores/omp")->Arg(10000)->Arg(100000);
BENCHMARK(BM_AssignNearest<kernels::serial::assign_nearest>)->Name("assign_nearest/serial")->Arg(1000);
BENCHMARK(BM_AssignNearest<kernels::omp::assign_nearest>)->Name("assign_nearest/omp")->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
