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

#include "docrag/kernels.hpp"

#include <gtest/gtest.h>
#include <omp.h>

#include "docrag/rng.hpp"
#include "support.hpp"

namespace docrag {
namespace {

class KernelsTest : public ::testing::Test {
 protected:
  void SetUp() override {
    saved_ = omp_get_max_threads();
    omp_set_num_threads(4);
  }
  void TearDown() override { omp_set_num_threads(saved_); }

 private:
  int saved_ = 1;
};

std::vector<double> random_rows(Rng& rng, std::size_t rows, std::size_t dim) {
  std::vector<double> m(rows * dim);
  for (auto& v : m) v = rng.uniform(-1, 1);
  return m;
}

TEST_F(KernelsTest, RegionQueriesParallelMatchesSerial) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pts = testing::random_point_set(rng, 1 + rng.below(300));
    for (double eps : {0.01, 0.05}) {
      EXPECT_EQ(kernels::serial::region_queries(pts, eps),
                kernels::omp::region_queries(pts, eps));
    }
  }
}

TEST_F(KernelsTest, RegionQueriesIncludeSelfAndAreSorted) {
  Rng rng(4);
  const auto pts = testing::random_point_set(rng, 150);
  const auto nb = kernels::serial::region_queries(pts, 0.03);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_TRUE(std::is_sorted(nb[i].begin(), nb[i].end()));
    EXPECT_TRUE(std::binary_search(nb[i].begin(), nb[i].end(), i));
    for (std::size_t j : nb[i]) {
      EXPECT_TRUE(std::binary_search(nb[j].begin(), nb[j].end(), i)) << "symmetry";
    }
  }
}

TEST_F(KernelsTest, CosineScoresParallelMatchesSerial) {
  Rng rng(5);
  const std::size_t rows = 777, dim = 33;
  const auto m = random_rows(rng, rows, dim);
  const auto q = random_rows(rng, 1, dim);
  std::vector<double> norms(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    norms[i] = std::sqrt(kernels::dot({m.data() + i * dim, dim}, {m.data() + i * dim, dim}));
  }
  const double qn = std::sqrt(kernels::dot(q, q));
  std::vector<double> a(rows), b(rows);
  kernels::serial::cosine_scores(q, qn, {m, dim}, norms, a);
  kernels::omp::cosine_scores(q, qn, {m, dim}, norms, b);
  EXPECT_EQ(a, b);
  for (std::size_t i = 0; i < rows; ++i) {
    long double d = 0, nq = 0, nr = 0;
    for (std::size_t j = 0; j < dim; ++j) {
      d += static_cast<long double>(q[j]) * m[i * dim + j];
      nq += static_cast<long double>(q[j]) * q[j];
      nr += static_cast<long double>(m[i * dim + j]) * m[i * dim + j];
    }
    EXPECT_NEAR(a[i], static_cast<double>(d / std::sqrt(nq * nr)), 1e-12);
  }
}

TEST_F(KernelsTest, AssignNearestParallelMatchesSerialAndOracle) {
  Rng rng(6);
  const std::size_t n = 500, k = 17, dim = 8;
  const auto pts = random_rows(rng, n, dim);
  const auto cents = random_rows(rng, k, dim);
  std::vector<std::size_t> la(n), lb(n);
  std::vector<double> da(n), db(n);
  kernels::serial::assign_nearest({pts, dim}, {cents, dim}, la, da);
  kernels::omp::assign_nearest({pts, dim}, {cents, dim}, lb, db);
  EXPECT_EQ(la, lb);
  EXPECT_EQ(da, db);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < k; ++c) {
      double d = 0;
      for (std::size_t j = 0; j < dim; ++j) {
        d += (pts[i * dim + j] - cents[c * dim + j]) * (pts[i * dim + j] - cents[c * dim + j]);
      }
      EXPECT_GE(d, da[i] - 1e-12);
    }
  }
}

TEST_F(KernelsTest, AssignNearestBreaksTiesTowardLowerIndex) {
  const std::vector<double> pts = {0, 0};
  const std::vector<double> cents = {1, 0, -1, 0, 0, 1};
  std::vector<std::size_t> labels(1);
  std::vector<double> d2(1);
  kernels::omp::assign_nearest({pts, 2}, {cents, 2}, labels, d2);
  EXPECT_EQ(labels[0], 0u);
  EXPECT_DOUBLE_EQ(d2[0], 1.0);
}

TEST_F(KernelsTest, EmptyInputs) {
  EXPECT_TRUE(kernels::omp::region_queries({}, 0.1).empty());
  std::vector<double> out;
  kernels::omp::cosine_scores(std::vector<double>{1.0}, 1.0, {{}, 1}, {}, out);
  EXPECT_TRUE(out.empty());
}

}  // namespace
}  // namespace docrag
