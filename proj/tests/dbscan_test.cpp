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

#include <gtest/gtest.h>

#include <algorithm>

#include "docrag/error.hpp"
#include "docrag/header_footer.hpp"
#include "support.hpp"

namespace docrag {
namespace {

std::vector<int> run(const std::vector<kernels::Point2>& pts, double eps, std::size_t m) {
  return dbscan(pts, DbscanParams{eps, m});
}

TEST(DbscanTest, MatchesBruteForceOracle) {
  Rng rng(1234);
  for (int trial = 0; trial < 60; ++trial) {
    const auto pts = testing::random_point_set(rng, 1 + rng.below(200));
    for (double eps : {0.01, 0.05}) {
      for (std::size_t m : {2u, 3u, 4u}) {
        const auto got = run(pts, eps, m);
        const auto want = testing::dbscan_oracle(pts, eps, m);
        ASSERT_EQ(got, want) << "trial " << trial << " eps " << eps << " m " << m;
      }
    }
  }
}

TEST(DbscanTest, TwoTightPairsAndAnOutlier) {
  const std::vector<kernels::Point2> pts = {
      {0.1, 0.1}, {0.1, 0.105}, {0.9, 0.9}, {0.9, 0.905}, {0.5, 0.5}};
  EXPECT_EQ(run(pts, 0.01, 2), (std::vector<int>{0, 0, 1, 1, -1}));
}

TEST(DbscanTest, SinglePointIsNoiseUnlessMinSamplesIsOne) {
  const std::vector<kernels::Point2> pts = {{0.3, 0.3}};
  EXPECT_EQ(run(pts, 0.01, 2), std::vector<int>{-1});
  EXPECT_EQ(run(pts, 0.01, 1), std::vector<int>{0});
}

TEST(DbscanTest, BorderPointJoinsFirstDiscoveredCluster) {
  // Index 4 is a border point reachable from both dense groups.
  const std::vector<kernels::Point2> pts = {
      {0, 0.0212}, {0, 0.0217}, {0, 0.0222}, {0, 0.0232}, {0, 0.0115},
      {0, 0.0},    {0, 0.0005}, {0, 0.001},  {0, 0.002}};
  EXPECT_EQ(run(pts, 0.01, 4), (std::vector<int>{0, 0, 0, 0, 0, 1, 1, 1, 1}));
}

TEST(DbscanTest, CoreMembershipInvariantUnderPermutation) {
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    auto pts = testing::random_point_set(rng, 120);
    const auto base = run(pts, 0.05, 4);
    const auto nb = kernels::serial::region_queries(pts, 0.05);
    std::vector<std::size_t> perm(pts.size());
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    std::vector<kernels::Point2> shuffled(pts.size());
    for (std::size_t i = 0; i < perm.size(); ++i) shuffled[i] = pts[perm[i]];
    const auto moved = run(shuffled, 0.05, 4);
    // Core points keep their co-membership; noise stays noise.
    for (std::size_t i = 0; i < perm.size(); ++i) {
      EXPECT_EQ(base[perm[i]] < 0, moved[i] < 0);
      for (std::size_t j = 0; j < perm.size(); ++j) {
        const bool ci = nb[perm[i]].size() >= 4, cj = nb[perm[j]].size() >= 4;
        if (ci && cj) EXPECT_EQ(base[perm[i]] == base[perm[j]], moved[i] == moved[j]);
      }
    }
  }
}

TEST(DbscanTest, RejectsBadParameters) {
  const std::vector<kernels::Point2> pts = {{0, 0}};
  EXPECT_THROW(run(pts, 0, 2), InvalidArgument);
  EXPECT_THROW(run(pts, -1, 2), InvalidArgument);
  EXPECT_THROW(run(pts, 0.1, 0), InvalidArgument);
}

TEST(DbscanTest, EmptyInput) { EXPECT_TRUE(run({}, 0.01, 2).empty()); }

}  // namespace
}  // namespace docrag
