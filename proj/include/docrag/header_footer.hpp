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

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "docrag/kernels.hpp"
#include "docrag/layout.hpp"

namespace docrag {

// Cluster index in [0, n_clusters), or kNoise.
using ClusterLabel = int;
inline constexpr ClusterLabel kNoise = -1;

struct DbscanParams {
  double eps = 0.01;
  std::size_t min_samples = 2;

  void validate() const;
};

// min_samples by document length: 2 up to 6 pages, 3 for 7-8, 4 beyond.
std::size_t min_samples_for(std::size_t page_count);

// Density-based clustering with a closed eps-ball that includes the point
// itself. Clusters are numbered in scan order of their first core point; a
// border point reachable from several clusters joins the lowest-numbered.
std::vector<ClusterLabel> dbscan(std::span<const kernels::Point2> points,
                                 const DbscanParams& params);

enum class Mark { kHeader, kFooter, kBody };

struct HeaderFooterConfig {
  double eps = 0.01;
  double top_band = 0.15;
  double bottom_band = 0.85;
  std::size_t window_size = 10;
  // Replaces the distinct-page threshold derived from the page count.
  std::optional<std::size_t> min_pages_override;
};

struct WindowElement {
  std::size_t page_index = 0;
  kernels::Point2 centroid;  // normalized by the element's page size
};

std::vector<Mark> classify_clusters(std::span<const WindowElement> elements,
                                    std::span<const ClusterLabel> labels,
                                    std::size_t min_pages,
                                    const HeaderFooterConfig& config = {});

// Half-open page ranges processed together. Consecutive windows of
// `window_size`; a trailing window shorter than `min_pages` is merged into
// its predecessor since it could never pass the page-span test.
std::vector<std::pair<std::size_t, std::size_t>> page_windows(
    std::size_t page_count, std::size_t window_size, std::size_t min_pages);

// marks[p][e] for doc.pages[p].elements[e].
std::vector<std::vector<Mark>> mark_headers_footers(
    const SourceDocument& doc, const HeaderFooterConfig& config = {});

SourceDocument remove_headers_footers(const SourceDocument& doc,
                                      const HeaderFooterConfig& config = {});

}  // namespace docrag
