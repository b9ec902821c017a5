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

#include "docrag/header_footer.hpp"

#include <cmath>
#include <set>

#include "docrag/error.hpp"

namespace docrag {

void DbscanParams::validate() const {
  if (!(eps > 0) || !std::isfinite(eps)) throw InvalidArgument("dbscan eps must be > 0");
  if (min_samples < 1) throw InvalidArgument("dbscan min_samples must be >= 1");
}

std::size_t min_samples_for(std::size_t page_count) {
  if (page_count < 1) throw InvalidArgument("page count must be >= 1");
  if (page_count <= 6) return 2;
  if (page_count <= 8) return 3;
  return 4;
}

std::vector<ClusterLabel> dbscan(std::span<const kernels::Point2> points,
                                 const DbscanParams& params) {
  params.validate();
  constexpr ClusterLabel kUnvisited = -2;
  const auto neighbors = kernels::omp::region_queries(points, params.eps);
  std::vector<ClusterLabel> labels(points.size(), kUnvisited);
  ClusterLabel cluster = 0;
  std::vector<std::size_t> frontier;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (labels[i] != kUnvisited) continue;
    if (neighbors[i].size() < params.min_samples) {
      labels[i] = kNoise;
      continue;
    }
    labels[i] = cluster;
    frontier.assign(neighbors[i].begin(), neighbors[i].end());
    for (std::size_t f = 0; f < frontier.size(); ++f) {
      const std::size_t q = frontier[f];
      if (labels[q] == kNoise) labels[q] = cluster;
      if (labels[q] != kUnvisited) continue;
      labels[q] = cluster;
      if (neighbors[q].size() >= params.min_samples) {
        frontier.insert(frontier.end(), neighbors[q].begin(), neighbors[q].end());
      }
    }
    ++cluster;
  }
  return labels;
}

std::vector<Mark> classify_clusters(std::span<const WindowElement> elements,
                                    std::span<const ClusterLabel> labels,
                                    std::size_t min_pages,
                                    const HeaderFooterConfig& config) {
  if (elements.size() != labels.size()) {
    throw InvalidArgument("labels not aligned with elements");
  }
  ClusterLabel n_clusters = 0;
  for (auto l : labels) n_clusters = std::max(n_clusters, l + 1);

  struct Stats {
    double sum_y = 0;
    std::size_t count = 0;
    std::set<std::size_t> pages;
  };
  std::vector<Stats> stats(static_cast<std::size_t>(n_clusters));
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (labels[i] == kNoise) continue;
    auto& s = stats[static_cast<std::size_t>(labels[i])];
    s.sum_y += elements[i].centroid.y;
    ++s.count;
    s.pages.insert(elements[i].page_index);
  }
  std::vector<Mark> cluster_mark(stats.size(), Mark::kBody);
  for (std::size_t c = 0; c < stats.size(); ++c) {
    const auto& s = stats[c];
    if (s.count == 0 || s.pages.size() < min_pages) continue;
    const double y = s.sum_y / static_cast<double>(s.count);
    if (y <= config.top_band) {
      cluster_mark[c] = Mark::kHeader;
    } else if (y >= config.bottom_band) {
      cluster_mark[c] = Mark::kFooter;
    }
  }
  std::vector<Mark> marks(elements.size(), Mark::kBody);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (labels[i] != kNoise) marks[i] = cluster_mark[static_cast<std::size_t>(labels[i])];
  }
  return marks;
}

std::vector<std::pair<std::size_t, std::size_t>> page_windows(
    std::size_t page_count, std::size_t window_size, std::size_t min_pages) {
  if (window_size < 1) throw InvalidArgument("window_size must be >= 1");
  std::vector<std::pair<std::size_t, std::size_t>> windows;
  for (std::size_t b = 0; b < page_count; b += window_size) {
    windows.emplace_back(b, std::min(page_count, b + window_size));
  }
  if (windows.size() > 1) {
    const auto [b, e] = windows.back();
    if (e - b < min_pages) {
      windows.pop_back();
      windows.back().second = e;
    }
  }
  return windows;
}

std::vector<std::vector<Mark>> mark_headers_footers(const SourceDocument& doc,
                                                    const HeaderFooterConfig& config) {
  std::vector<std::vector<Mark>> marks(doc.pages.size());
  for (std::size_t p = 0; p < doc.pages.size(); ++p) {
    marks[p].assign(doc.pages[p].elements.size(), Mark::kBody);
  }
  if (doc.pages.size() <= 2) return marks;

  const DbscanParams params{config.eps, min_samples_for(doc.pages.size())};
  const std::size_t min_pages = config.min_pages_override.value_or(params.min_samples);
  const auto windows = page_windows(doc.pages.size(), config.window_size, min_pages);

  const auto n_windows = static_cast<std::ptrdiff_t>(windows.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t w = 0; w < n_windows; ++w) {
    const auto [begin, end] = windows[static_cast<std::size_t>(w)];
    std::vector<WindowElement> elements;
    std::vector<kernels::Point2> points;
    for (std::size_t p = begin; p < end; ++p) {
      const auto& page = doc.pages[p];
      for (const auto& e : page.elements) {
        const kernels::Point2 c{e.bbox.center_x() / page.width,
                                e.bbox.center_y() / page.height};
        elements.push_back({p, c});
        points.push_back(c);
      }
    }
    const auto labels = dbscan(points, params);
    const auto window_marks = classify_clusters(elements, labels, min_pages, config);
    std::size_t k = 0;
    for (std::size_t p = begin; p < end; ++p) {
      for (auto& m : marks[p]) m = window_marks[k++];
    }
  }
  return marks;
}

SourceDocument remove_headers_footers(const SourceDocument& doc,
                                      const HeaderFooterConfig& config) {
  const auto marks = mark_headers_footers(doc, config);
  SourceDocument out;
  out.doc_id = doc.doc_id;
  out.pages.reserve(doc.pages.size());
  for (std::size_t p = 0; p < doc.pages.size(); ++p) {
    Page page;
    page.width = doc.pages[p].width;
    page.height = doc.pages[p].height;
    for (std::size_t e = 0; e < doc.pages[p].elements.size(); ++e) {
      if (marks[p][e] == Mark::kBody) page.elements.push_back(doc.pages[p].elements[e]);
    }
    out.pages.push_back(std::move(page));
  }
  return out;
}

}  // namespace docrag
