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

#include <limits>

namespace docrag::kernels {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

namespace {

inline bool within(const Point2& a, const Point2& b, double eps2) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy <= eps2;
}

inline void nearest_row(MatrixView points, MatrixView centroids, std::size_t i,
                        std::span<std::size_t> labels, std::span<double> dist2) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t c = 0; c < centroids.rows(); ++c) {
    const double d = squared_distance(points.row(i), centroids.row(c));
    if (d < best) {
      best = d;
      arg = c;
    }
  }
  labels[i] = arg;
  dist2[i] = best;
}

}  // namespace

namespace serial {

std::vector<std::vector<std::size_t>> region_queries(std::span<const Point2> points,
                                                     double eps) {
  const double eps2 = eps * eps;
  std::vector<std::vector<std::size_t>> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (within(points[i], points[j], eps2)) out[i].push_back(j);
    }
  }
  return out;
}

void cosine_scores(std::span<const double> query, double query_norm,
                   MatrixView rows, std::span<const double> norms,
                   std::span<double> out) {
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    out[i] = dot(query, rows.row(i)) / (query_norm * norms[i]);
  }
}

void assign_nearest(MatrixView points, MatrixView centroids,
                    std::span<std::size_t> labels, std::span<double> dist2) {
  for (std::size_t i = 0; i < points.rows(); ++i) {
    nearest_row(points, centroids, i, labels, dist2);
  }
}

}  // namespace serial

namespace omp {

std::vector<std::vector<std::size_t>> region_queries(std::span<const Point2> points,
                                                     double eps) {
  const double eps2 = eps * eps;
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  std::vector<std::vector<std::size_t>> out(points.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    auto& row = out[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (within(points[static_cast<std::size_t>(i)], points[j], eps2)) {
        row.push_back(j);
      }
    }
  }
  return out;
}

void cosine_scores(std::span<const double> query, double query_norm,
                   MatrixView rows, std::span<const double> norms,
                   std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(rows.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto r = static_cast<std::size_t>(i);
    out[r] = dot(query, rows.row(r)) / (query_norm * norms[r]);
  }
}

void assign_nearest(MatrixView points, MatrixView centroids,
                    std::span<std::size_t> labels, std::span<double> dist2) {
  const auto n = static_cast<std::ptrdiff_t>(points.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    nearest_row(points, centroids, static_cast<std::size_t>(i), labels, dist2);
  }
}

}  // namespace omp
}  // namespace docrag::kernels
