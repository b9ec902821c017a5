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
#include <span>
#include <vector>

// Data-parallel inner loops. Each kernel has a serial reference in
// `kernels::serial` and an OpenMP version in `kernels::omp` with identical
// results; the library calls the OpenMP versions.
namespace docrag::kernels {

struct Point2 {
  double x = 0, y = 0;
};

// Row-major matrix view: rows() vectors of length dim().
struct MatrixView {
  std::span<const double> data;
  std::size_t dim = 0;
  std::size_t rows() const { return dim ? data.size() / dim : 0; }
  std::span<const double> row(std::size_t i) const {
    return data.subspan(i * dim, dim);
  }
};

namespace serial {

// For every point, the ascending indices of points within Euclidean
// distance `eps` (closed ball, includes the point itself).
std::vector<std::vector<std::size_t>> region_queries(std::span<const Point2> points,
                                                     double eps);

// out[i] = dot(query, rows[i]) / (|query| * norms[i]).
void cosine_scores(std::span<const double> query, double query_norm,
                   MatrixView rows, std::span<const double> norms,
                   std::span<double> out);

// Index of the nearest centroid (squared Euclidean, lowest index on ties)
// and that squared distance, per row.
void assign_nearest(MatrixView points, MatrixView centroids,
                    std::span<std::size_t> labels, std::span<double> dist2);

}  // namespace serial

namespace omp {

std::vector<std::vector<std::size_t>> region_queries(std::span<const Point2> points,
                                                     double eps);
void cosine_scores(std::span<const double> query, double query_norm,
                   MatrixView rows, std::span<const double> norms,
                   std::span<double> out);
void assign_nearest(MatrixView points, MatrixView centroids,
                    std::span<std::size_t> labels, std::span<double> dist2);

}  // namespace omp

double dot(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);

}  // namespace docrag::kernels
