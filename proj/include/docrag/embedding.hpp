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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace docrag {

// A finite vector with nonzero L2 norm.
class EmbeddingVector {
 public:
  EmbeddingVector() = default;
  // Throws InvalidArgument for empty, non-finite, or zero-norm input.
  explicit EmbeddingVector(std::vector<double> components);

  std::size_t dimension() const { return components_.size(); }
  std::span<const double> components() const { return components_; }
  double norm() const { return norm_; }
  double operator[](std::size_t i) const { return components_[i]; }

  friend bool operator==(const EmbeddingVector& a, const EmbeddingVector& b) {
    return a.components_ == b.components_;
  }

 private:
  std::vector<double> components_;
  double norm_ = 0;
};

// dot(u, v) / (|u| |v|). Throws DimensionMismatch or InvalidArgument for a
// zero-norm operand.
double cosine_similarity(std::span<const double> u, std::span<const double> v);
double cosine_similarity(const EmbeddingVector& u, const EmbeddingVector& v);

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::size_t dimension() = 0;
  virtual std::vector<EmbeddingVector> embed_batch(const std::vector<std::string>& texts) = 0;
  EmbeddingVector embed(const std::string& text);
};

// Signed feature hashing of code-point trigrams into `dimension` buckets,
// L2-normalized. Texts shorter than three code points hash as one gram.
class MockEmbedder : public Embedder {
 public:
  explicit MockEmbedder(std::size_t dimension = 128, std::uint64_t seed = 0)
      : dimension_(dimension), seed_(seed) {}
  std::size_t dimension() override { return dimension_; }
  std::vector<EmbeddingVector> embed_batch(const std::vector<std::string>& texts) override;
  EmbeddingVector embed_one(const std::string& text) const;

 private:
  std::size_t dimension_;
  std::uint64_t seed_;
};

// Request {texts: [...]}, response {vectors: [[...]]}. The dimension is
// taken from the first reply unless given up front.
class HttpEmbedder : public Embedder {
 public:
  explicit HttpEmbedder(std::string url, std::optional<std::size_t> dimension = {})
      : url_(std::move(url)), dimension_(dimension) {}
  std::size_t dimension() override;
  std::vector<EmbeddingVector> embed_batch(const std::vector<std::string>& texts) override;

 private:
  std::string url_;
  std::optional<std::size_t> dimension_;
};

// Embeds one non-empty text; InvalidArgument on empty input.
EmbeddingVector embed(const std::string& text, Embedder& embedder);

}  // namespace docrag
