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

#include "docrag/embedding.hpp"

#include <algorithm>
#include <cmath>

#include "docrag/error.hpp"
#include "docrag/http.hpp"
#include "docrag/kernels.hpp"
#include "docrag/rng.hpp"
#include "docrag/utf8.hpp"
#include "json.hpp"

namespace docrag {

EmbeddingVector::EmbeddingVector(std::vector<double> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw InvalidArgument("embedding has no components");
  double s = 0;
  for (double c : components_) {
    if (!std::isfinite(c)) throw InvalidArgument("embedding component not finite");
    s += c * c;
  }
  norm_ = std::sqrt(s);
  if (!(norm_ > 0)) throw InvalidArgument("embedding has zero norm");
}

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw DimensionMismatch("cosine of " + std::to_string(u.size()) + "-d and " +
                            std::to_string(v.size()) + "-d vectors");
  }
  const double nu = std::sqrt(kernels::dot(u, u));
  const double nv = std::sqrt(kernels::dot(v, v));
  if (!(nu > 0) || !(nv > 0)) throw InvalidArgument("cosine of a zero-norm vector");
  const double c = kernels::dot(u, v) / (nu * nv);
  return std::clamp(c, -1.0, 1.0);
}

double cosine_similarity(const EmbeddingVector& u, const EmbeddingVector& v) {
  return cosine_similarity(u.components(), v.components());
}

EmbeddingVector Embedder::embed(const std::string& text) {
  auto v = embed_batch({text});
  if (v.size() != 1) throw Error("embedder returned " + std::to_string(v.size()) + " vectors");
  return std::move(v.front());
}

EmbeddingVector embed(const std::string& text, Embedder& embedder) {
  if (text.empty()) throw InvalidArgument("cannot embed empty text");
  auto v = embedder.embed(text);
  if (v.dimension() != embedder.dimension()) {
    throw DimensionMismatch("embedder returned a " + std::to_string(v.dimension()) +
                            "-d vector, expected " + std::to_string(embedder.dimension()));
  }
  return v;
}

EmbeddingVector MockEmbedder::embed_one(const std::string& text) const {
  std::vector<double> v(dimension_, 0.0);
  const std::uint64_t basis = splitmix64(seed_ ^ 0x7472696772616dULL);
  auto add = [&](std::string_view gram) {
    const std::uint64_t h = splitmix64(fnv1a(gram, basis));
    v[h % dimension_] += (h >> 63) ? -1.0 : 1.0;
  };
  const std::size_t n = utf8::length(text);
  if (n < 3) {
    add(text);
  } else {
    std::size_t b = 0;
    for (std::size_t i = 0; i + 3 <= n; ++i) {
      const std::size_t e = utf8::advance(text, b, 3);
      add(std::string_view(text).substr(b, e - b));
      b = utf8::advance(text, b, 1);
    }
  }
  double s = 0;
  for (double c : v) s += c * c;
  if (s == 0) {
    // Every gram cancelled against another; fall back to a single bucket.
    v[splitmix64(fnv1a(text, basis)) % dimension_] = 1.0;
    s = 1;
  }
  const double inv = 1.0 / std::sqrt(s);
  for (double& c : v) c *= inv;
  return EmbeddingVector(std::move(v));
}

std::vector<EmbeddingVector> MockEmbedder::embed_batch(const std::vector<std::string>& texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(embed_one(t));
  return out;
}

std::size_t HttpEmbedder::dimension() {
  if (!dimension_) embed_batch({"dimension probe"});
  return *dimension_;
}

std::vector<EmbeddingVector> HttpEmbedder::embed_batch(const std::vector<std::string>& texts) {
  const auto res = http::post_json(url_, {{"texts", texts}});
  if (!res.is_object() || !res.contains("vectors") || !res["vectors"].is_array()) {
    throw Error("embedder reply lacks 'vectors'");
  }
  const auto& vs = res["vectors"];
  if (vs.size() != texts.size()) {
    throw Error("embedder returned " + std::to_string(vs.size()) + " vectors for " +
                std::to_string(texts.size()) + " texts");
  }
  std::vector<EmbeddingVector> out;
  out.reserve(vs.size());
  for (const auto& v : vs) {
    auto comps = v.get<std::vector<double>>();
    if (!dimension_) dimension_ = comps.size();
    if (comps.size() != *dimension_) {
      throw DimensionMismatch("embedder returned a " + std::to_string(comps.size()) +
                              "-d vector, expected " + std::to_string(*dimension_));
    }
    out.emplace_back(std::move(comps));
  }
  return out;
}

}  // namespace docrag
