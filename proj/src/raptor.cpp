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

#include "docrag/raptor.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <numeric>

#include "docrag/error.hpp"
#include "docrag/prompts.hpp"
#include "docrag/rng.hpp"
#include "docrag/utf8.hpp"

namespace docrag {

std::string first_sentence(std::string_view text) {
  text = utf8::trim(text);
  std::size_t end = text.size();
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      end = i;
      break;
    }
    if ((c == '.' || c == '!' || c == '?') &&
        (i + 1 == text.size() || text[i + 1] == ' ' || text[i + 1] == '\n')) {
      end = i + 1;
      break;
    }
  }
  return std::string(utf8::trim(text.substr(0, end)));
}

std::string MockSummarizer::summarize(const std::vector<std::string>& texts) {
  // Whole lines only, so a table or caption line is never cut or merged.
  std::string out;
  std::size_t chars = 0;
  for (const auto& t : texts) {
    auto s = first_sentence(t);
    if (s.empty()) continue;
    const std::size_t add = utf8::length(s) + (out.empty() ? 0 : 1);
    if (chars + add > kDefaultChunkChars) continue;
    if (!out.empty()) out += '\n';
    out += s;
    chars += add;
  }
  if (out.empty()) {
    // Every member is oversize: cut the first one rather than return nothing.
    for (const auto& t : texts) {
      auto s = first_sentence(t);
      if (!s.empty()) return s.substr(0, utf8::advance(s, 0, kDefaultChunkChars));
    }
  }
  return out;
}

std::string LlmSummarizer::summarize(const std::vector<std::string>& texts) {
  std::string context;
  for (const auto& t : texts) {
    if (!context.empty()) context += "\n\n";
    context += t;
  }
  std::string prompt(prompts::kSummarize);
  prompt.replace(prompt.find("{context}"), 9, context);
  auto s = std::string(utf8::trim(llm_.complete(prompt)));
  return s.substr(0, utf8::advance(s, 0, kDefaultChunkChars));
}

KMeansResult kmeans(kernels::MatrixView points, std::size_t k, std::uint64_t seed,
                    std::size_t max_iterations) {
  const std::size_t n = points.rows();
  const std::size_t d = points.dim;
  if (k < 1 || k > n) throw InvalidArgument("kmeans needs 1 <= k <= n");
  Rng rng(seed);
  KMeansResult r;
  r.centroids.assign(k * d, 0.0);
  auto centroid = [&](std::size_t c) {
    return std::span<double>(r.centroids).subspan(c * d, d);
  };
  auto set_centroid = [&](std::size_t c, std::size_t point) {
    const auto p = points.row(point);
    std::copy(p.begin(), p.end(), centroid(c).begin());
  };

  // k-means++ seeding.
  std::vector<double> dist2(n, std::numeric_limits<double>::infinity());
  set_centroid(0, rng.below(n));
  for (std::size_t c = 1; c < k; ++c) {
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      dist2[i] = std::min(dist2[i], kernels::squared_distance(points.row(i), centroid(c - 1)));
      total += dist2[i];
    }
    std::size_t pick = 0;
    if (total > 0) {
      double target = rng.unit() * total;
      for (pick = 0; pick + 1 < n; ++pick) {
        target -= dist2[pick];
        if (target < 0 && dist2[pick] > 0) break;
      }
    } else {
      pick = rng.below(n);
    }
    set_centroid(c, pick);
  }

  r.labels.assign(n, 0);
  std::vector<std::size_t> labels(n);
  std::vector<std::size_t> counts(k);
  const kernels::MatrixView cview{r.centroids, d};
  for (r.iterations = 0; r.iterations < max_iterations; ++r.iterations) {
    kernels::omp::assign_nearest(points, cview, labels, dist2);
    const bool changed = r.iterations == 0 || labels != r.labels;
    r.labels = labels;
    if (!changed) break;
    std::fill(r.centroids.begin(), r.centroids.end(), 0.0);
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto c = centroid(labels[i]);
      const auto p = points.row(i);
      for (std::size_t j = 0; j < d; ++j) c[j] += p[j];
      ++counts[labels[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) {
        const auto far = static_cast<std::size_t>(
            std::max_element(dist2.begin(), dist2.end()) - dist2.begin());
        set_centroid(c, far);
        dist2[far] = 0;
        continue;
      }
      for (double& v : centroid(c)) v /= static_cast<double>(counts[c]);
    }
  }

  // Guarantee k non-empty clusters: move the farthest point of a cluster
  // with spare members into each empty one.
  std::fill(counts.begin(), counts.end(), 0);
  for (auto l : r.labels) ++counts[l];
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] > 0) continue;
    std::size_t best = n;
    double best_d = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (counts[r.labels[i]] > 1 && dist2[i] > best_d) {
        best_d = dist2[i];
        best = i;
      }
    }
    --counts[r.labels[best]];
    r.labels[best] = c;
    ++counts[c];
    set_centroid(c, best);
    dist2[best] = 0;
  }
  return r;
}

std::string summary_chunk_id(std::string_view doc_id, int level, std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "/s%d-%04zu", level, index);
  return std::string(doc_id) + buf;
}

RaptorTree raptor_build(const std::vector<Chunk>& leaves, Embedder& embedder,
                        Summarizer& summarizer, VectorStore* store,
                        const RaptorConfig& config) {
  if (leaves.empty()) throw InvalidArgument("raptor_build needs at least one leaf");
  if (config.fanout < 2) throw InvalidArgument("raptor fanout must be >= 2");

  std::string doc_id = leaves.front().doc_id;
  for (const auto& c : leaves) {
    if (c.doc_id != doc_id) {
      doc_id = "corpus";
      break;
    }
  }

  const std::size_t d = embedder.dimension();
  auto embeddings_of = [&](const std::vector<Chunk>& chunks) {
    std::vector<double> m;
    m.reserve(chunks.size() * d);
    std::vector<std::string> missing;
    std::vector<std::size_t> missing_at;
    std::vector<EmbeddingVector> vecs(chunks.size());
    for (std::size_t i = 0; i < chunks.size(); ++i) {
      std::optional<IndexEntry> e = store ? store->get(chunks[i].chunk_id) : std::nullopt;
      if (e && e->chunk.text == chunks[i].text) {
        vecs[i] = e->vector;
      } else {
        missing.push_back(chunks[i].text);
        missing_at.push_back(i);
      }
    }
    if (!missing.empty()) {
      auto got = embedder.embed_batch(missing);
      for (std::size_t j = 0; j < got.size(); ++j) vecs[missing_at[j]] = std::move(got[j]);
    }
    for (const auto& v : vecs) {
      if (v.dimension() != d) throw DimensionMismatch("embedding dimension changed");
      m.insert(m.end(), v.components().begin(), v.components().end());
    }
    return std::make_pair(std::move(m), std::move(vecs));
  };

  RaptorTree tree;
  tree.levels.push_back(leaves);
  auto [matrix, vectors] = embeddings_of(leaves);
  (void)vectors;
  for (std::size_t depth = 0; depth < config.max_depth; ++depth) {
    const auto& level = tree.levels.back();
    const std::size_t n = level.size();
    if (n <= 1) break;
    const std::size_t k = (n + config.fanout - 1) / config.fanout;
    const auto km = kmeans(kernels::MatrixView{matrix, d}, k,
                           derive_seed(config.seed, {depth}), config.max_iterations);

    // Number clusters by their first member so output order follows input.
    std::vector<std::size_t> rename(k, k);
    std::size_t next = 0;
    for (auto l : km.labels) {
      if (rename[l] == k) rename[l] = next++;
    }
    std::vector<std::vector<std::size_t>> members(k);
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) {
      parent[i] = rename[km.labels[i]];
      members[parent[i]].push_back(i);
    }

    const int lvl = static_cast<int>(depth) + 1;
    std::vector<Chunk> up;
    for (std::size_t c = 0; c < k; ++c) {
      std::vector<std::string> texts;
      for (auto i : members[c]) texts.push_back(level[i].text);
      Chunk s;
      s.chunk_id = summary_chunk_id(doc_id, lvl, c);
      s.doc_id = doc_id;
      s.level = lvl;
      s.text = summarizer.summarize(texts);
      if (utf8::trim(s.text).empty()) s.text = "(empty summary)";
      up.push_back(std::move(s));
    }
    tree.parents.push_back(std::move(parent));
    tree.levels.push_back(std::move(up));

    auto [m, vecs] = embeddings_of(tree.levels.back());
    if (store) {
      for (std::size_t i = 0; i < vecs.size(); ++i) {
        store->upsert({tree.levels.back()[i], vecs[i]});
      }
    }
    matrix = std::move(m);
  }
  return tree;
}

}  // namespace docrag
