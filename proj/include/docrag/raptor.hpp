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
#include <string>
#include <vector>

#include "docrag/chunking.hpp"
#include "docrag/embedding.hpp"
#include "docrag/kernels.hpp"
#include "docrag/llm.hpp"
#include "docrag/vector_store.hpp"

namespace docrag {

class Summarizer {
 public:
  virtual ~Summarizer() = default;
  virtual std::string summarize(const std::vector<std::string>& texts) = 0;
};

// First sentence of each text, one per line, keeping the members that fit
// whole within 1000 code points.
class MockSummarizer : public Summarizer {
 public:
  std::string summarize(const std::vector<std::string>& texts) override;
};

class LlmSummarizer : public Summarizer {
 public:
  explicit LlmSummarizer(LlmClient& llm) : llm_(llm) {}
  std::string summarize(const std::vector<std::string>& texts) override;

 private:
  LlmClient& llm_;
};

std::string first_sentence(std::string_view text);

struct KMeansResult {
  std::vector<std::size_t> labels;
  std::vector<double> centroids;  // k x dim, row-major
  std::size_t iterations = 0;
};

// Lloyd iterations from a seeded k-means++ start. An empty cluster is
// re-seeded with the point farthest from its centroid. Every one of the k
// clusters is non-empty on return (requires k <= rows).
KMeansResult kmeans(kernels::MatrixView points, std::size_t k, std::uint64_t seed,
                    std::size_t max_iterations = 50);

struct RaptorConfig {
  std::size_t fanout = 5;
  std::size_t max_depth = 3;
  std::uint64_t seed = 0;
  std::size_t max_iterations = 50;
};

// levels[0] are the leaves; parents[l][i] is the index in levels[l + 1] of
// the summary covering levels[l][i]. The top level has no parents entry.
struct RaptorTree {
  std::vector<std::vector<Chunk>> levels;
  std::vector<std::vector<std::size_t>> parents;
};

std::string summary_chunk_id(std::string_view doc_id, int level, std::size_t index);

// Clusters each level into ceil(n / fanout) groups and summarizes each
// group into a chunk one level up, until a single node remains or
// max_depth summary levels exist. Summaries are embedded and upserted into
// `store` when given.
RaptorTree raptor_build(const std::vector<Chunk>& leaves, Embedder& embedder,
                        Summarizer& summarizer, VectorStore* store,
                        const RaptorConfig& config = {});

}  // namespace docrag
