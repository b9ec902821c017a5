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
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "docrag/chunking.hpp"
#include "docrag/embedding.hpp"

namespace docrag {

struct IndexEntry {
  Chunk chunk;
  EmbeddingVector vector;
};

struct ScoredChunk {
  Chunk chunk;
  double score = 0;
};

// In-process exact cosine store. Concurrent readers, exclusive writers.
class VectorStore {
 public:
  explicit VectorStore(std::size_t dimension);
  VectorStore(const VectorStore&) = delete;
  VectorStore& operator=(const VectorStore&) = delete;

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  // Inserts or replaces by chunk_id. Throws DimensionMismatch.
  void upsert(IndexEntry entry);
  std::size_t erase_document(const std::string& doc_id);
  std::optional<IndexEntry> get(const std::string& chunk_id) const;
  // Sorted by chunk_id.
  std::vector<IndexEntry> entries() const;

  // The k highest-scoring entries, score descending then chunk_id
  // ascending. Throws Error("index empty") on an empty store.
  std::vector<ScoredChunk> search(const EmbeddingVector& query, std::size_t k) const;

  // JSONL, one {chunk_id, doc_id, level, char_span, text, vector} per line,
  // sorted by chunk_id.
  std::string export_jsonl() const;
  void save(const std::filesystem::path& path) const;
  static std::unique_ptr<VectorStore> load(const std::filesystem::path& path,
                                           std::optional<std::size_t> dimension = {});

 private:
  std::size_t dimension_;
  mutable std::shared_mutex mu_;
  // Dense matrix of vectors; slot i belongs to ids_[i].
  std::vector<double> matrix_;
  std::vector<double> norms_;
  std::vector<std::string> ids_;
  std::map<std::string, std::size_t> slot_of_;
  std::map<std::string, IndexEntry> entries_;
};

// Embeds and inserts `chunks`, first dropping every existing entry of the
// documents they belong to. Throws InvalidArgument on duplicate chunk ids
// and DimensionMismatch if the embedder disagrees with the store.
void index_chunks(const std::vector<Chunk>& chunks, Embedder& embedder, VectorStore& store);

}  // namespace docrag
