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

#include "docrag/vector_store.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "docrag/error.hpp"
#include "docrag/kernels.hpp"
#include "json.hpp"

namespace docrag {

VectorStore::VectorStore(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw InvalidArgument("store dimension must be > 0");
}

std::size_t VectorStore::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

void VectorStore::upsert(IndexEntry entry) {
  if (entry.vector.dimension() != dimension_) {
    throw DimensionMismatch("vector of dimension " + std::to_string(entry.vector.dimension()) +
                            " for a " + std::to_string(dimension_) + "-d store");
  }
  std::unique_lock lock(mu_);
  const std::string id = entry.chunk.chunk_id;
  const auto comps = entry.vector.components();
  auto it = slot_of_.find(id);
  std::size_t slot;
  if (it == slot_of_.end()) {
    slot = ids_.size();
    ids_.push_back(id);
    matrix_.resize(matrix_.size() + dimension_);
    norms_.push_back(0);
    slot_of_.emplace(id, slot);
  } else {
    slot = it->second;
  }
  std::copy(comps.begin(), comps.end(), matrix_.begin() + static_cast<std::ptrdiff_t>(slot * dimension_));
  norms_[slot] = entry.vector.norm();
  entries_.insert_or_assign(id, std::move(entry));
}

std::size_t VectorStore::erase_document(const std::string& doc_id) {
  std::unique_lock lock(mu_);
  std::size_t removed = 0;
  for (auto it = entries_.begin(); it != entries_.end();) {
    if (it->second.chunk.doc_id != doc_id) {
      ++it;
      continue;
    }
    const std::size_t slot = slot_of_.at(it->first);
    const std::size_t last = ids_.size() - 1;
    if (slot != last) {
      std::copy_n(matrix_.begin() + static_cast<std::ptrdiff_t>(last * dimension_), dimension_,
                  matrix_.begin() + static_cast<std::ptrdiff_t>(slot * dimension_));
      norms_[slot] = norms_[last];
      ids_[slot] = ids_[last];
      slot_of_[ids_[slot]] = slot;
    }
    ids_.pop_back();
    norms_.pop_back();
    matrix_.resize(matrix_.size() - dimension_);
    slot_of_.erase(it->first);
    it = entries_.erase(it);
    ++removed;
  }
  return removed;
}

std::optional<IndexEntry> VectorStore::get(const std::string& chunk_id) const {
  std::shared_lock lock(mu_);
  auto it = entries_.find(chunk_id);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<IndexEntry> VectorStore::entries() const {
  std::shared_lock lock(mu_);
  std::vector<IndexEntry> out;
  out.reserve(entries_.size());
  for (const auto& [id, e] : entries_) out.push_back(e);
  return out;
}

std::vector<ScoredChunk> VectorStore::search(const EmbeddingVector& query,
                                             std::size_t k) const {
  if (query.dimension() != dimension_) {
    throw DimensionMismatch("query of dimension " + std::to_string(query.dimension()) +
                            " for a " + std::to_string(dimension_) + "-d store");
  }
  std::shared_lock lock(mu_);
  if (ids_.empty()) throw Error("index empty");
  std::vector<double> scores(ids_.size());
  kernels::omp::cosine_scores(query.components(), query.norm(),
                              kernels::MatrixView{matrix_, dimension_}, norms_, scores);
  std::vector<std::size_t> order(ids_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t take = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (scores[a] != scores[b]) return scores[a] > scores[b];
                      return ids_[a] < ids_[b];
                    });
  std::vector<ScoredChunk> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    out.push_back({entries_.at(ids_[order[i]]).chunk, scores[order[i]]});
  }
  return out;
}

std::string VectorStore::export_jsonl() const {
  std::shared_lock lock(mu_);
  std::string out;
  for (const auto& [id, e] : entries_) {
    nlohmann::ordered_json j;
    j["chunk_id"] = e.chunk.chunk_id;
    j["doc_id"] = e.chunk.doc_id;
    j["level"] = e.chunk.level;
    if (e.chunk.span) {
      j["char_span"] = {e.chunk.span->begin, e.chunk.span->end};
    } else {
      j["char_span"] = nullptr;
    }
    j["text"] = e.chunk.text;
    j["vector"] = std::vector<double>(e.vector.components().begin(),
                                      e.vector.components().end());
    out += j.dump();
    out += '\n';
  }
  return out;
}

void VectorStore::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << export_jsonl();
}

std::unique_ptr<VectorStore> VectorStore::load(const std::filesystem::path& path,
                                               std::optional<std::size_t> dimension) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UnreadableError("cannot open store " + path.string());
  std::vector<IndexEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      IndexEntry e;
      e.chunk.chunk_id = j.at("chunk_id").get<std::string>();
      e.chunk.doc_id = j.at("doc_id").get<std::string>();
      e.chunk.level = j.at("level").get<int>();
      if (!j.at("char_span").is_null()) {
        e.chunk.span = CharSpan{j["char_span"].at(0).get<std::size_t>(),
                                j["char_span"].at(1).get<std::size_t>()};
      }
      e.chunk.text = j.at("text").get<std::string>();
      e.vector = EmbeddingVector(j.at("vector").get<std::vector<double>>());
      entries.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(path.string() + ": " + ex.what(), line_no);
    }
  }
  std::size_t dim = dimension.value_or(entries.empty() ? 0 : entries.front().vector.dimension());
  if (dim == 0) throw UnreadableError("cannot infer dimension of empty store " + path.string());
  auto store = std::make_unique<VectorStore>(dim);
  for (auto& e : entries) store->upsert(std::move(e));
  return store;
}

void index_chunks(const std::vector<Chunk>& chunks, Embedder& embedder, VectorStore& store) {
  if (embedder.dimension() != store.dimension()) {
    throw DimensionMismatch("embedder dimension " + std::to_string(embedder.dimension()) +
                            " != store dimension " + std::to_string(store.dimension()));
  }
  std::set<std::string> ids;
  std::set<std::string> docs;
  std::vector<std::string> texts;
  for (const auto& c : chunks) {
    if (!ids.insert(c.chunk_id).second) {
      throw InvalidArgument("duplicate chunk_id '" + c.chunk_id + "'");
    }
    docs.insert(c.doc_id);
    texts.push_back(c.text);
  }
  auto vectors = chunks.empty() ? std::vector<EmbeddingVector>{} : embedder.embed_batch(texts);
  if (vectors.size() != chunks.size()) throw Error("embedder returned wrong vector count");
  for (const auto& d : docs) store.erase_document(d);
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    store.upsert({chunks[i], std::move(vectors[i])});
  }
}

}  // namespace docrag
