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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "docrag/config.hpp"
#include "docrag/layout.hpp"
#include "docrag/markdown.hpp"
#include "docrag/qa.hpp"
#include "docrag/vector_store.hpp"
#include "json.hpp"

namespace docrag {

struct PreparedDocument {
  MarkdownDocument markdown;
  std::size_t elements_in = 0;
  std::size_t elements_removed = 0;
  std::vector<std::string> warnings;
};

// Header/footer removal, markdown conversion, captioning, and table
// compression.
PreparedDocument prepare_document(const SourceDocument& doc, const PipelineConfig& config,
                                  Captioner& captioner);

// Corpus files (*.json layouts or synthetic specs) in name order. Throws
// InvalidArgument if the directory has none.
std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir);

struct IngestDocStats {
  std::string doc_id;
  std::string source;
  std::size_t pages = 0;
  std::size_t elements_removed = 0;
  std::size_t images = 0;
  std::size_t tables = 0;
  std::size_t leaf_chunks = 0;
  std::size_t summary_chunks = 0;
  std::optional<std::string> error;
};

struct IngestResult {
  std::vector<IngestDocStats> docs;
  std::size_t failures = 0;
  std::size_t store_size = 0;
};

// Writes <out>/store.jsonl, <out>/manifest.json, and per-document markdown
// with images. Existing entries of re-ingested documents are replaced.
IngestResult ingest_corpus(const std::filesystem::path& corpus_dir,
                           const std::filesystem::path& out_dir, const PipelineConfig& config,
                           Services& services);

struct LoadedIndex {
  std::unique_ptr<VectorStore> store;
  AssetCatalog assets;
  nlohmann::json manifest;
};

LoadedIndex open_index(const std::filesystem::path& dir);

// Markdown text of every corpus document after preparation, for datagen.
struct PreparedCorpus {
  std::vector<std::pair<std::string, std::string>> docs;  // (doc_id, markdown)
  std::vector<std::string> warnings;
};
PreparedCorpus prepare_corpus(const std::filesystem::path& corpus_dir,
                              const PipelineConfig& config, Captioner& captioner);

}  // namespace docrag
