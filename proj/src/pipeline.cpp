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

#include "docrag/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <set>

#include "docrag/chunking.hpp"
#include "docrag/error.hpp"
#include "docrag/header_footer.hpp"
#include "docrag/media.hpp"
#include "docrag/raptor.hpp"

namespace docrag {
namespace {

struct LoadedDoc {
  std::filesystem::path path;
  std::optional<PreparedDocument> prepared;
  std::size_t pages = 0;
  std::string error;
};

std::vector<LoadedDoc> load_and_prepare(const std::vector<std::filesystem::path>& files,
                                        const PipelineConfig& config, Captioner& captioner) {
  std::vector<LoadedDoc> docs(files.size());
  const JsonLayoutBackend backend;
  const auto n = static_cast<std::ptrdiff_t>(files.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    auto& d = docs[static_cast<std::size_t>(i)];
    d.path = files[static_cast<std::size_t>(i)];
    try {
      const SourceDocument doc = load_document(d.path, backend);
      d.pages = doc.pages.size();
      d.prepared = prepare_document(doc, config, captioner);
    } catch (const std::exception& e) {
      d.error = e.what();
    }
  }
  return docs;
}

}  // namespace

PreparedDocument prepare_document(const SourceDocument& doc, const PipelineConfig& config,
                                  Captioner& captioner) {
  PreparedDocument out;
  out.elements_in = doc.element_count();
  const SourceDocument clean = remove_headers_footers(doc, config.header_footer);
  out.elements_removed = out.elements_in - clean.element_count();
  MarkdownDocument md = convert(clean, config.converter);
  md = caption_images(std::move(md), captioner, &out.warnings);
  out.markdown = compress_tables(std::move(md));
  return out;
}

std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw InvalidArgument("corpus directory not found: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& f : std::filesystem::directory_iterator(dir)) {
    if (f.is_regular_file() && f.path().extension() == ".json") files.push_back(f.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InvalidArgument("corpus directory has no documents: " + dir.string());
  return files;
}

IngestResult ingest_corpus(const std::filesystem::path& corpus_dir,
                           const std::filesystem::path& out_dir, const PipelineConfig& config,
                           Services& services) {
  const auto files = corpus_files(corpus_dir);
  std::filesystem::create_directories(out_dir);
  const auto store_path = out_dir / "store.jsonl";
  const std::size_t dim = services.embedder->dimension();
  std::unique_ptr<VectorStore> store;
  if (std::filesystem::exists(store_path) && std::filesystem::file_size(store_path) > 0) {
    store = VectorStore::load(store_path, dim);
  } else {
    store = std::make_unique<VectorStore>(dim);
  }

  auto docs = load_and_prepare(files, config, *services.captioner);
  IngestResult result;
  std::set<std::string> seen;
  for (auto& d : docs) {
    IngestDocStats stats;
    stats.source = d.path.filename().string();
    stats.pages = d.pages;
    try {
      if (!d.prepared) throw Error(d.error);
      const auto& md = d.prepared->markdown;
      stats.doc_id = md.doc_id;
      if (!seen.insert(md.doc_id).second) {
        throw InvalidArgument("duplicate doc_id '" + md.doc_id + "'");
      }
      stats.elements_removed = d.prepared->elements_removed;
      stats.images = md.images.size();
      stats.tables = md.tables.size();
      const auto leaves = chunk_document(md.text, md.doc_id, config.max_chars);
      stats.leaf_chunks = leaves.size();
      store->erase_document(md.doc_id);
      index_chunks(leaves, *services.embedder, *store);
      if (config.raptor_enabled && !leaves.empty()) {
        RaptorConfig rc = config.raptor;
        rc.seed = config.seed;
        const auto tree = raptor_build(leaves, *services.embedder, *services.summarizer,
                                       store.get(), rc);
        for (std::size_t l = 1; l < tree.levels.size(); ++l) {
          stats.summary_chunks += tree.levels[l].size();
        }
      }
      std::filesystem::remove_all(out_dir / md.doc_id);
      write_markdown_document(md, out_dir);
      for (const auto& w : d.prepared->warnings) std::cerr << "warning: " << w << '\n';
    } catch (const std::exception& e) {
      stats.error = e.what();
      ++result.failures;
    }
    result.docs.push_back(std::move(stats));
  }

  store->save(store_path);
  result.store_size = store->size();

  nlohmann::ordered_json manifest;
  manifest["dimension"] = dim;
  manifest["embedder"] = services.embedder_name;
  manifest["config"] = to_json(config);
  std::set<std::string> all_docs;
  for (const auto& e : store->entries()) all_docs.insert(e.chunk.doc_id);
  manifest["documents"] = all_docs;
  std::ofstream out(out_dir / "manifest.json", std::ios::binary);
  out << manifest.dump(2) << '\n';
  return result;
}

LoadedIndex open_index(const std::filesystem::path& dir) {
  const auto manifest_path = dir / "manifest.json";
  const auto store_path = dir / "store.jsonl";
  if (!std::filesystem::exists(manifest_path) || !std::filesystem::exists(store_path)) {
    throw UnreadableError("no index at " + dir.string());
  }
  LoadedIndex idx;
  std::ifstream in(manifest_path, std::ios::binary);
  idx.manifest = nlohmann::json::parse(in);
  idx.store = VectorStore::load(store_path, idx.manifest.at("dimension").get<std::size_t>());
  idx.assets = AssetCatalog::scan(dir);
  return idx;
}

PreparedCorpus prepare_corpus(const std::filesystem::path& corpus_dir,
                              const PipelineConfig& config, Captioner& captioner) {
  PreparedCorpus out;
  for (auto& d : load_and_prepare(corpus_files(corpus_dir), config, captioner)) {
    if (!d.prepared) {
      out.warnings.push_back(d.path.filename().string() + ": " + d.error);
      continue;
    }
    out.docs.emplace_back(d.prepared->markdown.doc_id, d.prepared->markdown.text);
    out.warnings.insert(out.warnings.end(), d.prepared->warnings.begin(),
                        d.prepared->warnings.end());
  }
  return out;
}

}  // namespace docrag
