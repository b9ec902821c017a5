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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "docrag/embedding.hpp"
#include "docrag/error.hpp"
#include "docrag/llm.hpp"
#include "docrag/vector_store.hpp"
#include "json.hpp"

namespace docrag {

inline constexpr std::size_t kDefaultTopK = 10;

struct Query {
  std::string text;
  // Throws InvalidArgument if blank.
  explicit Query(std::string text);
};

struct RetrievedRef {
  std::string chunk_id;
  double score = 0;
  friend bool operator==(const RetrievedRef&, const RetrievedRef&) = default;
};

struct ResolvedImage {
  std::string image_id;
  std::string path;
  friend bool operator==(const ResolvedImage&, const ResolvedImage&) = default;
};

struct QAResult {
  std::string answer_text;
  std::string raw_answer;
  std::vector<RetrievedRef> retrieved;
  std::vector<ResolvedImage> resolved_images;
  std::vector<std::string> resolved_tables;
  std::vector<std::string> warnings;
};

nlohmann::ordered_json to_json(const QAResult& r);

// Raised when the LLM call fails; carries what retrieval produced.
class AnswerError : public Error {
 public:
  AnswerError(const std::string& what, std::vector<RetrievedRef> retrieved)
      : Error(what), retrieved_(std::move(retrieved)) {}
  const std::vector<RetrievedRef>& retrieved() const { return retrieved_; }

 private:
  std::vector<RetrievedRef> retrieved_;
};

struct PromptTemplate {
  std::string text;
  static PromptTemplate answer_default();
  // {context} and {question} must each occur exactly once.
  void validate() const;
};

std::vector<ScoredChunk> retrieve(const Query& query, const VectorStore& store,
                                  Embedder& embedder, std::size_t k = kDefaultTopK);

// Shared instruction, then the template with chunks (each under a
// `--- chunk <rank> ---` line) in {context} and the query in {question}.
std::string build_prompt(const Query& query, const std::vector<Chunk>& chunks,
                         const PromptTemplate& tmpl = PromptTemplate::answer_default());
std::string fill_template(std::string_view tmpl, const std::map<std::string, std::string>& slots);

// Text of the chunk at 1-based `rank` inside a prompt built by build_prompt;
// empty if absent.
std::string prompt_chunk(std::string_view prompt, std::size_t rank);

using ImageResolver = std::function<std::optional<std::string>(const std::string& image_id)>;

// Image files of an index directory: <root>/<doc_id>/images/image_{n}.png.
class AssetCatalog {
 public:
  AssetCatalog() = default;
  static AssetCatalog scan(const std::filesystem::path& root);

  void add(const std::string& doc_id, const std::string& image_id, std::string path);
  // Image ids repeat across documents; look in `doc_order` first to last.
  // An empty order searches every document in doc_id order.
  ImageResolver resolver(std::vector<std::string> doc_order = {}) const;

 private:
  std::map<std::string, std::map<std::string, std::string>> by_doc_;
};

struct RecoveredAnswer {
  std::string text;
  std::vector<ResolvedImage> images;
  std::vector<std::string> tables;
  std::vector<std::string> warnings;
};

// Replaces `[image_n.png]` citations the resolver knows with markdown image
// links and dictionary table lines with markdown tables. Unknown image ids
// are kept verbatim and reported in warnings.
RecoveredAnswer recover_media(std::string_view raw_answer, const ImageResolver& resolver);

QAResult answer(const Query& query, const VectorStore& store, Embedder& embedder,
                LlmClient& llm, const AssetCatalog& assets, std::size_t k = kDefaultTopK,
                const PromptTemplate& tmpl = PromptTemplate::answer_default());

// Answers with the verbatim text of the rank-1 chunk.
class EchoTopChunkLlm : public LlmClient {
 public:
  std::string complete(const std::string& prompt) override;
};

// Answers by citing every image id and table line found in the rank-1 chunk.
class CiteTopChunkMediaLlm : public LlmClient {
 public:
  std::string complete(const std::string& prompt) override;
};

}  // namespace docrag
