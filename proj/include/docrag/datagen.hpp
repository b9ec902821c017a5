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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "docrag/llm.hpp"
#include "json.hpp"

namespace docrag {

inline constexpr std::size_t kTrainingContextChars = 5000;
inline constexpr std::size_t kContextPieces = 5;
inline constexpr std::size_t kPieceChars = 1000;

// Consecutive slices of `size` code points. A final remainder shorter than
// size / 2 is merged into the previous slice. Slices concatenate to the input.
std::vector<std::string> split_training_contexts(std::string_view md_text,
                                                 std::size_t size = kTrainingContextChars);

// One question per non-blank line of the generator reply. A generator
// failure yields no questions and a warning.
std::vector<std::string> generate_questions(const std::string& context, LlmClient& qgen,
                                            std::size_t count,
                                            std::vector<std::string>* warnings = nullptr);

// Trimmed completion of the answer prompt, or nullopt (with a warning) when
// the generator fails or answers blank.
std::optional<std::string> generate_answer(const std::string& question,
                                           const std::string& context, LlmClient& agen,
                                           std::vector<std::string>* warnings = nullptr);

enum class Provenance { kSource, kDistractor };

struct ContextChunk {
  std::string text;
  Provenance provenance = Provenance::kSource;
  std::optional<std::size_t> source_index;  // position in the source context
  std::string doc_id;
  friend bool operator==(const ContextChunk&, const ContextChunk&) = default;
};

struct TrainingExample {
  std::string instruction;
  std::vector<ContextChunk> context_chunks;
  std::string question;
  std::string answer;
  std::string source_doc_id;
  friend bool operator==(const TrainingExample&, const TrainingExample&) = default;
};

struct PoolChunk {
  std::string doc_id;
  std::string text;
};

// 1000-code-point slices of a document, blank slices dropped.
std::vector<PoolChunk> pool_chunks(std::string_view doc_id, std::string_view md_text,
                                   std::size_t piece_chars = kPieceChars);

// Five source pieces of near-equal length (at most 1000 code points), five
// distractors drawn without replacement from pool entries of other
// documents, all ten shuffled. Both draws are seeded.
TrainingExample assemble_example(const std::string& context, const std::string& question,
                                 const std::string& answer, const std::string& source_doc_id,
                                 std::span<const PoolChunk> distractor_pool,
                                 std::uint64_t seed);

nlohmann::ordered_json to_json(const TrainingExample& ex);
TrainingExample training_example_from_json(const nlohmann::json& j);
std::string to_jsonl(std::span<const TrainingExample> examples);
void export_dataset(std::span<const TrainingExample> examples, const std::filesystem::path& path);
std::vector<TrainingExample> import_dataset(const std::filesystem::path& path);

struct DatagenDocument {
  std::string doc_id;
  std::string markdown;
};

struct DatagenConfig {
  std::size_t context_chars = kTrainingContextChars;
  std::size_t questions_per_context = 3;
  std::uint64_t seed = 0;
};

// Output order is (document, context, question).
std::vector<TrainingExample> generate_dataset(std::span<const DatagenDocument> docs,
                                              LlmClient& qgen, LlmClient& agen,
                                              const DatagenConfig& config,
                                              std::vector<std::string>* warnings = nullptr);

// Asks about the opening words of successive context sentences, as many
// questions as the prompt requests.
class MockQuestionGenerator : public LlmClient {
 public:
  std::string complete(const std::string& prompt) override;
};

// Answers with the first sentence of the context.
class MockAnswerGenerator : public LlmClient {
 public:
  std::string complete(const std::string& prompt) override;
};

}  // namespace docrag
