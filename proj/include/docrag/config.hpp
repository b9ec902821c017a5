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
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "docrag/embedding.hpp"
#include "docrag/header_footer.hpp"
#include "docrag/llm.hpp"
#include "docrag/markdown.hpp"
#include "docrag/media.hpp"
#include "docrag/qa.hpp"
#include "docrag/raptor.hpp"
#include "json.hpp"

namespace docrag {

// Absent endpoints select the deterministic mocks.
struct ServiceEndpoints {
  std::optional<std::string> llm;
  std::optional<std::string> embedder;
  std::optional<std::string> captioner;
  std::optional<std::string> qgen;
  std::optional<std::string> agen;
};

struct PipelineConfig {
  HeaderFooterConfig header_footer;
  ConverterConfig converter;
  std::size_t max_chars = kDefaultChunkChars;
  RaptorConfig raptor;
  bool raptor_enabled = true;
  std::size_t k = kDefaultTopK;
  std::uint64_t seed = 0;
  std::size_t questions_per_context = 3;
  ServiceEndpoints endpoints;
};

// Flat `key = value` lines; `#` starts a comment; strings may be quoted.
// Unknown keys and malformed values throw ParseError with the line number.
PipelineConfig parse_config(std::string_view text);
PipelineConfig load_config(const std::filesystem::path& path);

// LLM_URL, EMBEDDER_URL, CAPTIONER_URL, QGEN_URL, AGEN_URL override the file.
void apply_environment(PipelineConfig& config);

nlohmann::ordered_json to_json(const PipelineConfig& config);

struct Services {
  std::unique_ptr<Embedder> embedder;
  std::unique_ptr<Captioner> captioner;
  std::unique_ptr<LlmClient> llm;
  std::unique_ptr<LlmClient> qgen;
  std::unique_ptr<LlmClient> agen;
  std::unique_ptr<Summarizer> summarizer;
  std::string embedder_name;
};

Services make_services(const PipelineConfig& config);

}  // namespace docrag
