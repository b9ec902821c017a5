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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace docrag {

// Half-open byte range into a document's markdown text.
struct CharSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  friend bool operator==(const CharSpan&, const CharSpan&) = default;
};

struct Chunk {
  std::string chunk_id;
  std::string doc_id;
  std::string text;
  std::optional<CharSpan> span;  // absent for summaries
  int level = 0;                 // 0 = leaf

  friend bool operator==(const Chunk&, const Chunk&) = default;
};

inline constexpr std::size_t kDefaultChunkChars = 1000;

std::string leaf_chunk_id(std::string_view doc_id, std::size_t index);

// Packs atomic units greedily into chunks of at most `max_chars` code
// points. An image line with its caption line, and a dictionary table line,
// are never split and may exceed the limit on their own; other lines
// longer than the limit are cut at code-point boundaries. Chunk texts
// concatenate to `md_text`.
std::vector<Chunk> chunk_document(std::string_view md_text, std::string_view doc_id,
                                  std::size_t max_chars = kDefaultChunkChars);

}  // namespace docrag
