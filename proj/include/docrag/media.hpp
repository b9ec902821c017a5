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

#include <string>
#include <string_view>
#include <vector>

#include "docrag/markdown.hpp"

namespace docrag {

// Produces a one-paragraph description of an image.
class Captioner {
 public:
  virtual ~Captioner() = default;
  virtual std::string caption(std::string_view image_bytes,
                              const std::string& image_id) = 0;
};

// Caption is the first 8 hex digits of the FNV-1a digest of the bytes.
class MockCaptioner : public Captioner {
 public:
  std::string caption(std::string_view image_bytes, const std::string& image_id) override;
};

// Request {image_id, image_base64}, response {caption}.
class HttpCaptioner : public Captioner {
 public:
  explicit HttpCaptioner(std::string url) : url_(std::move(url)) {}
  std::string caption(std::string_view image_bytes, const std::string& image_id) override;

 private:
  std::string url_;
};

inline constexpr std::string_view kCaptionUnavailable = "(caption unavailable)";

std::string caption_line(const std::string& image_id, std::string_view caption);

// Inserts `Caption [image_n.png]: ...` below every image line that does not
// already carry one. Captioner failures become kCaptionUnavailable and a
// message in `warnings`.
MarkdownDocument caption_images(MarkdownDocument md, Captioner& captioner,
                                std::vector<std::string>* warnings = nullptr);

// Parses a GitHub-style markdown table. Cells are trimmed and `\|`
// unescaped. Throws ParseError carrying the 0-based line index.
TableRecord parse_markdown_table(std::string_view markdown_table);

// `[table_n] {"columns":[...],"rows":[[...],...]}` on a single line.
std::string compress_table(std::string_view markdown_table, std::string_view table_id);
std::string to_dict_table_text(const TableRecord& record);

// Throws ParseError carrying the byte offset of the first violation.
TableRecord parse_dict_table(std::string_view dict_text);
std::string decompress_table(std::string_view dict_text);
bool is_dict_table_line(std::string_view line);

// Replaces each rendered table of md.tables in md.text by its dictionary line.
MarkdownDocument compress_tables(MarkdownDocument md);

}  // namespace docrag
