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
#include <optional>
#include <string>
#include <vector>

#include "docrag/layout.hpp"

namespace docrag {

struct ImageAsset {
  std::string id;     // image_{n}.png
  std::string bytes;  // raster payload, possibly empty
  std::optional<std::string> caption;
  std::size_t page_index = 0;
  BBox bbox;

  friend bool operator==(const ImageAsset&, const ImageAsset&) = default;
};

struct TableRecord {
  std::string id;  // table_{n}
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::size_t page_index = 0;
  BBox bbox;

  // At least one column, rectangular rows, no raw newlines in cells.
  void validate() const;
  friend bool operator==(const TableRecord&, const TableRecord&) = default;
};

// The converted document: markdown text, extracted images, and tables.
struct MarkdownDocument {
  std::string doc_id;
  std::string text;
  std::vector<ImageAsset> images;
  std::vector<TableRecord> tables;
  int image_dpi = 96;
};

struct ConverterConfig {
  bool extract_images = true;
  int image_dpi = 96;  // recorded only; nothing is rendered
  bool paginate_output = false;
  double heading_ratio = 1.3;
};

std::string image_id(std::size_t n);
std::string table_id(std::size_t n);

// Emits elements in reading order (page, then y0, then x0). Throws
// ConversionError for ragged or missing table grids.
MarkdownDocument convert(const SourceDocument& doc, const ConverterConfig& config = {});

// Canonical GitHub-style table: single-space cell padding, `---`
// separators, `|` escaped as `\|`, no trailing newline.
std::string render_markdown_table(const std::vector<std::string>& columns,
                                  const std::vector<std::vector<std::string>>& rows);
std::string render_markdown_table(const TableRecord& record);

// Writes <root>/<doc_id>/document.md and <root>/<doc_id>/images/image_{n}.png.
void write_markdown_document(const MarkdownDocument& md,
                             const std::filesystem::path& root);

}  // namespace docrag
