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

#include "json.hpp"

namespace docrag {

// Page coordinates in points. Origin is the top-left corner of the page and
// y grows downward, so "near the top" means small y.
struct BBox {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double center_x() const { return 0.5 * (x0 + x1); }
  double center_y() const { return 0.5 * (y0 + y1); }
  bool valid() const;
  bool within(double page_width, double page_height) const;

  friend bool operator==(const BBox&, const BBox&) = default;
};

enum class ElementKind { kText, kImage, kDrawing, kTable };

const char* to_string(ElementKind kind);
ElementKind element_kind_from_string(const std::string& s);

struct TableCells {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  friend bool operator==(const TableCells&, const TableCells&) = default;
};

struct PageElement {
  std::size_t page_index = 0;
  BBox bbox;
  ElementKind kind = ElementKind::kText;
  std::optional<std::string> text;       // required for kText
  std::optional<double> font_size;
  std::string payload;                   // raster bytes for images/drawings
  std::optional<TableCells> table;       // cell grid for kTable

  friend bool operator==(const PageElement&, const PageElement&) = default;
};

struct Page {
  double width = 612;
  double height = 792;
  std::vector<PageElement> elements;

  friend bool operator==(const Page&, const Page&) = default;
};

struct SourceDocument {
  std::string doc_id;
  std::vector<Page> pages;

  std::size_t element_count() const;
  friend bool operator==(const SourceDocument&, const SourceDocument&) = default;
};

// Checks every structural invariant; throws InvalidArgument on violation.
void validate(const SourceDocument& doc);

// Backend contract: given a path, return pages of elements in source order.
class DocumentBackend {
 public:
  virtual ~DocumentBackend() = default;
  virtual SourceDocument load(const std::filesystem::path& path) const = 0;
};

// Reads the JSON layout format written by `save_layout`, and synthetic
// document spec files (see synthetic.hpp), distinguished by whether "pages"
// is an array or an integer.
class JsonLayoutBackend : public DocumentBackend {
 public:
  SourceDocument load(const std::filesystem::path& path) const override;
};

SourceDocument load_document(const std::filesystem::path& path,
                             const DocumentBackend& backend);

nlohmann::ordered_json to_json(const SourceDocument& doc);
SourceDocument source_document_from_json(const nlohmann::json& j);
void save_layout(const SourceDocument& doc, const std::filesystem::path& path);

}  // namespace docrag
