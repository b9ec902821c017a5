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

#include "docrag/markdown.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "docrag/error.hpp"
#include "docrag/utf8.hpp"

namespace docrag {
namespace {

std::string describe(std::size_t page, const BBox& b) {
  std::ostringstream s;
  s << "page " << page << " bbox [" << b.x0 << ", " << b.y0 << ", " << b.x1
    << ", " << b.y1 << "]";
  return s.str();
}

void append_cell(std::string& out, const std::string& cell) {
  out += ' ';
  for (char c : cell) {
    if (c == '|') out += '\\';
    out += c;
  }
  out += " |";
}

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::string flatten_newlines(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  return s;
}

}  // namespace

std::string image_id(std::size_t n) { return "image_" + std::to_string(n) + ".png"; }
std::string table_id(std::size_t n) { return "table_" + std::to_string(n); }

void TableRecord::validate() const {
  if (columns.empty()) throw InvalidArgument("table " + id + " has no columns");
  auto check = [&](const std::string& cell) {
    if (cell.find('\n') != std::string::npos) {
      throw InvalidArgument("table " + id + " has a newline in a cell");
    }
  };
  for (const auto& c : columns) check(c);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != columns.size()) {
      throw InvalidArgument("table " + id + " row " + std::to_string(r) + " has " +
                            std::to_string(rows[r].size()) + " cells, expected " +
                            std::to_string(columns.size()));
    }
    for (const auto& c : rows[r]) check(c);
  }
}

std::string render_markdown_table(const std::vector<std::string>& columns,
                                  const std::vector<std::vector<std::string>>& rows) {
  std::string out = "|";
  for (const auto& c : columns) append_cell(out, c);
  out += "\n|";
  for (std::size_t i = 0; i < columns.size(); ++i) out += " --- |";
  for (const auto& row : rows) {
    out += "\n|";
    for (const auto& c : row) append_cell(out, c);
  }
  return out;
}

std::string render_markdown_table(const TableRecord& record) {
  return render_markdown_table(record.columns, record.rows);
}

MarkdownDocument convert(const SourceDocument& doc, const ConverterConfig& config) {
  MarkdownDocument md;
  md.doc_id = doc.doc_id;
  md.image_dpi = config.image_dpi;

  std::vector<double> font_sizes;
  for (const auto& page : doc.pages) {
    for (const auto& e : page.elements) {
      if (e.kind == ElementKind::kText && e.font_size) font_sizes.push_back(*e.font_size);
    }
  }
  const double heading_threshold = config.heading_ratio * median(font_sizes);

  std::vector<std::string> page_blocks;
  for (std::size_t p = 0; p < doc.pages.size(); ++p) {
    std::vector<const PageElement*> order;
    for (const auto& e : doc.pages[p].elements) order.push_back(&e);
    std::stable_sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
      if (a->bbox.y0 != b->bbox.y0) return a->bbox.y0 < b->bbox.y0;
      return a->bbox.x0 < b->bbox.x0;
    });

    std::vector<std::string> lines;
    for (const PageElement* e : order) {
      switch (e->kind) {
        case ElementKind::kText: {
          if (!e->text) break;
          const auto text = utf8::trim(*e->text);
          if (text.empty()) break;
          const bool heading = e->font_size && !font_sizes.empty() &&
                               *e->font_size >= heading_threshold;
          lines.push_back((heading ? "# " : "") + std::string(text));
          break;
        }
        case ElementKind::kDrawing:
          if (e->payload.empty()) break;
          [[fallthrough]];
        case ElementKind::kImage: {
          if (!config.extract_images) break;
          ImageAsset asset;
          const std::size_t n = md.images.size() + 1;
          asset.id = image_id(n);
          asset.bytes = e->payload;
          asset.page_index = p;
          asset.bbox = e->bbox;
          lines.push_back("![image_" + std::to_string(n) + "](" + asset.id + ")");
          md.images.push_back(std::move(asset));
          break;
        }
        case ElementKind::kTable: {
          if (!e->table) {
            throw ConversionError("table element without cells at " +
                                  describe(p, e->bbox));
          }
          TableRecord t;
          t.id = table_id(md.tables.size() + 1);
          for (const auto& c : e->table->columns) t.columns.push_back(flatten_newlines(c));
          for (const auto& row : e->table->rows) {
            if (row.size() != t.columns.size()) {
              throw ConversionError("ragged table row at " + describe(p, e->bbox));
            }
            std::vector<std::string> cells;
            for (const auto& c : row) cells.push_back(flatten_newlines(c));
            t.rows.push_back(std::move(cells));
          }
          if (t.columns.empty()) {
            throw ConversionError("table without columns at " + describe(p, e->bbox));
          }
          t.page_index = p;
          t.bbox = e->bbox;
          lines.push_back(render_markdown_table(t));
          md.tables.push_back(std::move(t));
          break;
        }
      }
    }
    if (lines.empty()) continue;
    std::string block;
    if (config.paginate_output) {
      block = "{" + std::to_string(p) + "}" + std::string(48, '-') + "\n\n";
    }
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (i) block += '\n';
      block += lines[i];
    }
    page_blocks.push_back(std::move(block));
  }
  for (std::size_t i = 0; i < page_blocks.size(); ++i) {
    if (i) md.text += "\n\n";
    md.text += page_blocks[i];
  }
  return md;
}

void write_markdown_document(const MarkdownDocument& md,
                             const std::filesystem::path& root) {
  const auto dir = root / md.doc_id;
  std::filesystem::create_directories(dir / "images");
  {
    std::ofstream out(dir / "document.md", std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / "document.md").string());
    out << md.text;
  }
  for (const auto& img : md.images) {
    std::ofstream out(dir / "images" / img.id, std::ios::binary);
    if (!out) throw Error("cannot write image " + img.id);
    out << img.bytes;
  }
}

}  // namespace docrag
