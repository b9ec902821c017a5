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

#include "docrag/layout.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "docrag/encoding.hpp"
#include "docrag/error.hpp"
#include "docrag/synthetic.hpp"

namespace docrag {

bool BBox::valid() const {
  for (double v : {x0, y0, x1, y1}) {
    if (!std::isfinite(v) || v < 0) return false;
  }
  return x0 < x1 && y0 < y1;
}

bool BBox::within(double page_width, double page_height) const {
  return valid() && x1 <= page_width && y1 <= page_height;
}

const char* to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::kText: return "text";
    case ElementKind::kImage: return "image";
    case ElementKind::kDrawing: return "drawing";
    case ElementKind::kTable: return "table";
  }
  return "text";
}

ElementKind element_kind_from_string(const std::string& s) {
  if (s == "text") return ElementKind::kText;
  if (s == "image") return ElementKind::kImage;
  if (s == "drawing") return ElementKind::kDrawing;
  if (s == "table") return ElementKind::kTable;
  throw InvalidArgument("unknown element kind '" + s + "'");
}

std::size_t SourceDocument::element_count() const {
  std::size_t n = 0;
  for (const auto& p : pages) n += p.elements.size();
  return n;
}

void validate(const SourceDocument& doc) {
  if (doc.pages.empty()) {
    throw InvalidArgument("document '" + doc.doc_id + "' has zero pages");
  }
  for (std::size_t p = 0; p < doc.pages.size(); ++p) {
    const auto& page = doc.pages[p];
    if (!(page.width > 0) || !(page.height > 0)) {
      throw InvalidArgument("page " + std::to_string(p) + " has no area");
    }
    for (const auto& e : page.elements) {
      if (e.page_index != p) {
        throw InvalidArgument("element page_index " +
                              std::to_string(e.page_index) + " on page " +
                              std::to_string(p));
      }
      if (!e.bbox.within(page.width, page.height)) {
        throw InvalidArgument("element bbox outside page " + std::to_string(p));
      }
      if (e.kind == ElementKind::kText && !e.text) {
        throw InvalidArgument("text element without text on page " +
                              std::to_string(p));
      }
    }
  }
}

nlohmann::ordered_json to_json(const SourceDocument& doc) {
  nlohmann::ordered_json pages = nlohmann::ordered_json::array();
  for (const auto& page : doc.pages) {
    nlohmann::ordered_json elements = nlohmann::ordered_json::array();
    for (const auto& e : page.elements) {
      nlohmann::ordered_json je;
      je["kind"] = to_string(e.kind);
      je["bbox"] = {e.bbox.x0, e.bbox.y0, e.bbox.x1, e.bbox.y1};
      if (e.text) je["text"] = *e.text;
      if (e.font_size) je["font_size"] = *e.font_size;
      if (!e.payload.empty()) je["payload_base64"] = base64::encode(e.payload);
      if (e.table) {
        je["table"] = {{"columns", e.table->columns}, {"rows", e.table->rows}};
      }
      elements.push_back(std::move(je));
    }
    pages.push_back({{"width", page.width},
                     {"height", page.height},
                     {"elements", std::move(elements)}});
  }
  nlohmann::ordered_json j;
  j["doc_id"] = doc.doc_id;
  j["pages"] = std::move(pages);
  return j;
}

SourceDocument source_document_from_json(const nlohmann::json& j) {
  SourceDocument doc;
  doc.doc_id = j.value("doc_id", std::string{});
  const auto& pages = j.at("pages");
  for (std::size_t p = 0; p < pages.size(); ++p) {
    const auto& jp = pages[p];
    Page page;
    page.width = jp.value("width", 612.0);
    page.height = jp.value("height", 792.0);
    for (const auto& je : jp.value("elements", nlohmann::json::array())) {
      PageElement e;
      e.page_index = p;
      e.kind = element_kind_from_string(je.value("kind", std::string{"text"}));
      const auto& b = je.at("bbox");
      e.bbox = {b.at(0).get<double>(), b.at(1).get<double>(),
                b.at(2).get<double>(), b.at(3).get<double>()};
      if (je.contains("text")) e.text = je["text"].get<std::string>();
      if (je.contains("font_size")) e.font_size = je["font_size"].get<double>();
      if (je.contains("payload_base64")) {
        e.payload = base64::decode(je["payload_base64"].get<std::string>());
      }
      if (je.contains("table")) {
        TableCells t;
        t.columns = je["table"].at("columns").get<std::vector<std::string>>();
        t.rows = je["table"]
                     .at("rows")
                     .get<std::vector<std::vector<std::string>>>();
        e.table = std::move(t);
      }
      page.elements.push_back(std::move(e));
    }
    doc.pages.push_back(std::move(page));
  }
  return doc;
}

void save_layout(const SourceDocument& doc, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << to_json(doc).dump(1) << '\n';
}

SourceDocument JsonLayoutBackend::load(const std::filesystem::path& path) const {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UnreadableError("unreadable: cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  if (bytes.empty()) throw UnreadableError("unreadable: empty file " + path.string());
  if (bytes.rfind("%PDF", 0) == 0) {
    if (bytes.find("/Encrypt") != std::string::npos) {
      throw EncryptedDocumentError("encrypted PDF: " + path.string());
    }
    throw UnreadableError("unreadable: " + path.string() +
                          " is a raw PDF; this backend reads JSON page layouts");
  }
  nlohmann::json j = nlohmann::json::parse(bytes, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("pages")) {
    throw UnreadableError("unreadable: " + path.string() +
                          " is not a layout or synthetic spec file");
  }
  const std::string stem = path.stem().string();
  try {
    if (j["pages"].is_number_integer()) {
      return build_synthetic_document(synthetic_spec_from_json(j, stem)).doc;
    }
    SourceDocument doc = source_document_from_json(j);
    if (doc.doc_id.empty()) doc.doc_id = stem;
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw UnreadableError("unreadable: " + path.string() + ": " + e.what());
  }
}

SourceDocument load_document(const std::filesystem::path& path,
                             const DocumentBackend& backend) {
  SourceDocument doc = backend.load(path);
  if (doc.pages.empty()) {
    throw UnreadableError("unreadable: " + path.string() + " has zero pages");
  }
  validate(doc);
  return doc;
}

}  // namespace docrag
