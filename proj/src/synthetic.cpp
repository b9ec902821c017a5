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

#include "docrag/synthetic.hpp"

#include <algorithm>
#include <array>
#include <string_view>

#include "docrag/error.hpp"
#include "docrag/rng.hpp"

namespace docrag {
namespace {

constexpr std::array<std::string_view, 48> kWords = {
    "pump",     "valve",     "pressure", "sensor",   "control", "system",
    "module",   "flow",      "rate",     "thermal",  "load",    "circuit",
    "voltage",  "signal",    "output",   "input",    "safety",  "limit",
    "operator", "procedure", "routine",  "check",    "monitor", "alarm",
    "cooling",  "reactor",   "turbine",  "gear",     "bearing", "shaft",
    "housing",  "seal",      "filter",   "manifold", "channel", "data",
    "network",  "protocol",  "interval", "service",  "battery", "charge",
    "cycle",    "frequency", "drive",    "motor",    "panel",   "switch"};

std::string sentence(Rng& rng, std::size_t words) {
  std::string s;
  for (std::size_t i = 0; i < words; ++i) {
    if (i) s += ' ';
    s += kWords[rng.below(kWords.size())];
  }
  s[0] = static_cast<char>(s[0] - 'a' + 'A');
  s += '.';
  return s;
}

std::string paragraph(Rng& rng, std::size_t min_chars, std::size_t max_chars) {
  const std::size_t target = min_chars + rng.below(max_chars - min_chars + 1);
  std::string p;
  while (p.size() < target) {
    if (!p.empty()) p += ' ';
    p += sentence(rng, 6 + rng.below(8));
  }
  return p;
}

BBox clamp_box(BBox b, double w, double h) {
  b.x0 = std::clamp(b.x0, 0.0, w - 1);
  b.y0 = std::clamp(b.y0, 0.0, h - 1);
  b.x1 = std::clamp(b.x1, b.x0 + 0.5, w);
  b.y1 = std::clamp(b.y1, b.y0 + 0.5, h);
  return b;
}

}  // namespace

SyntheticDocument build_synthetic_document(const SyntheticSpec& spec) {
  if (spec.pages < 1) throw InvalidArgument("synthetic spec needs >= 1 page");
  if (!(spec.page_width > 0) || !(spec.page_height > 0)) {
    throw InvalidArgument("synthetic spec needs positive page size");
  }
  Rng rng(spec.seed);
  const double w = spec.page_width;
  const double h = spec.page_height;
  const double margin = 54 + rng.uniform(0, 36);
  const double text_width = w - 2 * margin;

  SyntheticDocument out;
  out.doc.doc_id = spec.doc_id;
  for (std::size_t p = 0; p < spec.pages; ++p) {
    Page page;
    page.width = w;
    page.height = h;
    std::vector<ElementRole> roles;
    auto add = [&](PageElement e, ElementRole role) {
      e.page_index = p;
      e.bbox = clamp_box(e.bbox, w, h);
      page.elements.push_back(std::move(e));
      roles.push_back(role);
    };

    if (spec.header_y) {
      PageElement e;
      e.text = spec.header_text;
      e.font_size = 9;
      const double len = 4.5 * static_cast<double>(spec.header_text.size());
      const double cy = *spec.header_y * h + rng.uniform(-0.4, 0.4);
      const bool right = spec.mirrored_header && (p % 2 == 1);
      const double x0 = right ? w - margin - len : margin;
      e.bbox = {x0, cy - 5, x0 + len, cy + 5};
      add(std::move(e), ElementRole::kHeader);
    }

    // Body content lives in the middle of the page, stacked in slots.
    const std::size_t blocks = spec.body_elements_per_page;
    const bool has_image = spec.image_every && (p + 1) % spec.image_every == 0;
    const bool has_table = spec.table_every && (p + 1) % spec.table_every == 0;
    const std::size_t slots = blocks + has_image + has_table;
    const double top = 0.18 * h;
    const double bottom = 0.82 * h;
    const double slot = slots ? (bottom - top) / static_cast<double>(slots) : 0;
    std::size_t s = 0;
    for (std::size_t b = 0; b < blocks; ++b, ++s) {
      PageElement e;
      const bool heading = b == 0 && rng.below(3) == 0;
      e.text = heading ? sentence(rng, 3 + rng.below(3)) : paragraph(rng, 150, 600);
      e.font_size = heading ? 16.0 : 10.0;
      const double y0 = top + slot * static_cast<double>(s) + rng.uniform(0, 0.15 * slot);
      const double y1 = y0 + slot * rng.uniform(0.5, 0.8);
      e.bbox = {margin, y0, margin + text_width * rng.uniform(0.6, 1.0), y1};
      add(std::move(e), ElementRole::kBody);
    }
    if (has_image) {
      PageElement e;
      e.kind = ElementKind::kImage;
      e.payload = "PNG:figure of the " + std::string(kWords[rng.below(kWords.size())]) +
                  " " + std::string(kWords[rng.below(kWords.size())]) + " assembly, " +
                  spec.doc_id + " page " + std::to_string(p + 1);
      const double y0 = top + slot * static_cast<double>(s) + 2;
      e.bbox = {margin + 40, y0, margin + 40 + text_width * 0.5, y0 + slot * 0.8};
      add(std::move(e), ElementRole::kBody);
      ++s;
    }
    if (has_table) {
      PageElement e;
      e.kind = ElementKind::kTable;
      TableCells t;
      for (int c = 0; c < 3; ++c) {
        t.columns.push_back(std::string(kWords[rng.below(kWords.size())]));
      }
      const std::size_t rows = 3 + rng.below(3);
      for (std::size_t r = 0; r < rows; ++r) {
        t.rows.push_back({std::string(kWords[rng.below(kWords.size())]),
                          std::to_string(rng.below(1000)),
                          std::to_string(rng.below(100)) + "." +
                              std::to_string(rng.below(10))});
      }
      e.table = std::move(t);
      const double y0 = top + slot * static_cast<double>(s) + 2;
      e.bbox = {margin, y0, margin + text_width, y0 + slot * 0.8};
      add(std::move(e), ElementRole::kBody);
      ++s;
    }

    if (spec.footer_y) {
      PageElement e;
      e.text = "Page " + std::to_string(p + 1) + " of " + std::to_string(spec.pages);
      e.font_size = 9;
      const double len = 4.5 * static_cast<double>(e.text->size());
      const double cy = *spec.footer_y * h + rng.uniform(-0.4, 0.4);
      e.bbox = {0.5 * (w - len), cy - 5, 0.5 * (w + len), cy + 5};
      add(std::move(e), ElementRole::kFooter);
    }
    out.doc.pages.push_back(std::move(page));
    out.labels.push_back(std::move(roles));
  }
  return out;
}

SyntheticSpec synthetic_spec_from_json(const nlohmann::json& j,
                                       const std::string& default_doc_id) {
  SyntheticSpec s;
  s.doc_id = j.value("doc_id", default_doc_id);
  s.pages = j.at("pages").get<std::size_t>();
  s.seed = j.at("seed").get<std::uint64_t>();
  auto optional_y = [&](const char* key) -> std::optional<double> {
    const auto& v = j.at(key);
    if (v.is_null()) return std::nullopt;
    return v.get<double>();
  };
  s.header_y = optional_y("header_y");
  s.footer_y = optional_y("footer_y");
  s.body_elements_per_page = j.at("body_elements_per_page").get<std::size_t>();
  s.page_width = j.value("page_width", s.page_width);
  s.page_height = j.value("page_height", s.page_height);
  s.header_text = j.value("header_text", s.header_text);
  s.mirrored_header = j.value("mirrored_header", s.mirrored_header);
  s.image_every = j.value("image_every", s.image_every);
  s.table_every = j.value("table_every", s.table_every);
  return s;
}

nlohmann::ordered_json to_json(const SyntheticSpec& s) {
  nlohmann::ordered_json j;
  j["doc_id"] = s.doc_id;
  j["pages"] = s.pages;
  j["seed"] = s.seed;
  j["header_y"] = s.header_y ? nlohmann::ordered_json(*s.header_y) : nullptr;
  j["footer_y"] = s.footer_y ? nlohmann::ordered_json(*s.footer_y) : nullptr;
  j["body_elements_per_page"] = s.body_elements_per_page;
  j["page_width"] = s.page_width;
  j["page_height"] = s.page_height;
  j["header_text"] = s.header_text;
  j["mirrored_header"] = s.mirrored_header;
  j["image_every"] = s.image_every;
  j["table_every"] = s.table_every;
  return j;
}

}  // namespace docrag
