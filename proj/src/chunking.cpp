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

#include "docrag/chunking.hpp"

#include <cstdio>
#include <regex>

#include "docrag/error.hpp"
#include "docrag/media.hpp"
#include "docrag/utf8.hpp"

namespace docrag {
namespace {

struct Unit {
  std::size_t begin, end;  // bytes
  std::size_t chars;
  bool atomic;
};

std::string_view strip_newline(std::string_view line) {
  if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
  return line;
}

bool is_image_line(std::string_view line) {
  static const std::regex re(R"(^!\[image_\d+\]\([^)]*\)$)");
  line = strip_newline(line);
  return std::regex_match(line.begin(), line.end(), re);
}

bool is_caption_line(std::string_view line) {
  static const std::regex re(R"(^Caption \[image_\d+\.png\]:.*$)");
  line = strip_newline(line);
  return std::regex_match(line.begin(), line.end(), re);
}

std::vector<Unit> split_units(std::string_view text, std::size_t max_chars) {
  std::vector<std::string_view> lines;
  std::vector<std::size_t> starts;
  for (std::size_t b = 0; b < text.size();) {
    auto e = text.find('\n', b);
    e = e == std::string_view::npos ? text.size() : e + 1;
    lines.push_back(text.substr(b, e - b));
    starts.push_back(b);
    b = e;
  }

  std::vector<Unit> units;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t b = starts[i];
    if (is_image_line(lines[i]) && i + 1 < lines.size() && is_caption_line(lines[i + 1])) {
      const std::size_t e = b + lines[i].size() + lines[i + 1].size();
      units.push_back({b, e, utf8::length(text.substr(b, e - b)), true});
      ++i;
      continue;
    }
    const std::size_t chars = utf8::length(lines[i]);
    if (is_dict_table_line(strip_newline(lines[i])) || chars <= max_chars) {
      units.push_back({b, b + lines[i].size(), chars, chars > max_chars});
      continue;
    }
    for (std::size_t pb = 0; pb < lines[i].size();) {
      const std::size_t pe = utf8::advance(lines[i], pb, max_chars);
      units.push_back({b + pb, b + pe, utf8::length(lines[i].substr(pb, pe - pb)), false});
      pb = pe;
    }
  }
  return units;
}

}  // namespace

std::string leaf_chunk_id(std::string_view doc_id, std::size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "/c%05zu", index);
  return std::string(doc_id) + buf;
}

std::vector<Chunk> chunk_document(std::string_view md_text, std::string_view doc_id,
                                  std::size_t max_chars) {
  if (max_chars < 1) throw InvalidArgument("max_chars must be >= 1");
  std::vector<Chunk> chunks;
  std::size_t begin = 0, end = 0, chars = 0;
  auto flush = [&] {
    if (end == begin) return;
    Chunk c;
    c.chunk_id = leaf_chunk_id(doc_id, chunks.size());
    c.doc_id = std::string(doc_id);
    c.text = std::string(md_text.substr(begin, end - begin));
    c.span = CharSpan{begin, end};
    chunks.push_back(std::move(c));
    begin = end;
    chars = 0;
  };
  for (const Unit& u : split_units(md_text, max_chars)) {
    if (chars > 0 && chars + u.chars > max_chars) flush();
    end = u.end;
    chars += u.chars;
    if (chars >= max_chars) flush();
  }
  flush();
  return chunks;
}

}  // namespace docrag
