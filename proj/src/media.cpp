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

#include "docrag/media.hpp"

#include <cstdio>
#include <regex>

#include "docrag/encoding.hpp"
#include "docrag/error.hpp"
#include "docrag/http.hpp"
#include "docrag/rng.hpp"
#include "docrag/utf8.hpp"
#include "json.hpp"

namespace docrag {
namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t b = 0;
  while (true) {
    const auto e = text.find('\n', b);
    if (e == std::string_view::npos) {
      lines.push_back(text.substr(b));
      break;
    }
    lines.push_back(text.substr(b, e - b));
    b = e + 1;
  }
  return lines;
}

std::string normalize_caption(std::string_view raw) {
  std::string out;
  bool space = false;
  for (char c : utf8::trim(raw)) {
    if (c == '\n' || c == '\r' || c == '\t' || c == ' ') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

// Splits one table line into cells on unescaped pipes.
std::vector<std::string> split_row(std::string_view line, std::size_t row_index) {
  auto s = utf8::trim(line);
  if (s.empty() || s.front() != '|') {
    throw ParseError("table row does not start with '|'", row_index);
  }
  s.remove_prefix(1);
  std::vector<std::string> cells;
  std::string cell;
  bool closed = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size() && s[i + 1] == '|') {
      cell += '|';
      ++i;
      closed = false;
    } else if (s[i] == '|') {
      cells.emplace_back(utf8::trim(cell));
      cell.clear();
      closed = true;
    } else {
      cell += s[i];
      closed = false;
    }
  }
  if (!closed && !utf8::trim(cell).empty()) cells.emplace_back(utf8::trim(cell));
  return cells;
}

bool is_separator_cell(const std::string& c) {
  if (c.empty()) return false;
  std::size_t b = c.front() == ':' ? 1 : 0;
  std::size_t e = c.size() - (c.size() > b && c.back() == ':' ? 1 : 0);
  if (e <= b) return false;
  for (std::size_t i = b; i < e; ++i) {
    if (c[i] != '-') return false;
  }
  return true;
}

const std::regex& image_line_re() {
  static const std::regex re(R"(^!\[image_(\d+)\]\(image_\d+\.png\)$)");
  return re;
}

}  // namespace

std::string MockCaptioner::caption(std::string_view image_bytes, const std::string&) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(image_bytes)));
  return std::string(buf, 8);
}

std::string HttpCaptioner::caption(std::string_view image_bytes,
                                   const std::string& image_id) {
  const nlohmann::json req = {{"image_id", image_id},
                              {"image_base64", base64::encode(image_bytes)}};
  const auto res = http::post_json(url_, req);
  if (!res.is_object() || !res.contains("caption") || !res["caption"].is_string()) {
    throw Error("captioner reply lacks a string 'caption'");
  }
  return res["caption"].get<std::string>();
}

std::string caption_line(const std::string& image_id, std::string_view caption) {
  return "Caption [" + image_id + "]: " + std::string(caption);
}

MarkdownDocument caption_images(MarkdownDocument md, Captioner& captioner,
                                std::vector<std::string>* warnings) {
  if (md.images.empty()) return md;
  const auto lines = split_lines(md.text);
  std::string out;
  out.reserve(md.text.size() + 64 * md.images.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) out += '\n';
    out += lines[i];
    std::match_results<std::string_view::const_iterator> m;
    if (!std::regex_match(lines[i].begin(), lines[i].end(), m, image_line_re())) continue;
    const std::string id = "image_" + m[1].str() + ".png";
    const std::string prefix = "Caption [" + id + "]:";
    if (i + 1 < lines.size() && lines[i + 1].substr(0, prefix.size()) == prefix) continue;

    auto asset = std::find_if(md.images.begin(), md.images.end(),
                              [&](const ImageAsset& a) { return a.id == id; });
    std::string text;
    try {
      if (asset == md.images.end()) throw Error("no asset for " + id);
      text = normalize_caption(captioner.caption(asset->bytes, id));
      if (text.empty()) throw Error("empty caption for " + id);
    } catch (const std::exception& e) {
      if (warnings) warnings->push_back(md.doc_id + ": " + e.what());
      text = std::string(kCaptionUnavailable);
    }
    if (asset != md.images.end()) asset->caption = text;
    out += '\n';
    out += caption_line(id, text);
  }
  md.text = std::move(out);
  return md;
}

TableRecord parse_markdown_table(std::string_view markdown_table) {
  auto text = markdown_table;
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  const auto lines = split_lines(text);
  if (lines.size() < 2) throw ParseError("markdown table lacks a separator row", 1);
  TableRecord t;
  t.columns = split_row(lines[0], 0);
  if (t.columns.empty()) throw ParseError("markdown table has no columns", 0);
  const auto sep = split_row(lines[1], 1);
  if (sep.size() != t.columns.size() ||
      !std::all_of(sep.begin(), sep.end(), is_separator_cell)) {
    throw ParseError("malformed separator row", 1);
  }
  for (std::size_t r = 2; r < lines.size(); ++r) {
    auto cells = split_row(lines[r], r);
    if (cells.size() != t.columns.size()) {
      throw ParseError("ragged row: " + std::to_string(cells.size()) + " cells, expected " +
                           std::to_string(t.columns.size()),
                       r);
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

std::string to_dict_table_text(const TableRecord& record) {
  nlohmann::ordered_json j;
  j["columns"] = record.columns;
  j["rows"] = record.rows;
  return "[" + record.id + "] " + j.dump();
}

std::string compress_table(std::string_view markdown_table, std::string_view table_id) {
  static const std::regex id_re(R"(^table_\d+$)");
  if (!std::regex_match(table_id.begin(), table_id.end(), id_re)) {
    throw InvalidArgument("table id must look like table_<n>: '" + std::string(table_id) + "'");
  }
  TableRecord t = parse_markdown_table(markdown_table);
  t.id = std::string(table_id);
  return to_dict_table_text(t);
}

TableRecord parse_dict_table(std::string_view s) {
  constexpr std::string_view kPrefix = "[table_";
  if (s.substr(0, kPrefix.size()) != kPrefix) {
    std::size_t i = 0;
    while (i < kPrefix.size() && i < s.size() && s[i] == kPrefix[i]) ++i;
    throw ParseError("expected '[table_' marker", i);
  }
  std::size_t i = kPrefix.size();
  const std::size_t digits = i;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
  if (i == digits) throw ParseError("expected table number", i);
  if (i >= s.size() || s[i] != ']') throw ParseError("expected ']'", i);
  if (i + 1 >= s.size() || s[i + 1] != ' ') throw ParseError("expected ' ' after marker", i + 1);
  TableRecord t;
  t.id = std::string(s.substr(1, i - 1));
  const std::size_t payload = i + 2;

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(s.substr(payload));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid table JSON: ") + e.what(),
                     payload + (e.byte > 0 ? e.byte - 1 : 0));
  }
  if (!j.is_object() || j.size() != 2 || !j.contains("columns") || !j.contains("rows")) {
    throw ParseError("table JSON must have exactly 'columns' and 'rows'", payload);
  }
  try {
    t.columns = j["columns"].get<std::vector<std::string>>();
    t.rows = j["rows"].get<std::vector<std::vector<std::string>>>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError("'columns' must be strings and 'rows' arrays of strings", payload);
  }
  try {
    t.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), payload);
  }
  return t;
}

std::string decompress_table(std::string_view dict_text) {
  return render_markdown_table(parse_dict_table(dict_text));
}

bool is_dict_table_line(std::string_view line) {
  if (line.substr(0, 7) != "[table_" || line.empty() || line.back() != '}') return false;
  try {
    parse_dict_table(line);
    return true;
  } catch (const ParseError&) {
    return false;
  }
}

MarkdownDocument compress_tables(MarkdownDocument md) {
  std::size_t pos = 0;
  for (const auto& t : md.tables) {
    const std::string rendered = render_markdown_table(t);
    const auto at = md.text.find(rendered, pos);
    if (at == std::string::npos) {
      throw ConversionError("rendered " + t.id + " not found in " + md.doc_id);
    }
    const std::string dict = to_dict_table_text(t);
    md.text.replace(at, rendered.size(), dict);
    pos = at + dict.size();
  }
  return md;
}

}  // namespace docrag
