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

#include "docrag/qa.hpp"

#include <algorithm>
#include <regex>
#include <set>

#include "docrag/media.hpp"
#include "docrag/prompts.hpp"
#include "docrag/utf8.hpp"

namespace docrag {
namespace {

const std::regex& image_citation_re() {
  static const std::regex re(R"(\[image_(\d+)\.png\])");
  return re;
}

std::string chunk_marker(std::size_t rank) {
  return "--- chunk " + std::to_string(rank) + " ---";
}

std::string_view rstrip_newlines(std::string_view s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::size_t count_of(std::string_view hay, std::string_view needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string_view::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

Query::Query(std::string t) : text(std::move(t)) {
  if (utf8::trim(text).empty()) throw InvalidArgument("query is empty");
}

nlohmann::ordered_json to_json(const QAResult& r) {
  nlohmann::ordered_json j;
  j["answer_text"] = r.answer_text;
  j["raw_answer"] = r.raw_answer;
  j["retrieved"] = nlohmann::ordered_json::array();
  for (const auto& x : r.retrieved) {
    j["retrieved"].push_back({{"chunk_id", x.chunk_id}, {"score", x.score}});
  }
  j["resolved_images"] = nlohmann::ordered_json::array();
  for (const auto& x : r.resolved_images) {
    j["resolved_images"].push_back({{"image_id", x.image_id}, {"path", x.path}});
  }
  j["resolved_tables"] = r.resolved_tables;
  j["warnings"] = r.warnings;
  return j;
}

PromptTemplate PromptTemplate::answer_default() {
  return {std::string(prompts::kAnswerTemplate)};
}

void PromptTemplate::validate() const {
  for (std::string_view slot : {"{context}", "{question}"}) {
    const auto n = count_of(text, slot);
    if (n != 1) {
      throw InvalidArgument("prompt template must contain " + std::string(slot) +
                            " exactly once, found " + std::to_string(n));
    }
  }
}

std::string fill_template(std::string_view tmpl,
                          const std::map<std::string, std::string>& slots) {
  std::string out;
  std::size_t i = 0;
  while (i < tmpl.size()) {
    bool replaced = false;
    if (tmpl[i] == '{') {
      for (const auto& [name, value] : slots) {
        const std::string key = "{" + name + "}";
        if (tmpl.substr(i, key.size()) == key) {
          out += value;
          i += key.size();
          replaced = true;
          break;
        }
      }
    }
    if (!replaced) out += tmpl[i++];
  }
  return out;
}

std::vector<ScoredChunk> retrieve(const Query& query, const VectorStore& store,
                                  Embedder& embedder, std::size_t k) {
  if (k < 1) throw InvalidArgument("k must be >= 1");
  if (store.empty()) throw Error("index empty");
  return store.search(embed(query.text, embedder), k);
}

std::string build_prompt(const Query& query, const std::vector<Chunk>& chunks,
                         const PromptTemplate& tmpl) {
  tmpl.validate();
  std::string context;
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    if (i) context += "\n\n";
    context += chunk_marker(i + 1);
    context += '\n';
    context += rstrip_newlines(chunks[i].text);
  }
  if (chunks.empty()) context = std::string(prompts::kNoContext);
  return std::string(prompts::kInstruction) + "\n\n" +
         fill_template(tmpl.text, {{"context", context}, {"question", query.text}});
}

std::string prompt_chunk(std::string_view prompt, std::size_t rank) {
  const std::string start = chunk_marker(rank) + "\n";
  const auto b = prompt.find(start);
  if (b == std::string_view::npos) return {};
  const auto body = b + start.size();
  auto e = prompt.find("\n\n" + chunk_marker(rank + 1) + "\n", body);
  if (e == std::string_view::npos) {
    e = prompt.rfind("\n\nQuestion: ");
    if (e == std::string_view::npos || e < body) e = prompt.size();
  }
  return std::string(prompt.substr(body, e - body));
}

AssetCatalog AssetCatalog::scan(const std::filesystem::path& root) {
  AssetCatalog catalog;
  if (!std::filesystem::is_directory(root)) return catalog;
  for (const auto& doc_dir : std::filesystem::directory_iterator(root)) {
    const auto images = doc_dir.path() / "images";
    if (!doc_dir.is_directory() || !std::filesystem::is_directory(images)) continue;
    for (const auto& f : std::filesystem::directory_iterator(images)) {
      if (f.is_regular_file()) {
        catalog.add(doc_dir.path().filename().string(), f.path().filename().string(),
                    f.path().string());
      }
    }
  }
  return catalog;
}

void AssetCatalog::add(const std::string& doc_id, const std::string& image_id,
                       std::string path) {
  by_doc_[doc_id][image_id] = std::move(path);
}

ImageResolver AssetCatalog::resolver(std::vector<std::string> doc_order) const {
  if (doc_order.empty()) {
    for (const auto& [doc, _] : by_doc_) doc_order.push_back(doc);
  }
  return [this, order = std::move(doc_order)](const std::string& id) -> std::optional<std::string> {
    for (const auto& doc : order) {
      auto d = by_doc_.find(doc);
      if (d == by_doc_.end()) continue;
      auto it = d->second.find(id);
      if (it != d->second.end()) return it->second;
    }
    return std::nullopt;
  };
}

RecoveredAnswer recover_media(std::string_view raw, const ImageResolver& resolver) {
  RecoveredAnswer out;
  std::set<std::string> seen_images, seen_tables, warned;

  // Tables first so that JSON payloads are never touched by image rewriting.
  std::string tabled;
  std::size_t b = 0;
  while (b <= raw.size()) {
    auto e = raw.find('\n', b);
    if (e == std::string_view::npos) e = raw.size();
    const std::string_view line = raw.substr(b, e - b);
    const auto at = line.find("[table_");
    bool done = false;
    if (at != std::string_view::npos) {
      const auto tail = line.substr(at);
      if (is_dict_table_line(tail)) {
        const TableRecord t = parse_dict_table(tail);
        const auto head = rstrip_newlines(line.substr(0, at));
        if (!utf8::trim(head).empty()) {
          tabled += head;
          tabled += '\n';
        }
        tabled += render_markdown_table(t);
        if (seen_tables.insert(t.id).second) out.tables.push_back(t.id);
        done = true;
      }
    }
    if (!done) tabled += line;
    if (e == raw.size()) break;
    tabled += '\n';
    b = e + 1;
  }

  std::string text;
  std::size_t last = 0;
  for (std::sregex_iterator it(tabled.begin(), tabled.end(), image_citation_re()), end;
       it != end; ++it) {
    const auto& m = *it;
    const std::string id = "image_" + m[1].str() + ".png";
    text.append(tabled, last, static_cast<std::size_t>(m.position(0)) - last);
    last = static_cast<std::size_t>(m.position(0) + m.length(0));
    if (auto path = resolver ? resolver(id) : std::nullopt) {
      text += "![image_" + m[1].str() + "](" + *path + ")";
      if (seen_images.insert(id).second) out.images.push_back({id, *path});
    } else {
      text += m.str(0);
      if (warned.insert(id).second) out.warnings.push_back("unresolved image " + id);
    }
  }
  text.append(tabled, last, std::string::npos);
  out.text = std::move(text);
  return out;
}

QAResult answer(const Query& query, const VectorStore& store, Embedder& embedder,
                LlmClient& llm, const AssetCatalog& assets, std::size_t k,
                const PromptTemplate& tmpl) {
  const auto hits = retrieve(query, store, embedder, k);
  QAResult r;
  std::vector<Chunk> chunks;
  std::vector<std::string> doc_order;
  for (const auto& h : hits) {
    r.retrieved.push_back({h.chunk.chunk_id, h.score});
    chunks.push_back(h.chunk);
    if (std::find(doc_order.begin(), doc_order.end(), h.chunk.doc_id) == doc_order.end()) {
      doc_order.push_back(h.chunk.doc_id);
    }
  }
  const std::string prompt = build_prompt(query, chunks, tmpl);
  try {
    r.raw_answer = llm.complete(prompt);
  } catch (const std::exception& e) {
    throw AnswerError(std::string("LLM call failed: ") + e.what(), r.retrieved);
  }
  auto rec = recover_media(r.raw_answer, assets.resolver(std::move(doc_order)));
  r.answer_text = std::move(rec.text);
  r.resolved_images = std::move(rec.images);
  r.resolved_tables = std::move(rec.tables);
  r.warnings = std::move(rec.warnings);
  return r;
}

std::string EchoTopChunkLlm::complete(const std::string& prompt) {
  return prompt_chunk(prompt, 1);
}

std::string CiteTopChunkMediaLlm::complete(const std::string& prompt) {
  const std::string chunk = prompt_chunk(prompt, 1);
  std::vector<std::string> images;
  for (std::sregex_iterator it(chunk.begin(), chunk.end(), image_citation_re()), end;
       it != end; ++it) {
    if (std::find(images.begin(), images.end(), it->str(0)) == images.end()) {
      images.push_back(it->str(0));
    }
  }
  std::vector<std::string> tables;
  std::size_t b = 0;
  while (b < chunk.size()) {
    auto e = chunk.find('\n', b);
    if (e == std::string::npos) e = chunk.size();
    const auto line = std::string_view(chunk).substr(b, e - b);
    if (is_dict_table_line(line)) tables.emplace_back(line);
    b = e + 1;
  }
  if (images.empty() && tables.empty()) {
    return "The retrieved context does not contain a relevant image or table.";
  }
  std::string out = "Based on the retrieved context:";
  for (const auto& id : images) out += " see " + id + ".";
  for (const auto& t : tables) out += "\n" + t;
  return out;
}

}  // namespace docrag
