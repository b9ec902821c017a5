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

#include "docrag/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>

#include "docrag/datagen.hpp"
#include "docrag/error.hpp"
#include "docrag/utf8.hpp"

namespace docrag {
namespace {

struct Value {
  std::string text;
  std::size_t line;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("config: " + what + " '" + text + "'", line);
  }
  double as_double() const {
    double v{};
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || p != text.data() + text.size()) fail("expected a number, got");
    return v;
  }
  std::uint64_t as_uint() const {
    std::uint64_t v{};
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || p != text.data() + text.size()) fail("expected an integer, got");
    return v;
  }
  bool as_bool() const {
    if (text == "true") return true;
    if (text == "false") return false;
    fail("expected true or false, got");
  }
};

using Setter = std::function<void(PipelineConfig&, const Value&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> m = {
      {"eps", [](auto& c, const Value& v) { c.header_footer.eps = v.as_double(); }},
      {"top_band", [](auto& c, const Value& v) { c.header_footer.top_band = v.as_double(); }},
      {"bottom_band", [](auto& c, const Value& v) { c.header_footer.bottom_band = v.as_double(); }},
      {"window_size", [](auto& c, const Value& v) { c.header_footer.window_size = v.as_uint(); }},
      {"min_pages_override",
       [](auto& c, const Value& v) { c.header_footer.min_pages_override = v.as_uint(); }},
      {"extract_images", [](auto& c, const Value& v) { c.converter.extract_images = v.as_bool(); }},
      {"image_dpi",
       [](auto& c, const Value& v) { c.converter.image_dpi = static_cast<int>(v.as_uint()); }},
      {"paginate_output", [](auto& c, const Value& v) { c.converter.paginate_output = v.as_bool(); }},
      {"heading_ratio", [](auto& c, const Value& v) { c.converter.heading_ratio = v.as_double(); }},
      {"max_chars", [](auto& c, const Value& v) { c.max_chars = v.as_uint(); }},
      {"fanout", [](auto& c, const Value& v) { c.raptor.fanout = v.as_uint(); }},
      {"max_depth", [](auto& c, const Value& v) { c.raptor.max_depth = v.as_uint(); }},
      {"raptor_enabled", [](auto& c, const Value& v) { c.raptor_enabled = v.as_bool(); }},
      {"k", [](auto& c, const Value& v) { c.k = v.as_uint(); }},
      {"seed", [](auto& c, const Value& v) { c.seed = c.raptor.seed = v.as_uint(); }},
      {"questions_per_context", [](auto& c, const Value& v) { c.questions_per_context = v.as_uint(); }},
      {"llm_url", [](auto& c, const Value& v) { c.endpoints.llm = v.text; }},
      {"embedder_url", [](auto& c, const Value& v) { c.endpoints.embedder = v.text; }},
      {"captioner_url", [](auto& c, const Value& v) { c.endpoints.captioner = v.text; }},
      {"qgen_url", [](auto& c, const Value& v) { c.endpoints.qgen = v.text; }},
      {"agen_url", [](auto& c, const Value& v) { c.endpoints.agen = v.text; }},
  };
  return m;
}

std::string strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return std::string(line.substr(0, i));
  }
  return std::string(line);
}

}  // namespace

PipelineConfig parse_config(std::string_view text) {
  PipelineConfig config;
  std::size_t line_no = 0;
  std::size_t b = 0;
  while (b <= text.size()) {
    auto e = text.find('\n', b);
    if (e == std::string_view::npos) e = text.size();
    ++line_no;
    const std::string raw = strip_comment(text.substr(b, e - b));
    b = e + 1;
    const auto line = utf8::trim(raw);
    if (line.empty()) {
      if (e == text.size()) break;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("config: expected key = value", line_no);
    const std::string key(utf8::trim(line.substr(0, eq)));
    std::string value(utf8::trim(line.substr(eq + 1)));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    const auto it = setters().find(key);
    if (it == setters().end()) throw ParseError("config: unknown key '" + key + "'", line_no);
    it->second(config, Value{value, line_no});
    if (e == text.size()) break;
  }
  return config;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UnreadableError("cannot open config " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config(text);
}

void apply_environment(PipelineConfig& config) {
  auto env = [](const char* name, std::optional<std::string>& slot) {
    if (const char* v = std::getenv(name); v && *v) slot = v;
  };
  env("LLM_URL", config.endpoints.llm);
  env("EMBEDDER_URL", config.endpoints.embedder);
  env("CAPTIONER_URL", config.endpoints.captioner);
  env("QGEN_URL", config.endpoints.qgen);
  env("AGEN_URL", config.endpoints.agen);
}

nlohmann::ordered_json to_json(const PipelineConfig& c) {
  nlohmann::ordered_json j;
  j["eps"] = c.header_footer.eps;
  j["top_band"] = c.header_footer.top_band;
  j["bottom_band"] = c.header_footer.bottom_band;
  j["window_size"] = c.header_footer.window_size;
  j["min_pages_override"] = c.header_footer.min_pages_override
                                ? nlohmann::ordered_json(*c.header_footer.min_pages_override)
                                : nullptr;
  j["extract_images"] = c.converter.extract_images;
  j["image_dpi"] = c.converter.image_dpi;
  j["paginate_output"] = c.converter.paginate_output;
  j["heading_ratio"] = c.converter.heading_ratio;
  j["max_chars"] = c.max_chars;
  j["fanout"] = c.raptor.fanout;
  j["max_depth"] = c.raptor.max_depth;
  j["raptor_enabled"] = c.raptor_enabled;
  j["k"] = c.k;
  j["seed"] = c.seed;
  j["questions_per_context"] = c.questions_per_context;
  return j;
}

Services make_services(const PipelineConfig& config) {
  Services s;
  const auto& ep = config.endpoints;
  if (ep.embedder) {
    s.embedder = std::make_unique<HttpEmbedder>(*ep.embedder);
    s.embedder_name = "http:" + *ep.embedder;
  } else {
    s.embedder = std::make_unique<MockEmbedder>();
    s.embedder_name = "mock-trigram-128";
  }
  if (ep.captioner) {
    s.captioner = std::make_unique<HttpCaptioner>(*ep.captioner);
  } else {
    s.captioner = std::make_unique<MockCaptioner>();
  }
  if (ep.llm) {
    s.llm = std::make_unique<HttpLlmClient>(*ep.llm);
    s.summarizer = std::make_unique<LlmSummarizer>(*s.llm);
  } else {
    s.llm = std::make_unique<EchoTopChunkLlm>();
    s.summarizer = std::make_unique<MockSummarizer>();
  }
  if (ep.qgen) {
    s.qgen = std::make_unique<HttpLlmClient>(*ep.qgen);
  } else {
    s.qgen = std::make_unique<MockQuestionGenerator>();
  }
  if (ep.agen) {
    s.agen = std::make_unique<HttpLlmClient>(*ep.agen);
  } else {
    s.agen = std::make_unique<MockAnswerGenerator>();
  }
  return s;
}

}  // namespace docrag
