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

#include "docrag/datagen.hpp"

#include <fstream>
#include <regex>

#include "docrag/error.hpp"
#include "docrag/prompts.hpp"
#include "docrag/qa.hpp"
#include "docrag/raptor.hpp"
#include "docrag/rng.hpp"
#include "docrag/utf8.hpp"

namespace docrag {
namespace {

std::string slice(std::string_view s, std::size_t from_cp, std::size_t count_cp) {
  const auto b = utf8::advance(s, 0, from_cp);
  const auto e = utf8::advance(s, b, count_cp);
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> sentences(std::string_view text) {
  std::vector<std::string> out;
  while (true) {
    text = utf8::trim(text);
    if (text.empty()) break;
    auto s = first_sentence(text);
    if (s.empty()) {
      const auto nl = text.find('\n');
      if (nl == std::string_view::npos) break;
      text.remove_prefix(nl + 1);
      continue;
    }
    const auto at = text.find(s);
    text.remove_prefix(at + s.size());
    out.push_back(std::move(s));
  }
  return out;
}

const char* provenance_name(Provenance p) {
  return p == Provenance::kSource ? "source" : "distractor";
}

}  // namespace

std::vector<std::string> split_training_contexts(std::string_view md_text, std::size_t size) {
  if (size < 1) throw InvalidArgument("context size must be >= 1");
  std::vector<std::string> out;
  const std::size_t n = utf8::length(md_text);
  if (n == 0) return out;
  const std::size_t full = n / size;
  const std::size_t rest = n % size;
  std::size_t b = 0;
  for (std::size_t i = 0; i < full; ++i) {
    const auto e = utf8::advance(md_text, b, size);
    out.emplace_back(md_text.substr(b, e - b));
    b = e;
  }
  if (rest > 0) {
    if (out.empty() || rest * 2 >= size) {
      out.emplace_back(md_text.substr(b));
    } else {
      out.back() += md_text.substr(b);
    }
  }
  return out;
}

std::vector<std::string> generate_questions(const std::string& context, LlmClient& qgen,
                                            std::size_t count,
                                            std::vector<std::string>* warnings) {
  if (utf8::trim(context).empty()) throw InvalidArgument("empty context");
  const std::string prompt = fill_template(
      prompts::kQuestionGeneration, {{"context", context}, {"count", std::to_string(count)}});
  std::string reply;
  try {
    reply = qgen.complete(prompt);
  } catch (const std::exception& e) {
    if (warnings) warnings->push_back(std::string("question generation skipped: ") + e.what());
    return {};
  }
  std::vector<std::string> out;
  std::size_t b = 0;
  while (b <= reply.size()) {
    auto e = reply.find('\n', b);
    if (e == std::string::npos) e = reply.size();
    const auto line = utf8::trim(std::string_view(reply).substr(b, e - b));
    if (!line.empty()) out.emplace_back(line);
    b = e + 1;
  }
  return out;
}

std::optional<std::string> generate_answer(const std::string& question,
                                           const std::string& context, LlmClient& agen,
                                           std::vector<std::string>* warnings) {
  if (utf8::trim(context).empty()) throw InvalidArgument("empty context");
  Chunk c;
  c.text = context;
  std::string reply;
  try {
    reply = agen.complete(build_prompt(Query(question), {c}));
  } catch (const std::exception& e) {
    if (warnings) warnings->push_back(std::string("answer generation skipped: ") + e.what());
    return std::nullopt;
  }
  auto a = utf8::trim(reply);
  if (a.empty()) {
    if (warnings) warnings->push_back("blank answer for question: " + question);
    return std::nullopt;
  }
  return std::string(a);
}

std::vector<PoolChunk> pool_chunks(std::string_view doc_id, std::string_view md_text,
                                   std::size_t piece_chars) {
  std::vector<PoolChunk> out;
  for (std::size_t b = 0; b < md_text.size();) {
    const auto e = utf8::advance(md_text, b, piece_chars);
    const auto piece = md_text.substr(b, e - b);
    if (!utf8::trim(piece).empty()) out.push_back({std::string(doc_id), std::string(piece)});
    b = e;
  }
  return out;
}

TrainingExample assemble_example(const std::string& context, const std::string& question,
                                 const std::string& answer, const std::string& source_doc_id,
                                 std::span<const PoolChunk> distractor_pool,
                                 std::uint64_t seed) {
  const std::size_t n = utf8::length(context);
  if (n > kContextPieces * kPieceChars) {
    throw InvalidArgument("context of " + std::to_string(n) + " characters exceeds " +
                          std::to_string(kContextPieces * kPieceChars));
  }
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < distractor_pool.size(); ++i) {
    if (distractor_pool[i].doc_id != source_doc_id) eligible.push_back(i);
  }
  if (eligible.size() < kContextPieces) {
    throw InvalidArgument("distractor pool needs at least " + std::to_string(kContextPieces) +
                          " chunks from other documents, has " +
                          std::to_string(eligible.size()));
  }

  TrainingExample ex;
  ex.instruction = std::string(prompts::kInstruction);
  ex.question = question;
  ex.answer = answer;
  ex.source_doc_id = source_doc_id;

  // Near-equal pieces: exactly 1000 each for a full 5000-character context.
  std::size_t from = 0;
  for (std::size_t i = 0; i < kContextPieces; ++i) {
    const std::size_t len = n / kContextPieces + (i < n % kContextPieces ? 1 : 0);
    ex.context_chunks.push_back(
        {slice(context, from, len), Provenance::kSource, i, source_doc_id});
    from += len;
  }

  Rng rng(seed);
  for (auto pick : rng.sample_indices(eligible.size(), kContextPieces)) {
    const auto& p = distractor_pool[eligible[pick]];
    std::string text = slice(p.text, 0, kPieceChars);
    ex.context_chunks.push_back({std::move(text), Provenance::kDistractor, std::nullopt, p.doc_id});
  }
  rng.shuffle(ex.context_chunks);
  return ex;
}

nlohmann::ordered_json to_json(const TrainingExample& ex) {
  nlohmann::ordered_json j;
  j["instruction"] = ex.instruction;
  auto chunks = nlohmann::ordered_json::array();
  auto prov = nlohmann::ordered_json::array();
  auto index = nlohmann::ordered_json::array();
  auto docs = nlohmann::ordered_json::array();
  for (const auto& c : ex.context_chunks) {
    chunks.push_back(c.text);
    prov.push_back(provenance_name(c.provenance));
    index.push_back(c.source_index ? nlohmann::ordered_json(*c.source_index) : nullptr);
    docs.push_back(c.doc_id);
  }
  j["context_chunks"] = std::move(chunks);
  j["provenance"] = std::move(prov);
  j["source_index"] = std::move(index);
  j["chunk_doc_ids"] = std::move(docs);
  j["question"] = ex.question;
  j["answer"] = ex.answer;
  j["source_doc_id"] = ex.source_doc_id;
  return j;
}

TrainingExample training_example_from_json(const nlohmann::json& j) {
  TrainingExample ex;
  ex.instruction = j.at("instruction").get<std::string>();
  const auto& chunks = j.at("context_chunks");
  const auto& prov = j.at("provenance");
  const auto& index = j.at("source_index");
  const auto& docs = j.at("chunk_doc_ids");
  if (prov.size() != chunks.size() || index.size() != chunks.size() ||
      docs.size() != chunks.size()) {
    throw ParseError("per-chunk arrays differ in length", 0);
  }
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    ContextChunk c;
    c.text = chunks[i].get<std::string>();
    const auto p = prov[i].get<std::string>();
    if (p == "source") {
      c.provenance = Provenance::kSource;
    } else if (p == "distractor") {
      c.provenance = Provenance::kDistractor;
    } else {
      throw ParseError("unknown provenance '" + p + "'", i);
    }
    if (!index[i].is_null()) c.source_index = index[i].get<std::size_t>();
    c.doc_id = docs[i].get<std::string>();
    ex.context_chunks.push_back(std::move(c));
  }
  ex.question = j.at("question").get<std::string>();
  ex.answer = j.at("answer").get<std::string>();
  ex.source_doc_id = j.at("source_doc_id").get<std::string>();
  return ex;
}

std::string to_jsonl(std::span<const TrainingExample> examples) {
  std::string out;
  for (const auto& ex : examples) {
    out += to_json(ex).dump();
    out += '\n';
  }
  return out;
}

void export_dataset(std::span<const TrainingExample> examples,
                    const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << to_jsonl(examples);
  if (!out) throw Error("write failed for " + path.string());
}

std::vector<TrainingExample> import_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UnreadableError("cannot open " + path.string());
  std::vector<TrainingExample> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      out.push_back(training_example_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string() + ": " + e.what(), n);
    }
  }
  return out;
}

std::vector<TrainingExample> generate_dataset(std::span<const DatagenDocument> docs,
                                              LlmClient& qgen, LlmClient& agen,
                                              const DatagenConfig& config,
                                              std::vector<std::string>* warnings) {
  std::vector<PoolChunk> pool;
  for (const auto& d : docs) {
    auto p = pool_chunks(d.doc_id, d.markdown);
    pool.insert(pool.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  }

  struct Job {
    std::size_t doc, ctx;
    std::string context;
  };
  std::vector<Job> jobs;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    auto contexts = split_training_contexts(docs[d].markdown, config.context_chars);
    for (std::size_t c = 0; c < contexts.size(); ++c) {
      // A merged tail can exceed what five pieces cover; keep the leading part.
      std::string ctx = slice(contexts[c], 0, kContextPieces * kPieceChars);
      if (utf8::trim(ctx).empty()) continue;
      jobs.push_back({d, c, std::move(ctx)});
    }
  }

  std::vector<std::vector<TrainingExample>> results(jobs.size());
  std::vector<std::vector<std::string>> job_warnings(jobs.size());
  const auto n_jobs = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t j = 0; j < n_jobs; ++j) {
    const auto& job = jobs[static_cast<std::size_t>(j)];
    auto& warn = job_warnings[static_cast<std::size_t>(j)];
    const auto& doc_id = docs[job.doc].doc_id;
    try {
      auto questions = generate_questions(job.context, qgen, config.questions_per_context, &warn);
      if (questions.size() > config.questions_per_context) {
        questions.resize(config.questions_per_context);
      }
      for (std::size_t q = 0; q < questions.size(); ++q) {
        auto a = generate_answer(questions[q], job.context, agen, &warn);
        if (!a) continue;
        const auto seed = derive_seed(config.seed, {job.doc, job.ctx, q});
        results[static_cast<std::size_t>(j)].push_back(
            assemble_example(job.context, questions[q], *a, doc_id, pool, seed));
      }
    } catch (const std::exception& e) {
      warn.push_back(doc_id + " context " + std::to_string(job.ctx) + ": " + e.what());
    }
  }

  std::vector<TrainingExample> out;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    out.insert(out.end(), std::make_move_iterator(results[j].begin()),
               std::make_move_iterator(results[j].end()));
    if (warnings) warnings->insert(warnings->end(), job_warnings[j].begin(), job_warnings[j].end());
  }
  return out;
}

std::string MockQuestionGenerator::complete(const std::string& prompt) {
  static const std::regex count_re(R"(write (\d+) relevant)");
  std::smatch m;
  std::size_t count = 3;
  if (std::regex_search(prompt, m, count_re)) count = std::stoul(m[1].str());
  const auto b = prompt.find("Context:\n");
  const auto e = prompt.rfind("\n\nQuestions:");
  if (b == std::string::npos || e == std::string::npos || e < b) return {};
  const auto ss = sentences(std::string_view(prompt).substr(b + 9, e - b - 9));
  if (ss.empty()) return {};
  std::string out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& s = ss[i % ss.size()];
    std::string words;
    std::size_t taken = 0;
    for (std::size_t p = 0; p < s.size() && taken < 5;) {
      while (p < s.size() && !std::isalnum(static_cast<unsigned char>(s[p]))) ++p;
      std::size_t q = p;
      while (q < s.size() && std::isalnum(static_cast<unsigned char>(s[q]))) ++q;
      if (q > p) {
        if (!words.empty()) words += ' ';
        words += s.substr(p, q - p);
        ++taken;
      }
      p = q;
    }
    for (auto& ch : words) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    out += "What does the document say about " + words + " (part " + std::to_string(i + 1) +
           ")?\n";
  }
  return out;
}

std::string MockAnswerGenerator::complete(const std::string& prompt) {
  return first_sentence(prompt_chunk(prompt, 1));
}

}  // namespace docrag
