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

#include "docrag/eval.hpp"

#include <cstdio>
#include <fstream>

#include "docrag/error.hpp"
#include "docrag/utf8.hpp"

namespace docrag {
namespace {

std::string threshold_key(double tau) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", tau);
  return buf;
}

std::string bracketed(std::string_view id) {
  if (!id.empty() && id.front() == '[') return std::string(id);
  return "[" + std::string(id) + "]";
}

}  // namespace

TestCase test_case_from_json(const nlohmann::json& j) {
  TestCase c;
  c.question = j.at("question").get<std::string>();
  c.gold_answer = j.at("gold_answer").get<std::string>();
  if (j.contains("expected_image_id") && !j["expected_image_id"].is_null()) {
    c.expected_image_id = j["expected_image_id"].get<std::string>();
  }
  if (j.contains("expected_table_id") && !j["expected_table_id"].is_null()) {
    c.expected_table_id = j["expected_table_id"].get<std::string>();
  }
  if (utf8::trim(c.question).empty() || utf8::trim(c.gold_answer).empty()) {
    throw InvalidArgument("test case needs a question and a gold answer");
  }
  return c;
}

nlohmann::ordered_json to_json(const TestCase& c) {
  nlohmann::ordered_json j;
  j["question"] = c.question;
  j["gold_answer"] = c.gold_answer;
  if (c.expected_image_id) j["expected_image_id"] = *c.expected_image_id;
  if (c.expected_table_id) j["expected_table_id"] = *c.expected_table_id;
  return j;
}

std::vector<TestCase> load_cases(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UnreadableError("cannot open " + path.string());
  std::vector<TestCase> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (utf8::trim(line).empty()) continue;
    try {
      out.push_back(test_case_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string() + ": " + e.what(), n);
    }
  }
  return out;
}

double answer_similarity(const std::string& pred, const std::string& gold, Embedder& embedder) {
  const auto p = utf8::trim(pred);
  const auto g = utf8::trim(gold);
  if (p.empty() || g.empty()) throw InvalidArgument("answer_similarity of an empty string");
  auto v = embedder.embed_batch({std::string(p), std::string(g)});
  return cosine_similarity(v.at(0), v.at(1));
}

double accuracy_at(std::span<const double> similarities, double tau) {
  if (!(tau > 0 && tau < 1)) throw InvalidArgument("tau must lie in (0, 1)");
  if (similarities.empty()) throw InvalidArgument("accuracy_at of an empty list");
  std::size_t hits = 0;
  for (double s : similarities) hits += s > tau;
  return static_cast<double>(hits) / static_cast<double>(similarities.size());
}

bool contains_media_id(std::string_view answer, std::string_view expected_id) {
  return answer.find(bracketed(expected_id)) != std::string_view::npos;
}

double media_accuracy(std::span<const std::string> answers,
                      std::span<const std::string> expected_ids) {
  if (answers.size() != expected_ids.size()) {
    throw InvalidArgument("media_accuracy: " + std::to_string(answers.size()) + " answers for " +
                          std::to_string(expected_ids.size()) + " expected ids");
  }
  if (answers.empty()) throw InvalidArgument("media_accuracy of an empty list");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < answers.size(); ++i) {
    hits += contains_media_id(answers[i], expected_ids[i]);
  }
  return static_cast<double>(hits) / static_cast<double>(answers.size());
}

nlohmann::ordered_json to_json(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["mean_similarity"] = r.mean_similarity;
  nlohmann::ordered_json acc = nlohmann::ordered_json::object();
  for (const auto& [tau, v] : r.accuracy_at) acc[threshold_key(tau)] = v;
  j["accuracy_at"] = std::move(acc);
  j["image_accuracy"] = r.image_accuracy ? nlohmann::ordered_json(*r.image_accuracy) : nullptr;
  j["table_accuracy"] = r.table_accuracy ? nlohmann::ordered_json(*r.table_accuracy) : nullptr;
  auto& rows = j["cases"] = nlohmann::ordered_json::array();
  for (const auto& c : r.rows) {
    nlohmann::ordered_json jc;
    jc["index"] = c.index;
    jc["question"] = c.question;
    jc["raw_answer"] = c.raw_answer;
    jc["similarity"] = c.similarity;
    jc["failed"] = c.failed;
    jc["error"] = c.error;
    jc["image_hit"] = c.image_hit ? nlohmann::ordered_json(*c.image_hit) : nullptr;
    jc["table_hit"] = c.table_hit ? nlohmann::ordered_json(*c.table_hit) : nullptr;
    rows.push_back(std::move(jc));
  }
  return j;
}

EvalReport eval_report_from_json(const nlohmann::json& j) {
  EvalReport r;
  r.mean_similarity = j.at("mean_similarity").get<double>();
  for (const auto& [k, v] : j.at("accuracy_at").items()) {
    r.accuracy_at[std::stod(k)] = v.get<double>();
  }
  if (!j.at("image_accuracy").is_null()) r.image_accuracy = j["image_accuracy"].get<double>();
  if (!j.at("table_accuracy").is_null()) r.table_accuracy = j["table_accuracy"].get<double>();
  for (const auto& jc : j.at("cases")) {
    CaseRow c;
    c.index = jc.at("index").get<std::size_t>();
    c.question = jc.at("question").get<std::string>();
    c.raw_answer = jc.at("raw_answer").get<std::string>();
    c.similarity = jc.at("similarity").get<double>();
    c.failed = jc.at("failed").get<bool>();
    c.error = jc.at("error").get<std::string>();
    if (!jc.at("image_hit").is_null()) c.image_hit = jc["image_hit"].get<bool>();
    if (!jc.at("table_hit").is_null()) c.table_hit = jc["table_hit"].get<bool>();
    r.rows.push_back(std::move(c));
  }
  return r;
}

EvalReport run_eval(std::span<const TestCase> cases, const AnswerPipeline& system,
                    Embedder& embedder, const std::optional<std::filesystem::path>& report_path) {
  if (cases.empty()) throw InvalidArgument("no test cases");
  embedder.dimension();
  EvalReport report;
  report.rows.resize(cases.size());
  const auto n = static_cast<std::ptrdiff_t>(cases.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& tc = cases[static_cast<std::size_t>(i)];
    auto& row = report.rows[static_cast<std::size_t>(i)];
    row.index = static_cast<std::size_t>(i);
    row.question = tc.question;
    try {
      const QAResult r = system(Query(tc.question));
      row.raw_answer = r.raw_answer;
      row.similarity = answer_similarity(r.raw_answer, tc.gold_answer, embedder);
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
      row.similarity = 0;
    }
    if (tc.expected_image_id) row.image_hit = contains_media_id(row.raw_answer, *tc.expected_image_id);
    if (tc.expected_table_id) row.table_hit = contains_media_id(row.raw_answer, *tc.expected_table_id);
  }

  std::vector<double> sims;
  std::size_t img_n = 0, img_hit = 0, tab_n = 0, tab_hit = 0;
  double sum = 0;
  for (const auto& row : report.rows) {
    sims.push_back(row.similarity);
    sum += row.similarity;
    if (row.image_hit) {
      ++img_n;
      img_hit += *row.image_hit;
    }
    if (row.table_hit) {
      ++tab_n;
      tab_hit += *row.table_hit;
    }
  }
  report.mean_similarity = sum / static_cast<double>(sims.size());
  for (double tau : kAccuracyThresholds) report.accuracy_at[tau] = accuracy_at(sims, tau);
  if (img_n) report.image_accuracy = static_cast<double>(img_hit) / static_cast<double>(img_n);
  if (tab_n) report.table_accuracy = static_cast<double>(tab_hit) / static_cast<double>(tab_n);

  if (report_path) {
    std::ofstream out(*report_path, std::ios::binary);
    if (!out) throw Error("cannot write " + report_path->string());
    out << to_json(report).dump(2) << '\n';
  }
  return report;
}

}  // namespace docrag
