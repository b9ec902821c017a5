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
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "docrag/embedding.hpp"
#include "docrag/qa.hpp"
#include "json.hpp"

namespace docrag {

struct TestCase {
  std::string question;
  std::string gold_answer;
  std::optional<std::string> expected_image_id;  // image_{n}.png
  std::optional<std::string> expected_table_id;  // table_{n}
};

TestCase test_case_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const TestCase& c);
std::vector<TestCase> load_cases(const std::filesystem::path& path);

inline constexpr double kAccuracyThresholds[] = {0.85, 0.9, 0.95};

// Cosine similarity of the trimmed texts' embeddings.
double answer_similarity(const std::string& pred, const std::string& gold, Embedder& embedder);

// Fraction of similarities strictly greater than tau.
double accuracy_at(std::span<const double> similarities, double tau);

// True iff `answer` contains the bracketed id: `[image_n.png]` for images,
// `[table_n]` for tables. `image_1.png` does not match `[image_11.png]`.
bool contains_media_id(std::string_view answer, std::string_view expected_id);

double media_accuracy(std::span<const std::string> answers,
                      std::span<const std::string> expected_ids);

struct CaseRow {
  std::size_t index = 0;
  std::string question;
  std::string raw_answer;
  double similarity = 0;
  bool failed = false;
  std::string error;
  std::optional<bool> image_hit;
  std::optional<bool> table_hit;
  friend bool operator==(const CaseRow&, const CaseRow&) = default;
};

struct EvalReport {
  double mean_similarity = 0;
  std::map<double, double> accuracy_at;
  std::optional<double> image_accuracy;
  std::optional<double> table_accuracy;
  std::vector<CaseRow> rows;
  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

nlohmann::ordered_json to_json(const EvalReport& r);
EvalReport eval_report_from_json(const nlohmann::json& j);

using AnswerPipeline = std::function<QAResult(const Query&)>;

// Runs every case through `system`; a case whose pipeline call throws is
// marked failed with similarity 0. Writes the report to `report_path` if set.
EvalReport run_eval(std::span<const TestCase> cases, const AnswerPipeline& system,
                    Embedder& embedder,
                    const std::optional<std::filesystem::path>& report_path = std::nullopt);

}  // namespace docrag
