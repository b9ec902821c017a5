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

// docrag: command-line entry point.
//
//   docrag ingest   --corpus <dir> --out <index dir>
//   docrag query    --index <dir> [--k N] <question>
//   docrag eval     --cases cases.jsonl --index <dir> --report report.json
//   docrag gen-data --corpus <dir> --out dataset.jsonl [--questions-per-context K]
//
// Global flags: --config <file>, --seed N, --json.

#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "docrag/config.hpp"
#include "docrag/datagen.hpp"
#include "docrag/eval.hpp"
#include "docrag/pipeline.hpp"
#include "docrag/qa.hpp"

namespace {

using namespace docrag;

struct GlobalOptions {
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  bool json = false;
};

PipelineConfig resolve_config(const GlobalOptions& g) {
  PipelineConfig c = g.config_path ? load_config(*g.config_path) : PipelineConfig{};
  apply_environment(c);
  if (g.seed) c.seed = c.raptor.seed = *g.seed;
  return c;
}

int run_ingest(const GlobalOptions& g, const std::string& corpus, const std::string& out) {
  const auto config = resolve_config(g);
  auto services = make_services(config);
  const auto result = ingest_corpus(corpus, out, config, services);
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& d : result.docs) {
    if (g.json) {
      j.push_back({{"source", d.source},
                   {"doc_id", d.doc_id},
                   {"pages", d.pages},
                   {"removed", d.elements_removed},
                   {"images", d.images},
                   {"tables", d.tables},
                   {"leaf_chunks", d.leaf_chunks},
                   {"summary_chunks", d.summary_chunks},
                   {"error", d.error ? nlohmann::ordered_json(*d.error) : nullptr}});
    } else if (d.error) {
      std::cerr << d.source << ": FAILED: " << *d.error << '\n';
    } else {
      std::cout << d.doc_id << ": pages=" << d.pages << " removed=" << d.elements_removed
                << " images=" << d.images << " tables=" << d.tables
                << " chunks=" << d.leaf_chunks << " summaries=" << d.summary_chunks << '\n';
    }
  }
  if (g.json) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "store entries: " << result.store_size << '\n';
  }
  return result.failures == result.docs.size() ? 1 : 0;
}

int run_query(const GlobalOptions& g, const std::string& index_dir, const std::string& question,
              std::optional<std::size_t> k) {
  const auto config = resolve_config(g);
  auto services = make_services(config);
  auto index = open_index(index_dir);
  const QAResult r = answer(Query(question), *index.store, *services.embedder, *services.llm,
                            index.assets, k.value_or(config.k));
  if (g.json) {
    std::cout << to_json(r).dump(2) << '\n';
    return 0;
  }
  std::cout << r.answer_text << "\n\nretrieved:\n";
  for (std::size_t i = 0; i < r.retrieved.size(); ++i) {
    std::cout << "  " << i + 1 << '\t' << r.retrieved[i].chunk_id << '\t' << std::fixed
              << std::setprecision(6) << r.retrieved[i].score << '\n';
  }
  for (const auto& img : r.resolved_images) {
    std::cout << "image " << img.image_id << " -> " << img.path << '\n';
  }
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
  return 0;
}

int run_eval_cmd(const GlobalOptions& g, const std::string& cases_path,
                 const std::string& index_dir, const std::string& report_path) {
  const auto config = resolve_config(g);
  auto services = make_services(config);
  auto index = open_index(index_dir);
  const auto cases = load_cases(cases_path);
  const AnswerPipeline system = [&](const Query& q) {
    return answer(q, *index.store, *services.embedder, *services.llm, index.assets, config.k);
  };
  const auto report = run_eval(cases, system, *services.embedder, report_path);
  if (g.json) {
    std::cout << to_json(report).dump(2) << '\n';
  } else {
    std::cout << "cases: " << report.rows.size() << "\nmean similarity: " << report.mean_similarity
              << '\n';
    for (const auto& [tau, v] : report.accuracy_at) {
      std::cout << "accuracy@" << tau << ": " << v << '\n';
    }
    if (report.image_accuracy) std::cout << "image accuracy: " << *report.image_accuracy << '\n';
    if (report.table_accuracy) std::cout << "table accuracy: " << *report.table_accuracy << '\n';
  }
  std::size_t failed = 0;
  for (const auto& row : report.rows) failed += row.failed;
  return failed == report.rows.size() ? 1 : 0;
}

int run_gen_data(const GlobalOptions& g, const std::string& corpus, const std::string& out,
                 std::optional<std::size_t> per_context) {
  auto config = resolve_config(g);
  if (per_context) config.questions_per_context = *per_context;
  auto services = make_services(config);
  auto prepared = prepare_corpus(corpus, config, *services.captioner);
  std::vector<DatagenDocument> docs;
  for (auto& [id, md] : prepared.docs) docs.push_back({id, md});
  DatagenConfig dc;
  dc.questions_per_context = config.questions_per_context;
  dc.seed = config.seed;
  std::vector<std::string> warnings = prepared.warnings;
  const auto examples = generate_dataset(docs, *services.qgen, *services.agen, dc, &warnings);
  export_dataset(examples, out);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  if (g.json) {
    std::cout << nlohmann::ordered_json{{"documents", docs.size()}, {"examples", examples.size()}}.dump()
              << '\n';
  } else {
    std::cout << "documents: " << docs.size() << "\nexamples: " << examples.size() << '\n';
  }
  return examples.empty() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Retrieval-augmented question answering over document layouts"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  app.add_option("--config", g.config_path, "Flat key = value config file");
  app.add_option("--seed", g.seed, "Seed for every random choice");
  app.add_flag("--json", g.json, "Machine-readable output");

  std::string corpus, out, index_dir, question, cases, report;
  std::optional<std::size_t> k, per_context;

  auto* ingest = app.add_subcommand("ingest", "Preprocess and index a corpus");
  ingest->add_option("--corpus", corpus, "Directory of layout or synthetic spec files")->required();
  ingest->add_option("--out", out, "Index directory")->required();

  auto* query = app.add_subcommand("query", "Answer a question from an index");
  query->add_option("--index", index_dir, "Index directory")->required();
  query->add_option("--k", k, "Chunks to retrieve");
  query->add_option("question", question, "Question text")->required();

  auto* eval = app.add_subcommand("eval", "Score a case file against an index");
  eval->add_option("--cases", cases, "JSONL test cases")->required();
  eval->add_option("--index", index_dir, "Index directory")->required();
  eval->add_option("--report", report, "Report output path")->required();

  auto* gen = app.add_subcommand("gen-data", "Generate fine-tuning examples");
  gen->add_option("--corpus", corpus, "Directory of layout or synthetic spec files")->required();
  gen->add_option("--out", out, "Output JSONL path")->required();
  gen->add_option("--questions-per-context", per_context, "Questions per context");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*ingest) return run_ingest(g, corpus, out);
    if (*query) return run_query(g, index_dir, question, k);
    if (*eval) return run_eval_cmd(g, cases, index_dir, report);
    if (*gen) return run_gen_data(g, corpus, out, per_context);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
