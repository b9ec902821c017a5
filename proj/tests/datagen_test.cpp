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

#include <gtest/gtest.h>

#include <set>

#include "docrag/prompts.hpp"
#include "docrag/utf8.hpp"
#include "support.hpp"

namespace docrag {
namespace {

class FixedReplyLlm : public LlmClient {
 public:
  explicit FixedReplyLlm(std::string reply) : reply_(std::move(reply)) {}
  std::string complete(const std::string& prompt) override {
    last = prompt;
    return reply_;
  }
  std::string last;

 private:
  std::string reply_;
};

class FailingLlm : public LlmClient {
 public:
  std::string complete(const std::string&) override { throw RetriableError("down"); }
};

std::vector<PoolChunk> pool_from(const std::string& doc, std::size_t n) {
  std::vector<PoolChunk> p;
  for (std::size_t i = 0; i < n; ++i) p.push_back({doc, doc + " piece " + std::to_string(i)});
  return p;
}

std::string reassemble(const TrainingExample& ex) {
  std::vector<const ContextChunk*> src(kContextPieces, nullptr);
  for (const auto& c : ex.context_chunks) {
    if (c.provenance == Provenance::kSource) src.at(*c.source_index) = &c;
  }
  std::string s;
  for (const auto* c : src) s += c->text;
  return s;
}

TEST(SplitContextsTest, RemainderMergedOrKept) {
  const auto twelve = split_training_contexts(std::string(12000, 'a'));
  ASSERT_EQ(twelve.size(), 2u);
  EXPECT_EQ(twelve[0].size(), 5000u);
  EXPECT_EQ(twelve[1].size(), 7000u);
  const auto thirteen = split_training_contexts(std::string(13000, 'a'));
  ASSERT_EQ(thirteen.size(), 3u);
  EXPECT_EQ(thirteen[2].size(), 3000u);
  EXPECT_EQ(split_training_contexts(std::string(5000, 'a')).size(), 1u);
  EXPECT_EQ(split_training_contexts(std::string(100, 'a')).size(), 1u);
  EXPECT_TRUE(split_training_contexts("").empty());
}

TEST(SplitContextsTest, ConcatenationEqualsInput) {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const auto text = testing::random_words(rng, rng.below(30000));
    std::string joined;
    for (const auto& c : split_training_contexts(text)) joined += c;
    EXPECT_EQ(joined, text);
  }
}

TEST(QuestionsTest, OneQuestionPerLineBlanksDropped) {
  FixedReplyLlm qgen("What is A?\n\n  \nWhat is B?\nWhat is C?\n");
  const auto qs = generate_questions("context text", qgen, 3);
  EXPECT_EQ(qs, (std::vector<std::string>{"What is A?", "What is B?", "What is C?"}));
  EXPECT_NE(qgen.last.find("Context:\ncontext text\n"), std::string::npos);
  EXPECT_NE(qgen.last.find("write 3 relevant"), std::string::npos);
}

TEST(QuestionsTest, FailureSkipsWithWarning) {
  FailingLlm qgen;
  std::vector<std::string> warnings;
  EXPECT_TRUE(generate_questions("ctx", qgen, 3, &warnings).empty());
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(QuestionsTest, MockProducesRequestedCount) {
  MockQuestionGenerator qgen;
  const auto qs = generate_questions("The pump starts. The valve closes. Alarms sound.", qgen, 5);
  EXPECT_EQ(qs.size(), 5u);
}

TEST(AnswersTest, MockEchoesFirstContextSentence) {
  MockAnswerGenerator agen;
  const auto a = generate_answer("Q?", "The pump starts at dawn. Then it stops.", agen);
  ASSERT_TRUE(a);
  EXPECT_EQ(*a, "The pump starts at dawn.");
  EXPECT_EQ(generate_answer("Q?", "The pump starts at dawn. Then it stops.", agen), a);
}

TEST(AnswersTest, UsesCanonicalInstructionAndTrims) {
  FixedReplyLlm agen("  answer  \n");
  EXPECT_EQ(*generate_answer("Q?", "ctx", agen), "answer");
  EXPECT_EQ(agen.last.find(prompts::kInstruction), 0u);
}

TEST(AnswersTest, BlankOrFailedAnswerSkipped) {
  FixedReplyLlm blank("   ");
  FailingLlm failing;
  std::vector<std::string> warnings;
  EXPECT_FALSE(generate_answer("Q?", "ctx", blank, &warnings));
  EXPECT_FALSE(generate_answer("Q?", "ctx", failing, &warnings));
  EXPECT_EQ(warnings.size(), 2u);
}

TEST(AssembleTest, FiveSourceFiveDistractorOverManySeeds) {
  const std::string context(5000, 'c');
  auto pool = pool_from("other", 20);
  const auto own = pool_from("src", 20);
  pool.insert(pool.end(), own.begin(), own.end());
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto ex = assemble_example(context, "q", "a", "src", pool, seed);
    ASSERT_EQ(ex.context_chunks.size(), 10u);
    std::size_t src = 0, dis = 0;
    for (const auto& c : ex.context_chunks) {
      EXPECT_LE(utf8::length(c.text), 1000u);
      if (c.provenance == Provenance::kSource) {
        ++src;
      } else {
        ++dis;
        EXPECT_EQ(c.doc_id, "other");
      }
    }
    EXPECT_EQ(src, 5u);
    EXPECT_EQ(dis, 5u);
  }
}

TEST(AssembleTest, DistractorsDistinct) {
  const auto pool = pool_from("other", 6);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto ex = assemble_example("ctx", "q", "a", "src", pool, seed);
    std::set<std::string> seen;
    for (const auto& c : ex.context_chunks) {
      if (c.provenance == Provenance::kDistractor) EXPECT_TRUE(seen.insert(c.text).second);
    }
  }
}

TEST(AssembleTest, SourceChunksReassemble) {
  Rng rng(7);
  const auto pool = pool_from("other", 12);
  for (int i = 0; i < 100; ++i) {
    const auto context = testing::random_words(rng, 1 + rng.below(4990));
    if (utf8::length(context) > 5000) continue;
    const auto ex = assemble_example(context, "q", "a", "src", pool, rng.next());
    EXPECT_EQ(reassemble(ex), context);
  }
}

TEST(AssembleTest, FullContextSplitsIntoThousands) {
  std::string context;
  for (int i = 0; i < 5; ++i) context += std::string(1000, 'a' + i);
  const auto ex = assemble_example(context, "q", "a", "src", pool_from("o", 5), 3);
  for (const auto& c : ex.context_chunks) {
    if (c.provenance == Provenance::kSource) {
      EXPECT_EQ(c.text, std::string(1000, static_cast<char>('a' + *c.source_index)));
    }
  }
}

TEST(AssembleTest, SameSeedSameShuffle) {
  const auto pool = pool_from("o", 30);
  EXPECT_EQ(assemble_example("abcdefghij", "q", "a", "s", pool, 11),
            assemble_example("abcdefghij", "q", "a", "s", pool, 11));
  EXPECT_NE(assemble_example("abcdefghij", "q", "a", "s", pool, 11),
            assemble_example("abcdefghij", "q", "a", "s", pool, 12));
}

TEST(AssembleTest, PoolTooSmallNamesSize) {
  auto pool = pool_from("o", 4);
  const auto own = pool_from("s", 10);
  pool.insert(pool.end(), own.begin(), own.end());
  try {
    assemble_example("ctx", "q", "a", "s", pool, 0);
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("at least 5"), std::string::npos);
  }
}

TEST(AssembleTest, OversizedContextRejected) {
  EXPECT_THROW(assemble_example(std::string(5001, 'x'), "q", "a", "s", pool_from("o", 5), 0),
               InvalidArgument);
}

TEST(ExportTest, RoundTripAndLineCount) {
  const auto pool = pool_from("o", 8);
  std::vector<TrainingExample> exs;
  for (int i = 0; i < 7; ++i) {
    exs.push_back(assemble_example("Context ünïcode \"" + std::to_string(i) + "\"\nline", "q" + std::to_string(i),
                                   "a", "s", pool, i));
  }
  testing::TempDir dir("datagen");
  export_dataset(exs, dir.path() / "d.jsonl");
  const auto text = testing::read_file(dir.path() / "d.jsonl");
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), exs.size());
  EXPECT_EQ(import_dataset(dir.path() / "d.jsonl"), exs);
  const auto first = nlohmann::ordered_json::parse(text.substr(0, text.find('\n')));
  std::vector<std::string> keys;
  for (const auto& [k, v] : first.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"instruction", "context_chunks", "provenance",
                                            "source_index", "chunk_doc_ids", "question",
                                            "answer", "source_doc_id"}));
}

TEST(ExportTest, ZeroExamplesEmptyFile) {
  testing::TempDir dir("datagen");
  export_dataset({}, dir.path() / "e.jsonl");
  EXPECT_EQ(testing::read_file(dir.path() / "e.jsonl"), "");
  EXPECT_TRUE(import_dataset(dir.path() / "e.jsonl").empty());
}

std::vector<DatagenDocument> corpus(std::size_t docs, std::size_t chars, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<DatagenDocument> out;
  for (std::size_t d = 0; d < docs; ++d) {
    std::string md;
    while (md.size() < chars) md += "Sentence " + std::to_string(md.size()) + " about " + testing::random_words(rng, 40) + ".\n";
    out.push_back({"doc" + std::to_string(d), md});
  }
  return out;
}

TEST(DatasetTest, CountIsContextsTimesQuestions) {
  const auto docs = corpus(3, 12000, 1);
  MockQuestionGenerator qgen;
  MockAnswerGenerator agen;
  DatagenConfig cfg;
  cfg.questions_per_context = 4;
  const auto exs = generate_dataset(docs, qgen, agen, cfg);
  std::size_t contexts = 0;
  for (const auto& d : docs) contexts += split_training_contexts(d.markdown).size();
  EXPECT_EQ(exs.size(), contexts * 4);
  for (const auto& ex : exs) EXPECT_FALSE(ex.answer.empty());
}

TEST(DatasetTest, ReproducibleAndSeedSensitive) {
  const auto docs = corpus(4, 9000, 2);
  MockQuestionGenerator qgen;
  MockAnswerGenerator agen;
  DatagenConfig cfg;
  cfg.seed = 99;
  const auto a = to_jsonl(generate_dataset(docs, qgen, agen, cfg));
  const auto b = to_jsonl(generate_dataset(docs, qgen, agen, cfg));
  EXPECT_EQ(a, b);
  cfg.seed = 100;
  EXPECT_NE(a, to_jsonl(generate_dataset(docs, qgen, agen, cfg)));
}

TEST(DatasetTest, OrderedByDocContextQuestion) {
  const auto docs = corpus(3, 6000, 3);
  MockQuestionGenerator qgen;
  MockAnswerGenerator agen;
  const auto exs = generate_dataset(docs, qgen, agen, {});
  ASSERT_FALSE(exs.empty());
  for (std::size_t i = 1; i < exs.size(); ++i) EXPECT_LE(exs[i - 1].source_doc_id, exs[i].source_doc_id);
}

TEST(DatasetTest, LongContextsClippedToFivePieces) {
  const auto docs = corpus(2, 7400, 4);
  MockQuestionGenerator qgen;
  MockAnswerGenerator agen;
  const auto exs = generate_dataset(docs, qgen, agen, {});
  ASSERT_FALSE(exs.empty());
  for (const auto& ex : exs) {
    const auto& md = ex.source_doc_id == "doc0" ? docs[0].markdown : docs[1].markdown;
    EXPECT_EQ(reassemble(ex), md.substr(0, utf8::advance(md, 0, 5000)));
  }
}

TEST(DatasetTest, SingleDocumentHasNoDistractorsAndWarns) {
  const auto docs = corpus(1, 6000, 5);
  MockQuestionGenerator qgen;
  MockAnswerGenerator agen;
  std::vector<std::string> warnings;
  EXPECT_TRUE(generate_dataset(docs, qgen, agen, {}, &warnings).empty());
  EXPECT_FALSE(warnings.empty());
}

}  // namespace
}  // namespace docrag
