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

#include <string_view>

// Prompt texts shared by inference and training-data generation, so that a
// model fine-tuned on generated data sees the same instruction it is served
// with.
namespace docrag::prompts {

inline constexpr std::string_view kInstruction =
    "You are a question answering assistant for technical documents. Answer the "
    "question using only the context below. The context consists of numbered "
    "chunks of markdown; some chunks are unrelated to the question, so judge "
    "each chunk's relevance before using it. When an image supports the answer, "
    "cite it by its ID in the exact form [image_1.png]. When a table supports "
    "the answer, reproduce its [table_n] line unchanged. If the context does not "
    "contain the answer, say so.";

inline constexpr std::string_view kAnswerTemplate =
    "Context:\n{context}\n\nQuestion: {question}\nAnswer:";

inline constexpr std::string_view kNoContext = "(no context retrieved)";

inline constexpr std::string_view kQuestionGeneration =
    "You write exam questions about technical documents. Read the context below "
    "and write {count} relevant, self-contained questions that can be answered "
    "from it, including questions about any images (cited as [image_n.png]) or "
    "tables ([table_n] lines) it contains. Write exactly one question per line "
    "with no numbering.\n\nContext:\n{context}\n\nQuestions:";

inline constexpr std::string_view kSummarize =
    "Summarize the following passages in one paragraph, keeping every image ID "
    "and table ID they mention.\n\n{context}\n\nSummary:";

}  // namespace docrag::prompts
