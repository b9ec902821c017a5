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

#include <gtest/gtest.h>

#include "docrag/media.hpp"
#include "docrag/utf8.hpp"
#include "support.hpp"

namespace docrag {
namespace {

std::string concat(const std::vector<Chunk>& chunks) {
  std::string s;
  for (const auto& c : chunks) s += c.text;
  return s;
}

TEST(ChunkTest, EmptyText) { EXPECT_TRUE(chunk_document("", "d").empty()); }

TEST(ChunkTest, LongSingleLineSplitIntoThousands) {
  const std::string text(2500, 'x');
  const auto chunks = chunk_document(text, "d");
  ASSERT_EQ(chunks.size(), 3u);
  EXPECT_EQ(chunks[0].text.size(), 1000u);
  EXPECT_EQ(chunks[1].text.size(), 1000u);
  EXPECT_EQ(chunks[2].text.size(), 500u);
  EXPECT_EQ(concat(chunks), text);
}

TEST(ChunkTest, ShortLinesPackedGreedily) {
  std::string text;
  for (int i = 0; i < 25; ++i) text += std::string(99, 'a' + i % 26) + "\n";
  const auto chunks = chunk_document(text, "d");
  ASSERT_EQ(chunks.size(), 3u);
  EXPECT_EQ(utf8::length(chunks[0].text), 1000u);
  EXPECT_EQ(utf8::length(chunks[1].text), 1000u);
  EXPECT_EQ(concat(chunks), text);
}

TEST(ChunkTest, OversizedTableLineIsOneChunk) {
  TableRecord t{"table_1", {"c"}, {}, 0, {}};
  while (to_dict_table_text(t).size() < 1200) t.rows.push_back({"value"});
  std::string line = to_dict_table_text(t);
  while (line.size() > 1200) {
    t.rows.pop_back();
    line = to_dict_table_text(t);
  }
  t.rows.back()[0] += std::string(1200 - line.size(), 'v');
  line = to_dict_table_text(t);
  ASSERT_EQ(line.size(), 1200u);
  const auto chunks = chunk_document("intro\n" + line + "\noutro", "d");
  ASSERT_EQ(chunks.size(), 3u);
  EXPECT_EQ(chunks[1].text, line + "\n");
}

TEST(ChunkTest, ImageAndCaptionStayTogether) {
  const std::string before(990, 'b');
  const std::string pair = "![image_1](image_1.png)\nCaption [image_1.png]: a pump\n";
  const auto chunks = chunk_document(before + "\n" + pair, "d");
  ASSERT_EQ(chunks.size(), 2u);
  EXPECT_EQ(chunks[1].text, pair);
}

TEST(ChunkTest, MultibyteCountedAsCharacters) {
  std::string text;
  for (int i = 0; i < 1500; ++i) text += "é";
  const auto chunks = chunk_document(text, "d");
  ASSERT_EQ(chunks.size(), 2u);
  EXPECT_EQ(utf8::length(chunks[0].text), 1000u);
  EXPECT_EQ(chunks[0].span->end, 2000u);
}

TEST(ChunkTest, IdsSpansAndLevels) {
  const auto chunks = chunk_document(std::string(2100, 'z'), "manual");
  ASSERT_EQ(chunks.size(), 3u);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    EXPECT_EQ(chunks[i].chunk_id, leaf_chunk_id("manual", i));
    EXPECT_EQ(chunks[i].doc_id, "manual");
    EXPECT_EQ(chunks[i].level, 0);
    ASSERT_TRUE(chunks[i].span);
    EXPECT_EQ(chunks[i].span->begin, pos);
    pos = chunks[i].span->end;
  }
  EXPECT_EQ(pos, 2100u);
  EXPECT_EQ(leaf_chunk_id("manual", 7), "manual/c00007");
}

TEST(ChunkTest, RandomDocumentsTileExactly) {
  Rng rng(21);
  for (int i = 0; i < 50; ++i) {
    const auto md = testing::random_markdown(rng);
    const auto chunks = chunk_document(md, "d");
    EXPECT_EQ(concat(chunks), md);
    std::size_t pos = 0;
    for (const auto& c : chunks) {
      EXPECT_EQ(c.span->begin, pos);
      EXPECT_EQ(md.substr(c.span->begin, c.span->end - c.span->begin), c.text);
      pos = c.span->end;
    }
  }
}

TEST(ChunkTest, SmallMaxChars) {
  const auto chunks = chunk_document("abc\ndef", "d", 2);
  EXPECT_EQ(concat(chunks), "abc\ndef");
  for (const auto& c : chunks) EXPECT_LE(utf8::length(c.text), 2u);
  EXPECT_THROW(chunk_document("x", "d", 0), InvalidArgument);
}

}  // namespace
}  // namespace docrag
