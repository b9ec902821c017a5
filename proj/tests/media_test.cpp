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

#include <gtest/gtest.h>

#include <cstdio>

#include "docrag/error.hpp"
#include "docrag/utf8.hpp"
#include "support.hpp"

namespace docrag {
namespace {

std::string fnv_hex8(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf, 8);
}

MarkdownDocument doc_with_images(std::size_t n) {
  MarkdownDocument md;
  md.doc_id = "d";
  md.text = "Intro";
  for (std::size_t i = 1; i <= n; ++i) {
    md.text += "\n![image_" + std::to_string(i) + "](" + image_id(i) + ")\nAfter " +
               std::to_string(i);
    md.images.push_back({image_id(i), "bytes" + std::to_string(i), std::nullopt, 0, {}});
  }
  return md;
}

class FailingCaptioner : public Captioner {
 public:
  std::string caption(std::string_view, const std::string&) override {
    throw RetriableError("service down");
  }
};

class MultiLineCaptioner : public Captioner {
 public:
  std::string caption(std::string_view, const std::string&) override {
    return "line one\nline two";
  }
};

TEST(CaptionTest, InsertsCaptionBelowImage) {
  MockCaptioner cap;
  const auto out = caption_images(doc_with_images(1), cap);
  EXPECT_EQ(out.text, "Intro\n![image_1](image_1.png)\nCaption [image_1.png]: " +
                          fnv_hex8("bytes1") + "\nAfter 1");
  ASSERT_TRUE(out.images[0].caption);
  EXPECT_EQ(*out.images[0].caption, fnv_hex8("bytes1"));
}

TEST(CaptionTest, ZeroImagesUnchanged) {
  MockCaptioner cap;
  EXPECT_EQ(caption_images(doc_with_images(0), cap).text, "Intro");
}

TEST(CaptionTest, Idempotent) {
  MockCaptioner cap;
  const auto once = caption_images(doc_with_images(3), cap);
  EXPECT_EQ(caption_images(once, cap).text, once.text);
}

TEST(CaptionTest, MockIsStableHashOfBytes) {
  MockCaptioner cap;
  EXPECT_EQ(cap.caption("abc", "image_1.png"), cap.caption("abc", "image_9.png"));
  EXPECT_EQ(cap.caption("abc", "image_1.png"), fnv_hex8("abc"));
  EXPECT_EQ(cap.caption("", "image_1.png"), fnv_hex8(""));
  EXPECT_NE(cap.caption("abc", "x"), cap.caption("abd", "x"));
}

TEST(CaptionTest, FailureBecomesPlaceholderAndWarning) {
  FailingCaptioner cap;
  std::vector<std::string> warnings;
  const auto out = caption_images(doc_with_images(2), cap, &warnings);
  EXPECT_NE(out.text.find("Caption [image_1.png]: (caption unavailable)"), std::string::npos);
  EXPECT_NE(out.text.find("Caption [image_2.png]: (caption unavailable)"), std::string::npos);
  EXPECT_EQ(warnings.size(), 2u);
}

TEST(CaptionTest, CaptionKeptToOneLine) {
  MultiLineCaptioner cap;
  const auto out = caption_images(doc_with_images(1), cap);
  EXPECT_NE(out.text.find("Caption [image_1.png]: line one line two\nAfter 1"), std::string::npos);
}

TEST(CompressTest, MinimalTable) {
  EXPECT_EQ(compress_table("| A | B |\n| --- | --- |\n| 1 | 2 |", "table_1"),
            R"([table_1] {"columns":["A","B"],"rows":[["1","2"]]})");
}

TEST(CompressTest, HeaderOnly) {
  EXPECT_EQ(compress_table("| A |\n| --- |", "table_2"), R"([table_2] {"columns":["A"],"rows":[]})");
}

TEST(CompressTest, TrimsAndUnescapes) {
  EXPECT_EQ(compress_table("|  a\\|b |c|\n|:---|---:|\n|x |  y|", "table_3"),
            R"([table_3] {"columns":["a|b","c"],"rows":[["x","y"]]})");
}

TEST(CompressTest, MissingSeparatorReportsRow) {
  try {
    compress_table("| A |\n| 1 |", "table_1");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 1u);
  }
}

TEST(CompressTest, RaggedRowReportsRow) {
  try {
    compress_table("| A | B |\n| --- | --- |\n| 1 | 2 |\n| 3 |", "table_1");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 3u);
  }
}

TEST(CompressTest, BadIdRejected) {
  EXPECT_THROW(compress_table("| A |\n| --- |", "tab"), InvalidArgument);
}

TEST(DecompressTest, HeaderOnly) {
  EXPECT_EQ(decompress_table(R"([table_1] {"columns":["A"],"rows":[]})"), "| A |\n| --- |");
}

TEST(DecompressTest, InverseOnCanonicalDictText) {
  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    const auto t = testing::random_table(rng, 1 + rng.below(30));
    const auto dict = to_dict_table_text(t);
    EXPECT_EQ(compress_table(decompress_table(dict), t.id), dict);
  }
}

TEST(DecompressTest, RoundTripOfLooseMarkdownIsCanonicalRender) {
  Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    const auto t = testing::random_table(rng, 1);
    const auto loose = testing::loose_markdown(t, rng);
    EXPECT_EQ(decompress_table(compress_table(loose, t.id)), render_markdown_table(t)) << loose;
  }
}

TEST(DecompressTest, GrammarViolationsReportByteOffset) {
  auto offset_of = [](std::string_view s) -> std::size_t {
    try {
      decompress_table(s);
    } catch (const ParseError& e) {
      return e.offset();
    }
    ADD_FAILURE() << "no error for " << s;
    return 0;
  };
  EXPECT_EQ(offset_of("table_1] {}"), 0u);
  EXPECT_EQ(offset_of("[table_x] {}"), 7u);
  EXPECT_GE(offset_of(R"([table_1] {"columns":["A"],"rows":[["1","2"]]})"), 10u);
  EXPECT_GE(offset_of(R"([table_1] {"columns":["A"],"rows":[] )"), 10u);
  EXPECT_GE(offset_of(R"([table_1] {"columns":["A"]})"), 10u);
}

TEST(DictLineTest, Recognition) {
  EXPECT_TRUE(is_dict_table_line(R"([table_1] {"columns":["A"],"rows":[]})"));
  EXPECT_FALSE(is_dict_table_line("[table_1] not json"));
  EXPECT_FALSE(is_dict_table_line("| A |"));
  EXPECT_FALSE(is_dict_table_line(""));
}

TEST(CompressTablesTest, ReplacesRenderedTablesInText) {
  MarkdownDocument md;
  md.doc_id = "d";
  TableRecord t{"table_1", {"A", "B"}, {{"1", "2"}}, 0, {}};
  md.text = "before\n" + render_markdown_table(t) + "\nafter";
  md.tables.push_back(t);
  EXPECT_EQ(compress_tables(md).text,
            "before\n[table_1] {\"columns\":[\"A\",\"B\"],\"rows\":[[\"1\",\"2\"]]}\nafter");
}

}  // namespace
}  // namespace docrag
