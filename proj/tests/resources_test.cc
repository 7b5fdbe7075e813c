//
// Copyright 2026 The Bodega Forge Authors
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
//


#include "bodega/resources.h"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "bodega/errors.h"
#include "bodega/random.h"
#include "bodega/text.h"
#include "support/fixtures.h"

namespace bodega {
namespace {

std::string Reconstruct(std::string_view text,
                        const std::vector<TokenSpan>& spans) {
  std::string out;
  size_t pos = 0;
  for (const TokenSpan& span : spans) {
    out.append(text.substr(pos, span.start - pos));
    out.append(span.token);
    pos = span.end;
  }
  out.append(text.substr(pos));
  return out;
}

std::string NonSpace(std::string_view text) {
  std::string out;
  size_t pos = 0;
  while (pos < text.size()) {
    const size_t start = pos;
    if (!IsSpace(NextCodePoint(text, pos))) {
      out.append(text.substr(start, pos - start));
    }
  }
  return out;
}

TEST(TokenizeTest, WordsAndPunctuationWithOffsets) {
  const std::string text = "It's here.";
  const auto spans = Tokenize(text);
  ASSERT_EQ(spans.size(), 3u);
  EXPECT_EQ(spans[0].token, "It's");
  EXPECT_EQ(spans[0].kind, TokenKind::kWord);
  EXPECT_EQ(spans[0].start, 0u);
  EXPECT_EQ(spans[0].end, 4u);
  EXPECT_EQ(spans[1].token, "here");
  EXPECT_EQ(spans[1].start, 5u);
  EXPECT_EQ(spans[2].token, ".");
  EXPECT_EQ(spans[2].kind, TokenKind::kPunctuation);
  EXPECT_EQ(spans[2].start, 9u);
}

TEST(TokenizeTest, EmptyAndSpacing) {
  EXPECT_TRUE(Tokenize("").empty());
  const std::string text = "a  b";
  EXPECT_EQ(Reconstruct(text, Tokenize(text)), text);
}

TEST(TokenizeTest, LosslessOnRandomUnicode) {
  const char32_t pool[] = {U'a', U'Z', U'7', U'\'', U' ', U'\t', U'\n', U'.',
                           U',', U'é', U'Ж', 0x2019, 0x1F600, 0xA0, U'-'};
  Rng rng(12);
  for (int i = 0; i < 1000; ++i) {
    std::u32string s;
    const size_t len = rng.Uniform(20);
    for (size_t j = 0; j < len; ++j) s += pool[rng.Uniform(std::size(pool))];
    std::string text = EncodeUtf8(s);
    if (rng.Uniform(4) == 0) text += "\xff";
    const auto spans = Tokenize(text);
    ASSERT_EQ(Reconstruct(text, spans), text);
    for (size_t k = 1; k < spans.size(); ++k) {
      ASSERT_LE(spans[k - 1].end, spans[k].start);
    }
  }
}

TEST(TokenizeTest, WordTokensAreFolded) {
  EXPECT_EQ(WordTokens("The CAT's hat, 42!"),
            (std::vector<std::string>{"the", "cat's", "hat", "42"}));
}

TEST(SentenceSplitTest, SplitsOnTerminalPunctuation) {
  EXPECT_EQ(SplitSentences("A. B? C!"),
            (std::vector<std::string>{"A.", "B?", "C!"}));
}

TEST(SentenceSplitTest, AbbreviationGuard) {
  EXPECT_EQ(SplitSentences("Mr. Smith left.").size(), 1u);
  EXPECT_EQ(SplitSentences("We met Dr. Who. Then we left.").size(), 2u);
  EXPECT_EQ(SplitSentences("Made in the U.S. Today it rains.").size(), 1u);
}

TEST(SentenceSplitTest, FallbackAndEmpty) {
  EXPECT_EQ(SplitSentences("  no terminal punctuation here  "),
            (std::vector<std::string>{"no terminal punctuation here"}));
  EXPECT_TRUE(SplitSentences("").empty());
  EXPECT_TRUE(SplitSentences("   ").empty());
}

TEST(SentenceSplitTest, ClosersStayWithTheirSentence) {
  EXPECT_EQ(SplitSentences("He said \"stop.\" Then 2 more."),
            (std::vector<std::string>{"He said \"stop.\"", "Then 2 more."}));
}

TEST(SentenceSplitTest, LowercaseModeForFoldedText) {
  EXPECT_EQ(SplitSentences("one. two. three", {}).size(), 1u);
  SentenceSplitOptions folded;
  folded.require_capital = false;
  EXPECT_EQ(SplitSentences("one. two. three", folded).size(), 3u);
  EXPECT_EQ(SplitSentences("see mr. smith. ok", folded).size(), 2u);
}

TEST(SentenceSplitTest, CoversEveryNonSpaceCharacterOnce) {
  const testing::SyntheticCorpus corpus =
      testing::MakeSeparableCorpus(0, 50, 4);
  for (const Instance& instance : corpus.attack.instances) {
    const std::string text = instance.text + "  Mr. X said: \"wow!\" 3 times.";
    std::string joined;
    for (const std::string& s : SplitSentences(text)) {
      EXPECT_FALSE(s.empty());
      joined += s;
    }
    EXPECT_EQ(NonSpace(joined), NonSpace(text));
  }
}

TEST(EmbeddingsTest, NormalizesRows) {
  std::istringstream in("a 1 2 3 4\nb 0 0 0 5\nc -1 1 -1 1\n");
  const EmbeddingTable table = ParseEmbeddings(in);
  EXPECT_EQ(table.size(), 3u);
  EXPECT_EQ(table.dimension(), 4u);
  for (size_t i = 0; i < table.size(); ++i) {
    double norm = 0.0;
    for (float v : table.Row(i)) norm += double{v} * v;
    EXPECT_NEAR(std::sqrt(norm), 1.0, 1e-6);
  }
}

TEST(EmbeddingsTest, DimensionMismatchNamesLine) {
  std::istringstream in("a 1 2 3 4\nb 1 2 3 4 5\n");
  try {
    ParseEmbeddings(in, "emb.txt");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(EmbeddingsTest, ZeroVectorRejected) {
  std::istringstream in("a 0 0\n");
  EXPECT_THROW(ParseEmbeddings(in), Error);
}

TEST(EmbeddingsTest, FirstDuplicateWinsAndHeaderSkipped) {
  std::istringstream in("2 2\nWord 1 0\nword 0 1\n");
  const EmbeddingTable table = ParseEmbeddings(in);
  EXPECT_EQ(table.size(), 1u);
  EXPECT_DOUBLE_EQ(table.Row(0)[0], 1.0);
  EXPECT_TRUE(table.Contains("WORD"));
}

EmbeddingTable SmallTable() {
  return EmbeddingTable::FromRows(
      {{"a", {1.0, 0.0}}, {"b", {1.0, 0.0}}, {"c", {0.0, 1.0}}});
}

TEST(NearestNeighborsTest, HandExample) {
  const auto neighbors = NearestNeighbors(SmallTable(), "a", 2, 0.5);
  ASSERT_EQ(neighbors.size(), 1u);
  EXPECT_EQ(neighbors[0].word, "b");
  EXPECT_NEAR(neighbors[0].cosine, 1.0, 1e-12);
}

TEST(NearestNeighborsTest, OutOfVocabularyAndLargeK) {
  EXPECT_TRUE(NearestNeighbors(SmallTable(), "zzz", 5, 0.0).empty());
  EXPECT_EQ(NearestNeighbors(SmallTable(), "a", 100, -1.0).size(), 2u);
}

TEST(NearestNeighborsTest, ParallelMatchesSerialOnLargeTable) {
  std::vector<std::pair<std::string, std::vector<double>>> rows;
  Rng rng(5);
  for (int i = 0; i < 6000; ++i) {
    std::vector<double> v(16);
    for (double& x : v) x = rng.UniformReal() - 0.5;
    rows.emplace_back("w" + std::to_string(i), std::move(v));
  }
  const EmbeddingTable table = EmbeddingTable::FromRows(rows);
  for (const char* word : {"w0", "w17", "w5999"}) {
    const auto parallel = NearestNeighbors(table, word, 25, 0.2);
    EXPECT_EQ(parallel, NearestNeighborsSerial(table, word, 25, 0.2));
    for (size_t i = 0; i < parallel.size(); ++i) {
      EXPECT_NEAR(parallel[i].cosine, table.Cosine(word, parallel[i].word),
                  1e-6);
      if (i > 0) EXPECT_GE(parallel[i - 1].cosine, parallel[i].cosine);
    }
  }
}

TEST(SynonymsTest, ParsesDropsSelfAndMerges) {
  std::istringstream in("happy\tglad,joyful\nHappy\thappy,glad,cheerful\n");
  const SynonymLexicon lexicon = ParseSynonyms(in);
  EXPECT_EQ(lexicon.Synonyms("happy"),
            (std::vector<std::string>{"glad", "joyful", "cheerful"}));
  EXPECT_TRUE(lexicon.Synonyms("sad").empty());
}

TEST(SynonymsTest, MalformedLineNamesLine) {
  std::istringstream in("happy\tglad\nbroken line\n");
  try {
    ParseSynonyms(in, "syn.tsv");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

}  // namespace
}  // namespace bodega
