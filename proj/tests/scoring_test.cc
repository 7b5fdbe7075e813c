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


#include "bodega/scoring.h"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <utility>

#include "bodega/errors.h"
#include "support/fixtures.h"

namespace bodega {
namespace {

size_t Oracle(std::string_view a, std::string_view b) {
  if (a.empty()) return b.size();
  if (b.empty()) return a.size();
  if (a[0] == b[0]) return Oracle(a.substr(1), b.substr(1));
  return 1 + std::min({Oracle(a.substr(1), b), Oracle(a, b.substr(1)),
                       Oracle(a.substr(1), b.substr(1))});
}

// Same recursion, memoized so long strings stay tractable.
size_t MemoOracle(const std::string& a, const std::string& b, size_t i,
                  size_t j, std::map<std::pair<size_t, size_t>, size_t>& memo) {
  if (i == a.size()) return b.size() - j;
  if (j == b.size()) return a.size() - i;
  const auto key = std::make_pair(i, j);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  size_t d;
  if (a[i] == b[j]) {
    d = MemoOracle(a, b, i + 1, j + 1, memo);
  } else {
    d = 1 + std::min({MemoOracle(a, b, i + 1, j, memo),
                      MemoOracle(a, b, i, j + 1, memo),
                      MemoOracle(a, b, i + 1, j + 1, memo)});
  }
  memo[key] = d;
  return d;
}

std::vector<std::string> AllStrings(size_t max_len) {
  std::vector<std::string> all = {""};
  for (size_t begin = 0, len = 1; len <= max_len; ++len) {
    const size_t end = all.size();
    for (size_t i = begin; i < end; ++i) {
      for (char c : std::string("abc")) all.push_back(all[i] + c);
    }
    begin = end;
  }
  return all;
}

TEST(LevenshteinTest, KnownValues) {
  EXPECT_EQ(Levenshtein("kitten", "sitting"), 3u);
  EXPECT_EQ(Levenshtein("", "abc"), 3u);
  EXPECT_EQ(Levenshtein("same", "same"), 0u);
  EXPECT_EQ(Levenshtein("call", "ca||"), 2u);
  // Code points, not bytes.
  EXPECT_EQ(Levenshtein("żółw", "zolw"), 3u);
}

TEST(LevenshteinTest, MatchesOracleExhaustivelyUpToFour) {
  const auto all = AllStrings(4);
  for (const auto& a : all) {
    for (const auto& b : all) ASSERT_EQ(Levenshtein(a, b), Oracle(a, b));
  }
}

TEST(LevenshteinTest, MatchesMemoizedOracleOnLongPairs) {
  std::mt19937_64 gen(3);
  for (int i = 0; i < 1000; ++i) {
    std::string a(gen() % 41, 'a');
    std::string b(gen() % 41, 'a');
    for (char& c : a) c = static_cast<char>('a' + gen() % 3);
    for (char& c : b) c = static_cast<char>('a' + gen() % 3);
    std::map<std::pair<size_t, size_t>, size_t> memo;
    ASSERT_EQ(Levenshtein(a, b), MemoOracle(a, b, 0, 0, memo));
  }
}

TEST(LevenshteinTest, MetricProperties) {
  const auto all = AllStrings(3);
  for (const auto& a : all) {
    for (const auto& b : all) {
      EXPECT_EQ(Levenshtein(a, b), Levenshtein(b, a));
      for (const auto& c : {std::string("ab"), std::string("cba")}) {
        EXPECT_LE(Levenshtein(a, c), Levenshtein(a, b) + Levenshtein(b, c));
      }
    }
  }
}

TEST(CharScoreTest, Examples) {
  EXPECT_EQ(CharScore("same", "same"), 1.0);
  EXPECT_DOUBLE_EQ(CharScore("abc", "abd"), 1.0 - 1.0 / 3.0);
  EXPECT_EQ(CharScore("abc", "xyz"), 0.0);
  EXPECT_EQ(CharScore("", ""), 1.0);
  EXPECT_EQ(CharScore("call", "ca||"), 0.5);
  EXPECT_EQ(CharScore("abcd", "ab"), CharScore("ab", "abcd"));
}

TEST(NormalizeTest, FoldsAndCollapses) {
  EXPECT_EQ(NormalizeForScoring("Hello  World "), "hello world");
  EXPECT_EQ(NormalizeForScoring("hello world"), "hello world");
  EXPECT_EQ(NormalizeForScoring("\tA\n\nB c "), "a b c");
  EXPECT_EQ(CharScore(NormalizeForScoring("Same Text"),
                      NormalizeForScoring("same  text")),
            1.0);
}

// Scores by a lookup table keyed on (a, b); records every request.
class TableScorer : public SemanticScorer {
 public:
  double Score(std::string_view a, std::string_view b) override {
    calls.emplace_back(a, b);
    if (a == b) return 1.0;
    return fallback;
  }

  double fallback = 0.25;
  std::vector<std::pair<std::string, std::string>> calls;
};

TEST(SemanticScoreTest, SingleSentenceIsOnePair) {
  TableScorer scorer;
  EXPECT_EQ(SemanticScore(scorer, "Dust approaching.", "Dust coming."), 0.25);
  ASSERT_EQ(scorer.calls.size(), 1u);
  EXPECT_EQ(scorer.calls[0].first, "dust approaching.");
  EXPECT_EQ(scorer.calls[0].second, "dust coming.");
}

TEST(SemanticScoreTest, SwappedSentencesPairWithTheirCounterparts) {
  TableScorer scorer;
  const std::string original = "The first one is here. A second sentence follows.";
  const std::string swapped = "A second sentence follows. The first one is here.";
  EXPECT_EQ(SemanticScore(scorer, original, swapped), 1.0);
  EXPECT_EQ(SemanticScore(scorer, original, original), 1.0);
}

TEST(SemanticScoreTest, ClipsScorerOutput) {
  TableScorer scorer;
  scorer.fallback = 1.7;
  EXPECT_EQ(SemanticScore(scorer, "a b.", "a c."), 1.0);
  scorer.fallback = -0.3;
  EXPECT_EQ(SemanticScore(scorer, "a b.", "a c."), 0.0);
}

TEST(SemanticScoreTest, ExtraOriginalSentencesStayUnmatched) {
  TableScorer scorer;
  EXPECT_EQ(SemanticScore(scorer, "One here. Two there. Three.", "Two there."),
            1.0);
  EXPECT_EQ(scorer.calls.size(), 1u);
}

TEST(SemanticScoreTest, PairTaskComparesSegments) {
  TableScorer scorer;
  const std::vector<std::string> before = {"Claim text. More.", "Evidence."};
  const std::vector<std::string> after = {"Claim text. More.", "Proof."};
  EXPECT_DOUBLE_EQ(SemanticScore(scorer, before, after, true),
                   (1.0 + 0.25) / 2.0);
  ASSERT_EQ(scorer.calls.size(), 2u);
  EXPECT_EQ(scorer.calls[0].first, "claim text. more.");
}

TEST(EmbeddingScorerTest, Examples) {
  const EmbeddingTable table = EmbeddingTable::FromRows(
      {{"north", {1.0, 0.0}}, {"south", {0.0, 1.0}}, {"up", {-1.0, 0.0}}});
  EmbeddingSemanticScorer scorer(table);
  EXPECT_DOUBLE_EQ(scorer.Score("north wind", "north wind"), 1.0);
  EXPECT_DOUBLE_EQ(scorer.Score("north", "south"), 0.5);
  EXPECT_DOUBLE_EQ(scorer.Score("north", "up"), 0.0);
  EXPECT_DOUBLE_EQ(scorer.Score("qqq zzz", "qqq zzz"), 1.0);
  EXPECT_DOUBLE_EQ(scorer.Score("abc", "abd"), 1.0 - 1.0 / 3.0);
}

TEST(EmbeddingScorerTest, IdentityOnSyntheticTexts) {
  const EmbeddingTable table = testing::SyntheticEmbeddings();
  EmbeddingSemanticScorer scorer(table);
  const auto corpus = testing::MakeSeparableCorpus(0, 30, 8);
  for (const Instance& i : corpus.attack.instances) {
    EXPECT_GE(SemanticScore(scorer, i.text, i.text), 0.99);
  }
}

TEST(ScoringInvarianceTest, CaseAndSpacingDoNotMatter) {
  const EmbeddingTable table = testing::SyntheticEmbeddings();
  EmbeddingSemanticScorer scorer(table);
  const std::string a = "The city said. A hoax vote.";
  const std::string b = "The city said. A memo vote.";
  const std::string b_noisy = "  THE city   said.\tA Memo VOTE. ";
  EXPECT_EQ(SemanticScore(scorer, a, b), SemanticScore(scorer, a, b_noisy));
  EXPECT_EQ(CharScore(NormalizeForScoring(a), NormalizeForScoring(b)),
            CharScore(NormalizeForScoring(a), NormalizeForScoring(b_noisy)));
}

FeaturizerConfig WordsOnly() {
  FeaturizerConfig config;
  config.char_ngrams = false;
  return config;
}

TEST(ScorePairTest, FailedOutcomeScoresZero) {
  const LinearVictim victim = LinearVictim::Zero();
  TableScorer scorer;
  const Instance instance{"1", 1, "text", std::nullopt};
  const ScoreBreakdown b =
      ScorePair(victim, victim.Predict("text"), instance, AttackOutcome{},
                scorer, false);
  EXPECT_EQ(b.confusion, 0);
  EXPECT_EQ(b.bodega, 0.0);
  EXPECT_FALSE(b.semantic);
  EXPECT_FALSE(b.character);
  EXPECT_TRUE(scorer.calls.empty());
}

TEST(ScorePairTest, SuccessIsVerifiedAndMultiplied) {
  LinearVictim victim = LinearVictim::Zero(WordsOnly());
  victim.SetWordWeight("approaching", 3.0);
  victim.set_bias(-1.0);
  TableScorer scorer;
  scorer.fallback = 0.5;
  const Instance instance{"1", 1, "Dust approaching", std::nullopt};
  AttackOutcome outcome;
  outcome.succeeded = true;
  outcome.adversarial_text = "Dust coming";
  const ScoreBreakdown b = ScorePair(victim, victim.Predict(instance.text),
                                     instance, outcome, scorer, false);
  EXPECT_EQ(b.confusion, 1);
  EXPECT_EQ(*b.semantic, 0.5);
  EXPECT_EQ(*b.character, CharScore("dust approaching", "dust coming"));
  EXPECT_EQ(b.bodega, 1.0 * 0.5 * *b.character);
}

TEST(ScorePairTest, UnverifiedOrNoOpSuccessIsAnError) {
  LinearVictim victim = LinearVictim::Zero(WordsOnly());
  victim.SetWordWeight("approaching", 3.0);
  victim.set_bias(-1.0);
  TableScorer scorer;
  const Instance instance{"1", 1, "Dust approaching", std::nullopt};
  AttackOutcome same_label;
  same_label.succeeded = true;
  same_label.adversarial_text = "Dust approaching now";
  EXPECT_THROW(ScorePair(victim, victim.Predict(instance.text), instance,
                         same_label, scorer, false),
               Error);
  // A lying original prediction exposes a no-op "success".
  AttackOutcome no_op;
  no_op.succeeded = true;
  no_op.adversarial_text = "dust  APPROACHING";
  EXPECT_THROW(ScorePair(victim, Prediction{0.1, 0}, instance, no_op, scorer,
                         false),
               Error);
}

TEST(AggregateTest, HandExample) {
  const std::vector<ScoreBreakdown> b = {
      {1, 0.6, 0.9, 0.6 * 0.9}, {0, std::nullopt, std::nullopt, 0.0},
      {1, 0.8, 1.0, 0.8}};
  const std::vector<uint64_t> q = {10, 20, 30};
  const EvaluationReport r = Aggregate(b, q);
  EXPECT_EQ(r.n_instances, 3u);
  EXPECT_NEAR(r.confusion_rate, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(*r.semantic_avg, 0.7, 1e-12);
  EXPECT_NEAR(*r.character_avg, 0.95, 1e-12);
  EXPECT_NEAR(r.bodega_avg, (0.54 + 0.8) / 3.0, 1e-12);
  EXPECT_EQ(r.queries_avg, 20.0);
  EXPECT_LE(r.bodega_avg, r.confusion_rate);
}

TEST(AggregateTest, AllFailuresAndSingleSuccess) {
  const std::vector<ScoreBreakdown> failures(4);
  const std::vector<uint64_t> q(4, 5);
  const EvaluationReport r = Aggregate(failures, q);
  EXPECT_EQ(r.confusion_rate, 0.0);
  EXPECT_EQ(r.bodega_avg, 0.0);
  EXPECT_FALSE(r.semantic_avg);
  EXPECT_FALSE(r.character_avg);

  const std::vector<ScoreBreakdown> one = {{1, 1.0, 1.0, 1.0}};
  const std::vector<uint64_t> q1 = {1};
  const EvaluationReport single = Aggregate(one, q1);
  EXPECT_EQ(single.bodega_avg, single.confusion_rate);
}

TEST(AggregateTest, RejectsEmptyAndMismatched) {
  EXPECT_THROW(Aggregate({}, {}), ConfigError);
  const std::vector<ScoreBreakdown> b(2);
  const std::vector<uint64_t> q(3);
  EXPECT_THROW(Aggregate(b, q), ConfigError);
}

}  // namespace
}  // namespace bodega
