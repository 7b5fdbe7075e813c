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

// Evaluation measures: edit distance, character score, the sentence-level
// semantic score pipeline, per-pair BODEGA breakdowns, and run aggregates.

#ifndef BODEGA_SCORING_H_
#define BODEGA_SCORING_H_

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bodega/attacks.h"
#include "bodega/resources.h"
#include "bodega/victims.h"

namespace bodega {

// Unit-cost edit distance over Unicode scalar values.
size_t Levenshtein(std::u32string_view a, std::u32string_view b);
size_t Levenshtein(std::string_view a, std::string_view b);

// 1 - lev(a, b) / max(|a|, |b|), lengths in code points. Two empty strings
// score 1.
double CharScore(std::string_view a, std::string_view b);

// Case-folds, collapses whitespace runs to one space, and trims.
std::string NormalizeForScoring(std::string_view text);

// Sentence-pair similarity in [0, 1].
class SemanticScorer {
 public:
  virtual ~SemanticScorer() = default;
  virtual double Score(std::string_view a, std::string_view b) = 0;
};

// Cosine of mean word vectors mapped from [-1, 1] to [0, 1]. Out-of-vocabulary
// words are skipped; if either side has no usable vector the character score
// of the two sentences is used instead. Stateless, safe to share.
class EmbeddingSemanticScorer : public SemanticScorer {
 public:
  explicit EmbeddingSemanticScorer(const EmbeddingTable& embeddings)
      : embeddings_(embeddings) {}

  double Score(std::string_view a, std::string_view b) override;

 private:
  std::optional<std::vector<double>> MeanVector(std::string_view text) const;

  const EmbeddingTable& embeddings_;
};

// Client for an external scorer process speaking one JSON object per line:
// request {"a": ..., "b": ...}, response {"score": x}. Requests are
// serialized, so one instance may be shared by worker threads. Any protocol
// violation or child exit throws ScorerError.
class ExternalSemanticScorer : public SemanticScorer {
 public:
  // Runs `command` through /bin/sh -c.
  explicit ExternalSemanticScorer(const std::string& command);
  ~ExternalSemanticScorer() override;

  ExternalSemanticScorer(const ExternalSemanticScorer&) = delete;
  ExternalSemanticScorer& operator=(const ExternalSemanticScorer&) = delete;

  double Score(std::string_view a, std::string_view b) override;

  // Raw response value before clipping; exposed for protocol tests.
  double RawScore(std::string_view a, std::string_view b);

 private:
  void Shutdown();

  std::mutex mutex_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  bool broken_ = false;
};

// Semantic score of a single-segment text: both texts are split into
// sentences, every modified sentence is paired with its Levenshtein-nearest
// original sentence (ties to the earliest), and the clipped mean of the pair
// scores is returned. Texts are normalized before pairing and scoring.
double SemanticScore(SemanticScorer& scorer, std::string_view original,
                     std::string_view modified);

// Pair tasks compare segment by segment; otherwise the segments are joined
// and scored as one text.
double SemanticScore(SemanticScorer& scorer,
                     std::span<const std::string> original,
                     std::span<const std::string> modified, bool pair_task);

struct ScoreBreakdown {
  int confusion = 0;
  // Absent unless confusion == 1.
  std::optional<double> semantic;
  std::optional<double> character;
  // confusion * semantic * character, with absent factors as 0.
  double bodega = 0.0;
};

// Confusion is 1 only when the outcome claims success and re-predicting the
// adversarial text (outside any query counter) gives a label other than
// `original_prediction`. A claimed success that does not verify, or one whose
// text equals the original after normalization, throws Error.
ScoreBreakdown ScorePair(const Victim& victim,
                         const Prediction& original_prediction,
                         const Instance& original, const AttackOutcome& outcome,
                         SemanticScorer& scorer, bool pair_task);

struct EvaluationReport {
  std::string task;
  std::string attacker;
  std::string victim;
  std::string scenario;
  size_t n_instances = 0;
  double confusion_rate = 0.0;
  // Averages over changed-decision cases; absent when there are none.
  std::optional<double> semantic_avg;
  std::optional<double> character_avg;
  // Averages over all instances.
  double bodega_avg = 0.0;
  double queries_avg = 0.0;
};

// Throws ConfigError on empty or mismatched inputs.
EvaluationReport Aggregate(std::span<const ScoreBreakdown> breakdowns,
                           std::span<const uint64_t> queries);

}  // namespace bodega

#endif  // BODEGA_SCORING_H_
