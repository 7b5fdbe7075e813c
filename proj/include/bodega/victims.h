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

// Grey-box victim classifiers. A victim maps text to a likelihood score of
// the positive class in [0, 1] and a label (score > threshold). Attackers see
// victims only through QueryCounter, which records every score request.

#ifndef BODEGA_VICTIMS_H_
#define BODEGA_VICTIMS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bodega/corpus.h"
#include "bodega/errors.h"

namespace bodega {

struct Prediction {
  double score = 0.0;
  int label = 0;
};

class Victim {
 public:
  explicit Victim(double threshold = 0.5);
  virtual ~Victim() = default;

  // Deterministic; always within [0, 1].
  virtual double Score(std::string_view text) const = 0;
  virtual std::string_view kind() const = 0;
  // Writes the victim-v1 text format.
  virtual void Save(std::ostream& out) const = 0;

  // Ties at the threshold resolve to label 0.
  Prediction Predict(std::string_view text) const;
  int Label(double score) const { return score > threshold_ ? 1 : 0; }
  double threshold() const { return threshold_; }

 private:
  double threshold_;
};

// ---------------------------------------------------------------------------
// Hashed features

struct FeaturizerConfig {
  uint32_t dimension = 1u << 18;  // must be a power of two
  bool char_ngrams = true;
  int ngram_min = 3;
  int ngram_max = 5;
};

struct Feature {
  uint32_t index = 0;
  double value = 0.0;
};

// Case-folded word unigrams plus character n-grams of each word (padded with
// '<' and '>'), signed-hashed into `dimension` buckets. The output is sorted
// by index, merged, and L2-normalized; empty text gives no features.
class Featurizer {
 public:
  explicit Featurizer(FeaturizerConfig config = {});

  std::vector<Feature> Featurize(std::string_view text) const;

  // Bucket and sign of the unigram feature for a (case-folded) word.
  std::pair<uint32_t, double> WordSlot(std::string_view word) const;

  const FeaturizerConfig& config() const { return config_; }

 private:
  std::pair<uint32_t, double> Slot(char prefix, std::string_view key) const;

  FeaturizerConfig config_;
};

// ---------------------------------------------------------------------------
// Logistic regression over hashed features

class LinearVictim : public Victim {
 public:
  LinearVictim(FeaturizerConfig featurizer, std::vector<double> weights,
               double bias, double threshold = 0.5);

  // All-zero weights and bias: scores 0.5 everywhere.
  static LinearVictim Zero(FeaturizerConfig featurizer = {},
                           double threshold = 0.5);

  double Score(std::string_view text) const override;
  std::string_view kind() const override { return "linear"; }
  void Save(std::ostream& out) const override;

  // Raw decision value w.x + b.
  double Margin(std::string_view text) const;

  // Sets the weight so a lone occurrence of `word` contributes `value` to
  // the margin (before normalization).
  void SetWordWeight(std::string_view word, double value);
  void set_bias(double bias) { bias_ = bias; }

  const Featurizer& featurizer() const { return featurizer_; }
  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }

 private:
  Featurizer featurizer_;
  std::vector<double> weights_;
  double bias_;
};

struct LinearTrainConfig {
  FeaturizerConfig featurizer;
  int epochs = 10;
  double learning_rate = 0.5;
  double l2 = 1e-6;
  uint64_t seed = 1;
  double threshold = 0.5;
};

// Seeded SGD on the logistic loss. `epoch_losses`, when given, receives the
// mean training loss of each epoch. Throws ConfigError on an empty or
// single-class training set.
LinearVictim TrainLinear(const Split& train, const LinearTrainConfig& config,
                         std::vector<double>* epoch_losses = nullptr);

// ---------------------------------------------------------------------------
// Multinomial naive Bayes over case-folded word tokens

class NaiveBayesVictim : public Victim {
 public:
  struct TokenCounts {
    uint64_t count[2] = {0, 0};
  };

  // Probability floor for zero-count tokens when alpha is 0.
  static constexpr double kFloor = 1e-10;

  NaiveBayesVictim(double alpha, uint64_t documents0, uint64_t documents1,
                   std::unordered_map<std::string, TokenCounts> vocabulary,
                   double threshold = 0.5);

  double Score(std::string_view text) const override;
  std::string_view kind() const override { return "naive_bayes"; }
  void Save(std::ostream& out) const override;

  // Log P(class) + sum of log P(token | class).
  double LogJoint(std::string_view text, int label) const;

  double alpha() const { return alpha_; }

 private:
  double TokenLogLikelihood(const std::string& token, int label) const;

  double alpha_;
  uint64_t documents_[2];
  uint64_t totals_[2] = {0, 0};
  std::unordered_map<std::string, TokenCounts> vocabulary_;
};

struct NaiveBayesConfig {
  double alpha = 1.0;
  double threshold = 0.5;
};

NaiveBayesVictim TrainNaiveBayes(const Split& train,
                                 const NaiveBayesConfig& config);

// ---------------------------------------------------------------------------
// Batch evaluation

// Scores texts in parallel (OpenMP). threads <= 0 uses the OpenMP default.
std::vector<double> ScoreTexts(const Victim& victim,
                               std::span<const std::string> texts,
                               int threads = 0);
// Single-threaded reference for ScoreTexts.
std::vector<double> ScoreTextsSerial(const Victim& victim,
                                     std::span<const std::string> texts);

// F1 of the positive class; 0 when precision + recall is 0.
double F1Score(const Victim& victim, const Split& eval, int threads = 0);
double F1FromCounts(uint64_t true_positive, uint64_t false_positive,
                    uint64_t false_negative);

// ---------------------------------------------------------------------------
// Persistence (victim-v1)

std::unique_ptr<Victim> ParseVictim(std::istream& in,
                                    const std::string& source = "<stream>");
std::unique_ptr<Victim> LoadVictim(const std::filesystem::path& path);
void SaveVictim(const Victim& victim, const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Query accounting

class QueryBudgetExhausted : public Error {
 public:
  QueryBudgetExhausted() : Error("query budget exhausted") {}
};

// Per-instance wrapper: exactly one count per score request. When a budget is
// set, the request that would exceed it throws QueryBudgetExhausted without
// reaching the victim. Not thread-safe; use one counter per worker.
class QueryCounter {
 public:
  explicit QueryCounter(const Victim& victim,
                        std::optional<uint64_t> max_queries = std::nullopt)
      : victim_(&victim), max_queries_(max_queries) {}

  double Score(std::string_view text);
  Prediction Predict(std::string_view text);

  void Reset() { queries_ = 0; }
  uint64_t queries() const { return queries_; }
  std::optional<uint64_t> max_queries() const { return max_queries_; }
  const Victim& victim() const { return *victim_; }

 private:
  const Victim* victim_;
  std::optional<uint64_t> max_queries_;
  uint64_t queries_ = 0;
};

}  // namespace bodega

#endif  // BODEGA_VICTIMS_H_
