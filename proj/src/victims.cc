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

#include "bodega/victims.h"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "bodega/random.h"
#include "bodega/resources.h"

namespace bodega {

namespace {

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

std::string FormatDouble(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void CheckTrainable(const Split& train) {
  if (train.empty()) throw ConfigError("training split is empty");
  bool seen[2] = {false, false};
  for (const Instance& instance : train.instances) seen[instance.label] = true;
  if (!seen[0] || !seen[1]) throw ConfigError("degenerate training set");
}

// Line-oriented reader for the victim-v1 format.
class VictimReader {
 public:
  VictimReader(std::istream& in, const std::string& source)
      : in_(in), source_(source) {}

  std::vector<std::string> Fields(char separator = ' ') {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) break;
    }
    if (line.empty()) Fail("unexpected end of file");
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, separator)) fields.push_back(field);
    return fields;
  }

  // Reads `key value...` and returns the values.
  std::vector<std::string> Keyed(std::string_view key, size_t count) {
    auto fields = Fields();
    if (fields.size() != count + 1 || fields[0] != key) {
      Fail("expected '" + std::string(key) + "' with " +
           std::to_string(count) + " value(s)");
    }
    fields.erase(fields.begin());
    return fields;
  }

  double Double(const std::string& text) {
    double value = 0;
    const auto [end, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size()) {
      Fail("invalid number '" + text + "'");
    }
    return value;
  }

  uint64_t Unsigned(const std::string& text) {
    uint64_t value = 0;
    const auto [end, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size()) {
      Fail("invalid count '" + text + "'");
    }
    return value;
  }

  [[noreturn]] void Fail(const std::string& what) {
    throw ParseError(source_, line_no_, what);
  }

 private:
  std::istream& in_;
  const std::string& source_;
  size_t line_no_ = 0;
};

}  // namespace

Victim::Victim(double threshold) : threshold_(threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw ConfigError("victim threshold must lie in (0, 1)");
  }
}

Prediction Victim::Predict(std::string_view text) const {
  const double score = Score(text);
  return {score, Label(score)};
}

// ---------------------------------------------------------------------------

LinearVictim::LinearVictim(FeaturizerConfig featurizer,
                           std::vector<double> weights, double bias,
                           double threshold)
    : Victim(threshold),
      featurizer_(featurizer),
      weights_(std::move(weights)),
      bias_(bias) {
  if (weights_.size() != featurizer.dimension) {
    throw ConfigError("weight vector size does not match feature dimension");
  }
}

LinearVictim LinearVictim::Zero(FeaturizerConfig featurizer,
                                double threshold) {
  return LinearVictim(featurizer,
                      std::vector<double>(featurizer.dimension, 0.0), 0.0,
                      threshold);
}

double LinearVictim::Margin(std::string_view text) const {
  double z = bias_;
  for (const Feature& f : featurizer_.Featurize(text)) {
    z += weights_[f.index] * f.value;
  }
  return z;
}

double LinearVictim::Score(std::string_view text) const {
  return Sigmoid(Margin(text));
}

void LinearVictim::SetWordWeight(std::string_view word, double value) {
  const auto [index, sign] = featurizer_.WordSlot(word);
  weights_[index] = sign * value;
}

void LinearVictim::Save(std::ostream& out) const {
  const FeaturizerConfig& c = featurizer_.config();
  out << "victim-v1 linear\n";
  out << "threshold " << FormatDouble(threshold()) << '\n';
  out << "dimension " << c.dimension << '\n';
  out << "char_ngrams " << (c.char_ngrams ? 1 : 0) << '\n';
  out << "ngram_range " << c.ngram_min << ' ' << c.ngram_max << '\n';
  out << "bias " << FormatDouble(bias_) << '\n';
  const auto nonzero = static_cast<size_t>(std::count_if(
      weights_.begin(), weights_.end(), [](double w) { return w != 0.0; }));
  out << "weights " << nonzero << '\n';
  for (size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] != 0.0) out << i << ' ' << FormatDouble(weights_[i]) << '\n';
  }
}

LinearVictim TrainLinear(const Split& train, const LinearTrainConfig& config,
                         std::vector<double>* epoch_losses) {
  CheckTrainable(train);
  if (config.epochs < 1) throw ConfigError("epochs must be at least 1");
  if (!(config.learning_rate > 0)) {
    throw ConfigError("learning rate must be positive");
  }
  if (config.l2 < 0) throw ConfigError("l2 must be non-negative");

  const Featurizer featurizer(config.featurizer);
  std::vector<std::vector<Feature>> features(train.size());
  for (size_t i = 0; i < train.size(); ++i) {
    features[i] = featurizer.Featurize(ClassifierText(train.instances[i]));
  }

  // Effective weights are scale * v, so L2 decay is O(1) per step.
  std::vector<double> v(config.featurizer.dimension, 0.0);
  double scale = 1.0;
  double bias = 0.0;
  const double decay = 1.0 - config.learning_rate * config.l2;
  if (!(decay > 0)) throw ConfigError("learning_rate * l2 must be below 1");

  std::vector<size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(config.seed);
  if (epoch_losses) epoch_losses->clear();
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.Shuffle(order);
    double loss = 0.0;
    for (size_t i : order) {
      const auto& x = features[i];
      const int y = train.instances[i].label;
      double z = 0.0;
      for (const Feature& f : x) z += v[f.index] * f.value;
      z = z * scale + bias;
      const double p = Sigmoid(z);
      loss += y ? -std::log(std::max(p, 1e-300))
                : -std::log(std::max(1.0 - p, 1e-300));
      const double gradient = p - y;
      scale *= decay;
      const double step = config.learning_rate * gradient / scale;
      for (const Feature& f : x) v[f.index] -= step * f.value;
      bias -= config.learning_rate * gradient;
      if (scale < 1e-9) {
        for (double& w : v) w *= scale;
        scale = 1.0;
      }
    }
    if (epoch_losses) epoch_losses->push_back(loss / train.size());
  }
  for (double& w : v) w *= scale;
  return LinearVictim(config.featurizer, std::move(v), bias, config.threshold);
}

// ---------------------------------------------------------------------------

NaiveBayesVictim::NaiveBayesVictim(
    double alpha, uint64_t documents0, uint64_t documents1,
    std::unordered_map<std::string, TokenCounts> vocabulary, double threshold)
    : Victim(threshold),
      alpha_(alpha),
      documents_{documents0, documents1},
      vocabulary_(std::move(vocabulary)) {
  if (!(alpha >= 0) || !std::isfinite(alpha)) {
    throw ConfigError("alpha must be non-negative");
  }
  if (documents0 == 0 || documents1 == 0) {
    throw ConfigError("degenerate training set");
  }
  for (const auto& [token, counts] : vocabulary_) {
    totals_[0] += counts.count[0];
    totals_[1] += counts.count[1];
  }
}

double NaiveBayesVictim::TokenLogLikelihood(const std::string& token,
                                            int label) const {
  const auto it = vocabulary_.find(token);
  const double count = it == vocabulary_.end() ? 0.0 : it->second.count[label];
  const double denominator =
      static_cast<double>(totals_[label]) + alpha_ * vocabulary_.size();
  double p = denominator > 0 ? (count + alpha_) / denominator : 0.0;
  return std::log(std::max(p, kFloor));
}

double NaiveBayesVictim::LogJoint(std::string_view text, int label) const {
  const double n = static_cast<double>(documents_[0] + documents_[1]);
  double log_joint = std::log(documents_[label] / n);
  for (const std::string& token : WordTokens(text)) {
    log_joint += TokenLogLikelihood(token, label);
  }
  return log_joint;
}

double NaiveBayesVictim::Score(std::string_view text) const {
  // P(1 | x) = sigmoid(log P(1, x) - log P(0, x)).
  const std::vector<std::string> tokens = WordTokens(text);
  const double n = static_cast<double>(documents_[0] + documents_[1]);
  double difference = std::log(documents_[1] / n) - std::log(documents_[0] / n);
  for (const std::string& token : tokens) {
    difference += TokenLogLikelihood(token, 1) - TokenLogLikelihood(token, 0);
  }
  return Sigmoid(difference);
}

void NaiveBayesVictim::Save(std::ostream& out) const {
  out << "victim-v1 naive_bayes\n";
  out << "threshold " << FormatDouble(threshold()) << '\n';
  out << "alpha " << FormatDouble(alpha_) << '\n';
  out << "documents " << documents_[0] << ' ' << documents_[1] << '\n';
  out << "vocabulary " << vocabulary_.size() << '\n';
  const std::map<std::string, TokenCounts> sorted(vocabulary_.begin(),
                                                  vocabulary_.end());
  for (const auto& [token, counts] : sorted) {
    out << EscapeField(token) << '\t' << counts.count[0] << '\t'
        << counts.count[1] << '\n';
  }
}

NaiveBayesVictim TrainNaiveBayes(const Split& train,
                                 const NaiveBayesConfig& config) {
  CheckTrainable(train);
  std::unordered_map<std::string, NaiveBayesVictim::TokenCounts> vocabulary;
  uint64_t documents[2] = {0, 0};
  for (const Instance& instance : train.instances) {
    ++documents[instance.label];
    for (const std::string& token : WordTokens(ClassifierText(instance))) {
      ++vocabulary[token].count[instance.label];
    }
  }
  return NaiveBayesVictim(config.alpha, documents[0], documents[1],
                          std::move(vocabulary), config.threshold);
}

// ---------------------------------------------------------------------------

std::vector<double> ScoreTexts(const Victim& victim,
                               std::span<const std::string> texts,
                               int threads) {
  std::vector<double> scores(texts.size());
  const auto n = static_cast<int64_t>(texts.size());
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(team)
  for (int64_t i = 0; i < n; ++i) scores[i] = victim.Score(texts[i]);
  return scores;
}

std::vector<double> ScoreTextsSerial(const Victim& victim,
                                     std::span<const std::string> texts) {
  std::vector<double> scores;
  scores.reserve(texts.size());
  for (const std::string& text : texts) scores.push_back(victim.Score(text));
  return scores;
}

double F1FromCounts(uint64_t true_positive, uint64_t false_positive,
                    uint64_t false_negative) {
  const double predicted = static_cast<double>(true_positive + false_positive);
  const double actual = static_cast<double>(true_positive + false_negative);
  const double precision = predicted > 0 ? true_positive / predicted : 0.0;
  const double recall = actual > 0 ? true_positive / actual : 0.0;
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

double F1Score(const Victim& victim, const Split& eval, int threads) {
  std::vector<std::string> texts;
  texts.reserve(eval.size());
  for (const Instance& instance : eval.instances) {
    texts.push_back(ClassifierText(instance));
  }
  const std::vector<double> scores = ScoreTexts(victim, texts, threads);
  uint64_t tp = 0, fp = 0, fn = 0;
  for (size_t i = 0; i < scores.size(); ++i) {
    const int predicted = victim.Label(scores[i]);
    const int actual = eval.instances[i].label;
    tp += predicted == 1 && actual == 1;
    fp += predicted == 1 && actual == 0;
    fn += predicted == 0 && actual == 1;
  }
  return F1FromCounts(tp, fp, fn);
}

// ---------------------------------------------------------------------------

std::unique_ptr<Victim> ParseVictim(std::istream& in,
                                    const std::string& source) {
  VictimReader reader(in, source);
  const auto header = reader.Fields();
  if (header.size() != 2 || header[0] != "victim-v1") {
    reader.Fail("not a victim-v1 file");
  }
  const double threshold = reader.Double(reader.Keyed("threshold", 1)[0]);
  if (header[1] == "linear") {
    FeaturizerConfig config;
    config.dimension =
        static_cast<uint32_t>(reader.Unsigned(reader.Keyed("dimension", 1)[0]));
    config.char_ngrams = reader.Unsigned(reader.Keyed("char_ngrams", 1)[0]) != 0;
    const auto range = reader.Keyed("ngram_range", 2);
    config.ngram_min = static_cast<int>(reader.Unsigned(range[0]));
    config.ngram_max = static_cast<int>(reader.Unsigned(range[1]));
    const double bias = reader.Double(reader.Keyed("bias", 1)[0]);
    const uint64_t count = reader.Unsigned(reader.Keyed("weights", 1)[0]);
    std::vector<double> weights(config.dimension, 0.0);
    for (uint64_t i = 0; i < count; ++i) {
      const auto fields = reader.Fields();
      if (fields.size() != 2) reader.Fail("expected 'index weight'");
      const uint64_t index = reader.Unsigned(fields[0]);
      if (index >= weights.size()) reader.Fail("weight index out of range");
      weights[index] = reader.Double(fields[1]);
    }
    return std::make_unique<LinearVictim>(config, std::move(weights), bias,
                                          threshold);
  }
  if (header[1] == "naive_bayes") {
    const double alpha = reader.Double(reader.Keyed("alpha", 1)[0]);
    const auto documents = reader.Keyed("documents", 2);
    const uint64_t size = reader.Unsigned(reader.Keyed("vocabulary", 1)[0]);
    std::unordered_map<std::string, NaiveBayesVictim::TokenCounts> vocabulary;
    for (uint64_t i = 0; i < size; ++i) {
      const auto fields = reader.Fields('\t');
      if (fields.size() != 3) reader.Fail("expected 'token<TAB>n0<TAB>n1'");
      auto& counts = vocabulary[UnescapeField(fields[0])];
      counts.count[0] = reader.Unsigned(fields[1]);
      counts.count[1] = reader.Unsigned(fields[2]);
    }
    return std::make_unique<NaiveBayesVictim>(
        alpha, reader.Unsigned(documents[0]), reader.Unsigned(documents[1]),
        std::move(vocabulary), threshold);
  }
  reader.Fail("unknown victim kind '" + header[1] + "'");
}

std::unique_ptr<Victim> LoadVictim(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open victim file " + path.string());
  return ParseVictim(in, path.string());
}

void SaveVictim(const Victim& victim, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write victim file " + path.string());
  victim.Save(out);
  if (!out) throw Error("write failed for " + path.string());
}

// ---------------------------------------------------------------------------

double QueryCounter::Score(std::string_view text) {
  if (max_queries_ && queries_ >= *max_queries_) throw QueryBudgetExhausted();
  ++queries_;
  return victim_->Score(text);
}

Prediction QueryCounter::Predict(std::string_view text) {
  const double score = Score(text);
  return {score, victim_->Label(score)};
}

}  // namespace bodega
