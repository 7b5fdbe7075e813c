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

// Black-box attacks: the modifier that turns an instance into an adversarial
// example using nothing but victim scores.
//
// Every attack talks to the victim through a QueryCounter, so the reported
// query count is the number of victim calls the attack made. Candidate texts
// are built by splicing replacements into the original byte ranges of the
// words; spacing and punctuation of the source are never rewritten.

#ifndef BODEGA_ATTACKS_H_
#define BODEGA_ATTACKS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bodega/corpus.h"
#include "bodega/resources.h"
#include "bodega/victims.h"

namespace bodega {

struct AttackConfig {
  // Unset means unlimited.
  std::optional<uint64_t> max_queries;

  // DeepWordBug: fraction of words that may be edited (at least one).
  double edit_budget = 0.3;

  // Embedding candidates (TextFooler, Genetic, PSO).
  int neighbors = 50;
  double min_cosine = 0.5;

  // Genetic.
  int population = 20;
  int generations = 10;
  double mutation_prob = 0.3;
  double temperature = 0.3;  // parent-selection softmax

  // PSO.
  int swarm = 20;
  int iterations = 10;
  double omega_max = 0.8;
  double omega_min = 0.4;
  double c1 = 0.5;
  double c2 = 0.5;
  double pso_mutation_prob = 0.3;

  // Applies one `key=value` override; throws ConfigError on unknown keys or
  // unparsable values.
  void Set(std::string_view key, std::string_view value);
  // Throws ConfigError when a value is out of range.
  void Validate() const;
};

struct AttackOutcome {
  // Present only when the attack succeeded.
  std::optional<std::string> adversarial_text;
  std::optional<std::string> adversarial_part2;
  uint64_t queries = 0;
  bool succeeded = false;
  // Best-so-far fitness after initialization and after each generation or
  // iteration (Genetic and PSO only).
  std::vector<double> best_fitness;
};

// Success is any label change relative to the victim's original decision.
struct AttackGoal {
  int original_label = 0;
  double threshold = 0.5;

  bool IsSuccess(double score) const {
    return (score > threshold ? 1 : 0) != original_label;
  }
  // Larger is closer to a flip.
  double Fitness(double score) const {
    return original_label == 1 ? 1.0 - score : score;
  }
};

// Word-level view of an instance's text segments (one, or two for pair
// tasks).
class Document {
 public:
  // Word index -> replacement text.
  using Substitutions = std::map<size_t, std::string>;

  explicit Document(std::vector<std::string> segments);
  static Document FromInstance(const Instance& instance);

  size_t num_words() const { return words_.size(); }
  std::string_view word(size_t index) const;
  const std::vector<std::string>& segments() const { return segments_; }

  std::vector<std::string> RenderSegments(const Substitutions& subs) const;
  // Classifier input: segments joined with the pair separator.
  std::string Render(const Substitutions& subs) const;
  std::string RenderWithout(size_t word_index) const;

 private:
  struct WordRef {
    size_t segment;
    size_t start;
    size_t end;
  };

  std::vector<std::string> segments_;
  std::vector<WordRef> words_;
};

struct WordImportance {
  size_t index = 0;
  double importance = 0.0;
};

struct ImportanceRanking {
  Prediction original;
  // Descending importance, ties by ascending position.
  std::vector<WordImportance> ranked;
};

// Deletion probing: importance_i = s(x) - s(x without word i), negated when
// the original label is 0. Issues exactly 1 + num_words queries.
ImportanceRanking RankWordsByImportance(QueryCounter& counter,
                                        const Document& document);

// Embedding neighbors of `word` that pass the shape-agreement filter,
// re-cased to the original's capitalization pattern.
std::vector<std::string> EmbeddingCandidates(const EmbeddingTable& table,
                                             std::string_view word,
                                             const AttackConfig& config);

// Part-of-speech stand-in: suffix class (-ing / -ed / -s / none) and the
// presence of digits must agree.
bool ShapeAgrees(std::string_view original, std::string_view candidate);

// Applies the capitalization pattern of `model` (lower, Title, UPPER) to
// `word`; mixed-case models leave `word` unchanged.
std::string TransferCase(std::string_view model, std::string_view word);

AttackOutcome AttackDeepWordBug(QueryCounter& counter,
                                const Document& document,
                                const AttackConfig& config, uint64_t seed);
AttackOutcome AttackPwws(QueryCounter& counter, const Document& document,
                         const SynonymLexicon& lexicon,
                         const AttackConfig& config);
AttackOutcome AttackTextFooler(QueryCounter& counter, const Document& document,
                               const EmbeddingTable& embeddings,
                               const AttackConfig& config);
AttackOutcome AttackGenetic(QueryCounter& counter, const Document& document,
                            const EmbeddingTable& embeddings,
                            const AttackConfig& config, uint64_t seed);
AttackOutcome AttackPso(QueryCounter& counter, const Document& document,
                        const EmbeddingTable& embeddings,
                        const AttackConfig& config, uint64_t seed);

enum class AttackerKind { kDeepWordBug, kPwws, kTextFooler, kGenetic, kPso };

// deepwordbug | pwws | textfooler | genetic | pso
std::optional<AttackerKind> ParseAttackerKind(std::string_view name);
std::string_view AttackerName(AttackerKind kind);

struct AttackResources {
  const EmbeddingTable* embeddings = nullptr;
  const SynonymLexicon* synonyms = nullptr;
};

// Binds an algorithm to its configuration and resources. Construction fails
// with ConfigError when a required resource is missing, before any query.
class Attacker {
 public:
  Attacker(AttackerKind kind, AttackConfig config, AttackResources resources);

  AttackOutcome Attack(QueryCounter& counter, const Instance& instance,
                       uint64_t seed) const;

  AttackerKind kind() const { return kind_; }
  std::string_view name() const { return AttackerName(kind_); }
  const AttackConfig& config() const { return config_; }

 private:
  AttackerKind kind_;
  AttackConfig config_;
  AttackResources resources_;
};

}  // namespace bodega

#endif  // BODEGA_ATTACKS_H_
