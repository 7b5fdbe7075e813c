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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <unordered_map>

#include "attack_internal.h"
#include "bodega/errors.h"
#include "bodega/text.h"

namespace bodega {

namespace {

template <typename T>
T ParseNumber(std::string_view key, std::string_view value) {
  T parsed{};
  const auto [end, ec] =
      std::from_chars(value.data(), value.data() + value.size(), parsed);
  if (ec != std::errc() || end != value.data() + value.size()) {
    throw ConfigError("invalid value '" + std::string(value) + "' for " +
                      std::string(key));
  }
  return parsed;
}

void RequireProbability(std::string_view name, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ConfigError(std::string(name) + " must lie in [0, 1]");
  }
}

void RequireAtLeast(std::string_view name, int value, int min) {
  if (value < min) {
    throw ConfigError(std::string(name) + " must be at least " +
                      std::to_string(min));
  }
}

enum class CasePattern { kLower, kTitle, kUpper, kMixed };

CasePattern PatternOf(std::string_view word) {
  const std::u32string cps = DecodeUtf8(word);
  size_t upper = 0, lower = 0;
  for (char32_t c : cps) {
    upper += IsUpper(c);
    lower += IsLower(c);
  }
  if (upper == 0) return CasePattern::kLower;
  if (lower == 0) return upper > 1 ? CasePattern::kUpper : CasePattern::kTitle;
  if (upper == 1 && !cps.empty() && IsUpper(cps[0])) return CasePattern::kTitle;
  return CasePattern::kMixed;
}

char32_t ToUpper(char32_t c) {
  if (!IsLower(c)) return c;
  for (char32_t candidate : {c - 32, c - 1, c - 80}) {
    if (IsUpper(candidate) && FoldCase(candidate) == c) return candidate;
  }
  return c;
}

std::string_view SuffixClass(std::string_view folded) {
  if (folded.ends_with("ing")) return "ing";
  if (folded.ends_with("ed")) return "ed";
  if (folded.ends_with("s")) return "s";
  return "";
}

bool HasDigit(std::string_view word) {
  return std::any_of(word.begin(), word.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

void AttackConfig::Set(std::string_view key, std::string_view value) {
  if (key == "max_queries") {
    if (value == "none" || value == "unlimited") {
      max_queries.reset();
    } else {
      max_queries = ParseNumber<uint64_t>(key, value);
    }
  } else if (key == "edit_budget") {
    edit_budget = ParseNumber<double>(key, value);
  } else if (key == "k" || key == "neighbors") {
    neighbors = ParseNumber<int>(key, value);
  } else if (key == "min_cosine") {
    min_cosine = ParseNumber<double>(key, value);
  } else if (key == "population") {
    population = ParseNumber<int>(key, value);
  } else if (key == "generations") {
    generations = ParseNumber<int>(key, value);
  } else if (key == "mutation_prob") {
    mutation_prob = ParseNumber<double>(key, value);
  } else if (key == "temperature") {
    temperature = ParseNumber<double>(key, value);
  } else if (key == "swarm") {
    swarm = ParseNumber<int>(key, value);
  } else if (key == "iterations") {
    iterations = ParseNumber<int>(key, value);
  } else if (key == "omega_max") {
    omega_max = ParseNumber<double>(key, value);
  } else if (key == "omega_min") {
    omega_min = ParseNumber<double>(key, value);
  } else if (key == "c1") {
    c1 = ParseNumber<double>(key, value);
  } else if (key == "c2") {
    c2 = ParseNumber<double>(key, value);
  } else if (key == "pso_mutation_prob") {
    pso_mutation_prob = ParseNumber<double>(key, value);
  } else {
    throw ConfigError("unknown attack setting '" + std::string(key) + "'");
  }
}

void AttackConfig::Validate() const {
  if (!(edit_budget > 0.0 && edit_budget <= 1.0)) {
    throw ConfigError("edit_budget must lie in (0, 1]");
  }
  RequireAtLeast("k", neighbors, 1);
  if (!(min_cosine >= -1.0 && min_cosine <= 1.0)) {
    throw ConfigError("min_cosine must lie in [-1, 1]");
  }
  RequireAtLeast("population", population, 1);
  RequireAtLeast("generations", generations, 0);
  RequireProbability("mutation_prob", mutation_prob);
  if (!(temperature > 0.0)) throw ConfigError("temperature must be positive");
  RequireAtLeast("swarm", swarm, 1);
  RequireAtLeast("iterations", iterations, 0);
  RequireProbability("omega_max", omega_max);
  RequireProbability("omega_min", omega_min);
  if (omega_min > omega_max) {
    throw ConfigError("omega_min must not exceed omega_max");
  }
  RequireProbability("c1", c1);
  RequireProbability("c2", c2);
  RequireProbability("pso_mutation_prob", pso_mutation_prob);
}

ImportanceRanking RankWordsByImportance(QueryCounter& counter,
                                        const Document& document) {
  ImportanceRanking result;
  result.original = counter.Predict(document.Render({}));
  const double sign = result.original.label == 1 ? 1.0 : -1.0;
  result.ranked.reserve(document.num_words());
  for (size_t i = 0; i < document.num_words(); ++i) {
    const double without = counter.Score(document.RenderWithout(i));
    result.ranked.push_back({i, sign * (result.original.score - without)});
  }
  std::stable_sort(result.ranked.begin(), result.ranked.end(),
                   [](const WordImportance& a, const WordImportance& b) {
                     return a.importance > b.importance;
                   });
  return result;
}

std::string TransferCase(std::string_view model, std::string_view word) {
  std::u32string cps = DecodeUtf8(word);
  switch (PatternOf(model)) {
    case CasePattern::kLower:
      for (char32_t& c : cps) c = FoldCase(c);
      break;
    case CasePattern::kTitle:
      for (char32_t& c : cps) c = FoldCase(c);
      if (!cps.empty()) cps[0] = ToUpper(cps[0]);
      break;
    case CasePattern::kUpper:
      for (char32_t& c : cps) c = ToUpper(c);
      break;
    case CasePattern::kMixed:
      break;
  }
  return EncodeUtf8(cps);
}

bool ShapeAgrees(std::string_view original, std::string_view candidate) {
  const std::string a = FoldCase(original);
  const std::string b = FoldCase(candidate);
  return SuffixClass(a) == SuffixClass(b) && HasDigit(a) == HasDigit(b);
}

std::vector<std::string> EmbeddingCandidates(const EmbeddingTable& table,
                                             std::string_view word,
                                             const AttackConfig& config) {
  std::vector<std::string> out;
  const std::string folded = FoldCase(word);
  for (const Neighbor& neighbor :
       NearestNeighbors(table, word, config.neighbors, config.min_cosine)) {
    if (neighbor.word == folded || !ShapeAgrees(word, neighbor.word)) continue;
    // Neighbors with no word characters would merge into punctuation.
    const auto spans = Tokenize(neighbor.word);
    if (spans.size() != 1 || spans[0].kind != TokenKind::kWord) continue;
    out.push_back(TransferCase(word, neighbor.word));
  }
  return out;
}

namespace internal {

AttackOutcome SuccessOutcome(const QueryCounter& counter,
                             const Document& document,
                             const Substitutions& subs,
                             std::vector<double> trace) {
  AttackOutcome outcome;
  std::vector<std::string> segments = document.RenderSegments(subs);
  outcome.adversarial_text = std::move(segments[0]);
  if (segments.size() > 1) outcome.adversarial_part2 = std::move(segments[1]);
  outcome.queries = counter.queries();
  outcome.succeeded = true;
  outcome.best_fitness = std::move(trace);
  return outcome;
}

AttackOutcome FailureOutcome(const QueryCounter& counter,
                             std::vector<double> trace) {
  AttackOutcome outcome;
  outcome.queries = counter.queries();
  outcome.best_fitness = std::move(trace);
  return outcome;
}

CandidateTable BuildCandidateTable(const Document& document,
                                   const EmbeddingTable& embeddings,
                                   const AttackConfig& config) {
  CandidateTable table;
  table.candidates.resize(document.num_words());
  std::unordered_map<std::string, std::vector<std::string>> by_word;
  for (size_t i = 0; i < document.num_words(); ++i) {
    const std::string_view word = document.word(i);
    const std::string key(word);
    auto it = by_word.find(key);
    if (it == by_word.end()) {
      it = by_word.emplace(key, EmbeddingCandidates(embeddings, word, config))
               .first;
    }
    table.candidates[i] = it->second;
    if (!it->second.empty()) table.eligible.push_back(i);
  }
  return table;
}

}  // namespace internal

std::optional<AttackerKind> ParseAttackerKind(std::string_view name) {
  const std::string folded = FoldCase(name);
  if (folded == "deepwordbug") return AttackerKind::kDeepWordBug;
  if (folded == "pwws") return AttackerKind::kPwws;
  if (folded == "textfooler") return AttackerKind::kTextFooler;
  if (folded == "genetic") return AttackerKind::kGenetic;
  if (folded == "pso" || folded == "sememepso") return AttackerKind::kPso;
  return std::nullopt;
}

std::string_view AttackerName(AttackerKind kind) {
  switch (kind) {
    case AttackerKind::kDeepWordBug:
      return "deepwordbug";
    case AttackerKind::kPwws:
      return "pwws";
    case AttackerKind::kTextFooler:
      return "textfooler";
    case AttackerKind::kGenetic:
      return "genetic";
    case AttackerKind::kPso:
      return "pso";
  }
  return "unknown";
}

}  // namespace bodega
