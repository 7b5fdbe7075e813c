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
#include <cmath>

#include "attack_internal.h"
#include "bodega/random.h"
#include "bodega/text.h"

namespace bodega {

namespace {

using internal::Substitutions;

char32_t RandomLetter(Rng& rng) {
  return U'a' + static_cast<char32_t>(rng.Uniform(26));
}

// One candidate per edit type: substitute, delete, insert, swap adjacent.
// Edits that are impossible for the word (or would leave it unchanged) are
// skipped.
std::vector<std::string> CharacterEdits(std::string_view word, Rng& rng) {
  const std::u32string cps = DecodeUtf8(word);
  std::vector<std::string> edits;
  const size_t n = cps.size();

  if (n >= 1) {
    std::u32string edited = cps;
    const size_t pos = rng.Uniform(n);
    char32_t replacement = RandomLetter(rng);
    if (replacement == FoldCase(cps[pos])) {
      replacement = U'a' + (replacement - U'a' + 1) % 26;
    }
    edited[pos] = replacement;
    edits.push_back(EncodeUtf8(edited));
  }
  if (n >= 2) {
    std::u32string edited = cps;
    edited.erase(rng.Uniform(n), 1);
    edits.push_back(EncodeUtf8(edited));
  }
  {
    std::u32string edited = cps;
    const size_t pos = rng.Uniform(n + 1);
    edited.insert(edited.begin() + pos, RandomLetter(rng));
    edits.push_back(EncodeUtf8(edited));
  }
  if (n >= 2) {
    std::u32string edited = cps;
    const size_t pos = rng.Uniform(n - 1);
    if (edited[pos] != edited[pos + 1]) {
      std::swap(edited[pos], edited[pos + 1]);
      edits.push_back(EncodeUtf8(edited));
    }
  }
  return edits;
}

}  // namespace

AttackOutcome AttackDeepWordBug(QueryCounter& counter,
                                const Document& document,
                                const AttackConfig& config, uint64_t seed) {
  return internal::WithinBudget(counter, [&]() {
    const ImportanceRanking ranking = RankWordsByImportance(counter, document);
    if (document.num_words() == 0) return internal::FailureOutcome(counter);

    internal::CandidateScorer scorer(
        counter, document, internal::GoalFor(counter, ranking.original));
    const auto budget = std::max<size_t>(
        1, static_cast<size_t>(
               std::ceil(config.edit_budget * document.num_words() - 1e-9)));
    Rng rng(seed);
    Substitutions current;
    double current_fitness = scorer.goal().Fitness(ranking.original.score);
    size_t edited = 0;
    for (const WordImportance& entry : ranking.ranked) {
      if (edited == budget) break;
      const std::string_view word = document.word(entry.index);
      std::optional<std::string> best;
      double best_fitness = current_fitness;
      for (std::string& candidate : CharacterEdits(word, rng)) {
        if (candidate == word) continue;
        Substitutions trial = current;
        trial[entry.index] = candidate;
        const double score = scorer.Score(trial);
        if (scorer.goal().IsSuccess(score)) {
          return internal::SuccessOutcome(counter, document, trial);
        }
        const double fitness = scorer.goal().Fitness(score);
        if (fitness > best_fitness) {
          best_fitness = fitness;
          best = std::move(candidate);
        }
      }
      if (best) {
        current[entry.index] = std::move(*best);
        current_fitness = best_fitness;
        ++edited;
      }
    }
    return internal::FailureOutcome(counter);
  });
}

}  // namespace bodega
