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
#include <optional>

#include "attack_internal.h"
#include "bodega/text.h"

namespace bodega {

namespace {

using internal::Substitutions;

struct Replacement {
  size_t index = 0;
  std::string synonym;
  double gain = 0.0;  // fitness movement of the best synonym
  double priority = 0.0;
};

// Softmax over saliencies, shifted by the maximum for stability.
std::vector<double> Softmax(const std::vector<double>& values) {
  std::vector<double> out(values.size());
  if (values.empty()) return out;
  const double peak = *std::max_element(values.begin(), values.end());
  double total = 0.0;
  for (size_t i = 0; i < values.size(); ++i) {
    out[i] = std::exp(values[i] - peak);
    total += out[i];
  }
  for (double& v : out) v /= total;
  return out;
}

}  // namespace

AttackOutcome AttackPwws(QueryCounter& counter, const Document& document,
                         const SynonymLexicon& lexicon,
                         const AttackConfig& /*config*/) {
  return internal::WithinBudget(counter, [&]() {
    const ImportanceRanking ranking = RankWordsByImportance(counter, document);
    internal::CandidateScorer scorer(
        counter, document, internal::GoalFor(counter, ranking.original));
    const double base_fitness = scorer.goal().Fitness(ranking.original.score);

    std::vector<double> saliency(document.num_words(), 0.0);
    for (const WordImportance& entry : ranking.ranked) {
      saliency[entry.index] = entry.importance;
    }
    const std::vector<double> weights = Softmax(saliency);

    std::vector<Replacement> replacements;
    for (size_t i = 0; i < document.num_words(); ++i) {
      const std::string_view word = document.word(i);
      const std::string folded = FoldCase(word);
      std::optional<Replacement> best;
      for (const std::string& synonym : lexicon.Synonyms(word)) {
        if (synonym == folded) continue;
        const std::string cased = TransferCase(word, synonym);
        const double gain = scorer.Fitness({{i, cased}}) - base_fitness;
        if (!best || gain > best->gain) best = Replacement{i, cased, gain, 0.0};
      }
      if (best) {
        best->priority = best->gain * weights[i];
        replacements.push_back(std::move(*best));
      }
    }
    std::stable_sort(replacements.begin(), replacements.end(),
                     [](const Replacement& a, const Replacement& b) {
                       return a.priority > b.priority;
                     });

    Substitutions current;
    for (const Replacement& replacement : replacements) {
      current[replacement.index] = replacement.synonym;
      if (scorer.goal().IsSuccess(scorer.Score(current))) {
        return internal::SuccessOutcome(counter, document, current);
      }
    }
    return internal::FailureOutcome(counter);
  });
}

}  // namespace bodega
