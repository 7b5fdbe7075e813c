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

#include <optional>

#include "attack_internal.h"

namespace bodega {

AttackOutcome AttackTextFooler(QueryCounter& counter, const Document& document,
                               const EmbeddingTable& embeddings,
                               const AttackConfig& config) {
  return internal::WithinBudget(counter, [&]() {
    const ImportanceRanking ranking = RankWordsByImportance(counter, document);
    internal::CandidateScorer scorer(
        counter, document, internal::GoalFor(counter, ranking.original));
    const internal::CandidateTable table =
        internal::BuildCandidateTable(document, embeddings, config);

    internal::Substitutions current;
    double current_fitness = scorer.goal().Fitness(ranking.original.score);
    for (const WordImportance& entry : ranking.ranked) {
      const auto& candidates = table.candidates[entry.index];
      std::optional<std::string> best;
      double best_fitness = current_fitness;
      // Candidates arrive in descending cosine order, so the first flip is
      // also the closest one.
      for (const std::string& candidate : candidates) {
        internal::Substitutions trial = current;
        trial[entry.index] = candidate;
        const double score = scorer.Score(trial);
        if (scorer.goal().IsSuccess(score)) {
          return internal::SuccessOutcome(counter, document, trial);
        }
        const double fitness = scorer.goal().Fitness(score);
        if (fitness > best_fitness) {
          best_fitness = fitness;
          best = candidate;
        }
      }
      if (best) {
        current[entry.index] = std::move(*best);
        current_fitness = best_fitness;
      }
    }
    return internal::FailureOutcome(counter);
  });
}

}  // namespace bodega
