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

// Helpers shared by the attack implementations. Not installed.

#ifndef BODEGA_SRC_ATTACK_INTERNAL_H_
#define BODEGA_SRC_ATTACK_INTERNAL_H_

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bodega/attacks.h"

namespace bodega::internal {

using Substitutions = Document::Substitutions;

// Scores substitution sets through the counter, memoizing by rendered text so
// a repeated candidate costs no extra query.
class CandidateScorer {
 public:
  CandidateScorer(QueryCounter& counter, const Document& document,
                  AttackGoal goal)
      : counter_(counter), document_(document), goal_(goal) {}

  double Score(const Substitutions& subs) {
    std::string text = document_.Render(subs);
    if (const auto it = cache_.find(text); it != cache_.end()) {
      return it->second;
    }
    const double score = counter_.Score(text);
    cache_.emplace(std::move(text), score);
    return score;
  }

  // Records a score obtained elsewhere (e.g. the original prediction).
  void Remember(const Substitutions& subs, double score) {
    cache_.emplace(document_.Render(subs), score);
  }

  double Fitness(const Substitutions& subs) {
    return goal_.Fitness(Score(subs));
  }

  const AttackGoal& goal() const { return goal_; }

 private:
  QueryCounter& counter_;
  const Document& document_;
  AttackGoal goal_;
  std::unordered_map<std::string, double> cache_;
};

inline AttackGoal GoalFor(const QueryCounter& counter,
                          const Prediction& original) {
  return {original.label, counter.victim().threshold()};
}

AttackOutcome SuccessOutcome(const QueryCounter& counter,
                             const Document& document,
                             const Substitutions& subs,
                             std::vector<double> trace = {});
AttackOutcome FailureOutcome(const QueryCounter& counter,
                             std::vector<double> trace = {});

// Runs `body`; a QueryBudgetExhausted escaping it becomes a failed outcome.
template <typename Body>
AttackOutcome WithinBudget(const QueryCounter& counter, Body&& body) {
  try {
    return body();
  } catch (const QueryBudgetExhausted&) {
    return FailureOutcome(counter);
  }
}

// Per-word embedding candidates; positions without candidates are left out
// of `eligible`.
struct CandidateTable {
  std::vector<std::vector<std::string>> candidates;
  std::vector<size_t> eligible;
};

// Uniformly random eligible position and candidate; `table.eligible` must be
// non-empty.
template <typename Rng>
std::pair<size_t, const std::string*> RandomSubstitution(
    const CandidateTable& table, Rng& rng) {
  const size_t position = table.eligible[rng.Uniform(table.eligible.size())];
  const auto& options = table.candidates[position];
  return {position, &options[rng.Uniform(options.size())]};
}

CandidateTable BuildCandidateTable(const Document& document,
                                   const EmbeddingTable& embeddings,
                                   const AttackConfig& config);

}  // namespace bodega::internal

#endif  // BODEGA_SRC_ATTACK_INTERNAL_H_
