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

namespace bodega {

namespace {

using internal::Substitutions;

struct Member {
  Substitutions subs;
  double fitness = 0.0;
};

size_t BestIndex(const std::vector<Member>& population) {
  size_t best = 0;
  for (size_t i = 1; i < population.size(); ++i) {
    if (population[i].fitness > population[best].fitness) best = i;
  }
  return best;
}

// Fitness-proportional selection through a tempered softmax.
size_t SampleParent(const std::vector<double>& cumulative, Rng& rng) {
  const double target = rng.UniformReal() * cumulative.back();
  const auto it =
      std::upper_bound(cumulative.begin(), cumulative.end(), target);
  return std::min<size_t>(it - cumulative.begin(), cumulative.size() - 1);
}

Substitutions Crossover(const Substitutions& first, const Substitutions& second,
                        size_t cut) {
  Substitutions child;
  for (const auto& [position, word] : first) {
    if (position < cut) child.emplace(position, word);
  }
  for (const auto& [position, word] : second) {
    if (position >= cut) child.emplace(position, word);
  }
  return child;
}

}  // namespace

AttackOutcome AttackGenetic(QueryCounter& counter, const Document& document,
                            const EmbeddingTable& embeddings,
                            const AttackConfig& config, uint64_t seed) {
  return internal::WithinBudget(counter, [&]() {
    const Prediction original = counter.Predict(document.Render({}));
    internal::CandidateScorer scorer(counter, document,
                                     internal::GoalFor(counter, original));
    scorer.Remember({}, original.score);
    const internal::CandidateTable table =
        internal::BuildCandidateTable(document, embeddings, config);
    if (table.eligible.empty()) return internal::FailureOutcome(counter);

    Rng rng(seed);
    std::vector<double> trace;
    // Scores a member; true when it flips the victim.
    const auto evaluate = [&](Member& member) {
      const double score = scorer.Score(member.subs);
      member.fitness = scorer.goal().Fitness(score);
      return scorer.goal().IsSuccess(score);
    };
    const auto succeed = [&](const Member& member) {
      trace.push_back(trace.empty() ? member.fitness
                                    : std::max(trace.back(), member.fitness));
      return internal::SuccessOutcome(counter, document, member.subs,
                                      std::move(trace));
    };

    std::vector<Member> population(config.population);
    for (Member& member : population) {
      const auto [position, word] = internal::RandomSubstitution(table, rng);
      member.subs[position] = *word;
      if (evaluate(member)) return succeed(member);
    }
    trace.push_back(population[BestIndex(population)].fitness);

    std::vector<double> cumulative(population.size());
    for (int generation = 0; generation < config.generations; ++generation) {
      const Member& elite = population[BestIndex(population)];
      const double peak = elite.fitness;
      double total = 0.0;
      for (size_t i = 0; i < population.size(); ++i) {
        total += std::exp((population[i].fitness - peak) / config.temperature);
        cumulative[i] = total;
      }

      std::vector<Member> next;
      next.reserve(population.size());
      next.push_back(elite);
      while (next.size() < population.size()) {
        const Member& first = population[SampleParent(cumulative, rng)];
        const Member& second = population[SampleParent(cumulative, rng)];
        Member child;
        child.subs = Crossover(first.subs, second.subs,
                               rng.Uniform(document.num_words() + 1));
        if (rng.Bernoulli(config.mutation_prob)) {
          const auto [position, word] = internal::RandomSubstitution(table, rng);
          child.subs[position] = *word;
        }
        if (evaluate(child)) return succeed(child);
        next.push_back(std::move(child));
      }
      population = std::move(next);
      trace.push_back(population[BestIndex(population)].fitness);
    }
    return internal::FailureOutcome(counter, std::move(trace));
  });
}

}  // namespace bodega
