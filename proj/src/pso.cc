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

// Per word: -1 keeps the original, otherwise an index into its candidates.
using Position = std::vector<int>;

struct Particle {
  Position position;
  std::vector<double> velocity;
  Position best;
  double best_fitness = 0.0;
};

Substitutions ToSubstitutions(const Position& position,
                              const internal::CandidateTable& table) {
  Substitutions subs;
  for (size_t i = 0; i < position.size(); ++i) {
    if (position[i] >= 0) subs.emplace(i, table.candidates[i][position[i]]);
  }
  return subs;
}

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void MoveToward(Particle& particle, const Position& target,
                const std::vector<size_t>& eligible, Rng& rng) {
  for (size_t d : eligible) {
    if (particle.position[d] != target[d] &&
        rng.Bernoulli(Sigmoid(particle.velocity[d]))) {
      particle.position[d] = target[d];
    }
  }
}

}  // namespace

AttackOutcome AttackPso(QueryCounter& counter, const Document& document,
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
    const size_t n = document.num_words();
    std::vector<double> trace;
    Position global_best;
    double global_best_fitness = -1.0;

    // Scores the particle's current position and updates both bests; true
    // when the position flips the victim.
    const auto evaluate = [&](Particle& particle, double& fitness) {
      const double score =
          scorer.Score(ToSubstitutions(particle.position, table));
      fitness = scorer.goal().Fitness(score);
      if (fitness > particle.best_fitness || particle.best.empty()) {
        particle.best = particle.position;
        particle.best_fitness = fitness;
      }
      if (fitness > global_best_fitness) {
        global_best = particle.position;
        global_best_fitness = fitness;
      }
      return scorer.goal().IsSuccess(score);
    };
    const auto succeed = [&](const Particle& particle) {
      trace.push_back(global_best_fitness);
      return internal::SuccessOutcome(
          counter, document, ToSubstitutions(particle.position, table),
          std::move(trace));
    };

    std::vector<Particle> swarm(config.swarm);
    for (Particle& particle : swarm) {
      particle.position.assign(n, -1);
      particle.velocity.assign(n, 0.0);
      const size_t d = table.eligible[rng.Uniform(table.eligible.size())];
      particle.position[d] =
          static_cast<int>(rng.Uniform(table.candidates[d].size()));
      double fitness = 0.0;
      if (evaluate(particle, fitness)) return succeed(particle);
    }
    trace.push_back(global_best_fitness);

    for (int t = 0; t < config.iterations; ++t) {
      const double progress =
          config.iterations > 1
              ? static_cast<double>(t) / (config.iterations - 1)
              : 0.0;
      const double omega =
          config.omega_max - (config.omega_max - config.omega_min) * progress;
      for (Particle& particle : swarm) {
        for (size_t d : table.eligible) {
          const double toward_personal =
              particle.position[d] == particle.best[d] ? 1.0 : -1.0;
          const double toward_global =
              particle.position[d] == global_best[d] ? 1.0 : -1.0;
          particle.velocity[d] = omega * particle.velocity[d] +
                                 (1.0 - omega) *
                                     (toward_personal + toward_global);
        }
        if (rng.Bernoulli(config.c1)) {
          MoveToward(particle, particle.best, table.eligible, rng);
        }
        if (rng.Bernoulli(config.c2)) {
          MoveToward(particle, global_best, table.eligible, rng);
        }
        if (rng.Bernoulli(config.pso_mutation_prob)) {
          const size_t d = table.eligible[rng.Uniform(table.eligible.size())];
          particle.position[d] =
              static_cast<int>(rng.Uniform(table.candidates[d].size()));
        }
        double fitness = 0.0;
        if (evaluate(particle, fitness)) return succeed(particle);
      }
      trace.push_back(global_best_fitness);
    }
    return internal::FailureOutcome(counter, std::move(trace));
  });
}

}  // namespace bodega
