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


// Shared test fixtures: the synthetic keyword corpus with its resources, the
// joint-substitution trap, and an instrumented victim.

#ifndef BODEGA_TESTS_SUPPORT_FIXTURES_H_
#define BODEGA_TESTS_SUPPORT_FIXTURES_H_

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "bodega/corpus.h"
#include "bodega/resources.h"
#include "bodega/victims.h"

namespace bodega::testing {

using EmbeddingRows = std::vector<std::pair<std::string, std::vector<double>>>;

// Five keywords decide the label: a text is positive iff it contains one.
// Every keyword has a neutral counterpart that is its only embedding
// neighbour and synonym (in both directions), so either class can be flipped
// by one substitution.
inline const std::vector<std::pair<std::string, std::string>>&
KeywordPairs() {
  static const auto* pairs = new std::vector<std::pair<std::string, std::string>>{
      {"lie", "fact"},
      {"fib", "note"},
      {"hoax", "memo"},
      {"sham", "plan"},
      {"fake", "real"},
  };
  return *pairs;
}

struct SyntheticCorpus {
  Split train;
  Split attack;
};

// Two-sentence texts over a fixed vocabulary. Positives carry exactly one
// keyword (three in five instances); negatives carry one or two counterparts.
SyntheticCorpus MakeSeparableCorpus(size_t n_train, size_t n_attack,
                                    uint64_t seed);

// Each keyword/counterpart pair shares a concept axis (cosine about 0.92);
// all other word pairs are orthogonal.
EmbeddingRows SyntheticEmbeddingRows();
EmbeddingTable SyntheticEmbeddings();
SynonymLexicon SyntheticSynonyms();

// Default linear victim trained on `train`.
LinearVictim TrainSyntheticVictim(const Split& train);

void WriteEmbeddingsFile(const EmbeddingRows& rows,
                         const std::filesystem::path& path);
void WriteSynonymsFile(const std::filesystem::path& path);

// Writes train.tsv, attack.tsv, embeddings.txt, synonyms.tsv and task.cfg
// into `dir` and returns the task file path.
std::filesystem::path WriteSyntheticTask(const std::filesystem::path& dir,
                                         size_t n_train, size_t n_attack,
                                         uint64_t seed);

// "alpha beta" on a victim where substituting either word alone, or both
// with the greedy-best replacement, keeps label 1, while the joint
// replacement {alpha -> gamma, beta -> delta} flips it. alpha's neighbours
// are {delta, gamma}, beta's only {delta}; the synonym lexicon mirrors this.
struct TrapFixture {
  LinearVictim victim;
  EmbeddingTable embeddings;
  SynonymLexicon synonyms;
  Instance instance;
};
TrapFixture MakeTrapFixture();

// Counts every Score call, including ones made outside a QueryCounter.
class CountingVictim : public Victim {
 public:
  explicit CountingVictim(const Victim& inner)
      : Victim(inner.threshold()), inner_(inner) {}

  double Score(std::string_view text) const override {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return inner_.Score(text);
  }
  std::string_view kind() const override { return inner_.kind(); }
  void Save(std::ostream& out) const override { inner_.Save(out); }

  uint64_t calls() const { return calls_.load(); }
  void reset() { calls_.store(0); }

 private:
  const Victim& inner_;
  mutable std::atomic<uint64_t> calls_{0};
};

// A fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, const std::string& content);

}  // namespace bodega::testing

#endif  // BODEGA_TESTS_SUPPORT_FIXTURES_H_
