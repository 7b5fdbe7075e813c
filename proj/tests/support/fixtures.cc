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


#include "support/fixtures.h"

#include <stdlib.h>

#include <cctype>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bodega/random.h"

namespace bodega::testing {

namespace {

const std::vector<std::string>& Fillers() {
  static const auto* fillers = new std::vector<std::string>{
      "the",     "city",   "council", "said",    "on",      "monday",
      "that",    "a",      "new",     "budget",  "would",   "include",
      "money",   "for",    "road",    "repair",  "and",     "school",
      "meal",    "while",  "official", "expect", "vote",    "next",
      "week",    "local",  "group",   "called",  "it",      "an",
      "update",  "about",  "tax",     "policy",  "after",   "long",
      "debate",  "among",  "member",  "of",      "public",  "board",
  };
  return *fillers;
}

std::string Capitalized(std::string word) {
  if (!word.empty()) {
    word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
  }
  return word;
}

std::string Render(const std::vector<std::string>& words) {
  const size_t cut = words.size() / 2;
  std::string text;
  for (size_t i = 0; i < words.size(); ++i) {
    const bool starts_sentence = i == 0 || i == cut;
    if (i > 0) text += ' ';
    text += starts_sentence ? Capitalized(words[i]) : words[i];
    if (i + 1 == cut || i + 1 == words.size()) text += '.';
  }
  return text;
}

Instance MakeInstance(Rng& rng, const std::string& id, int label) {
  const auto& fillers = Fillers();
  const auto& pairs = KeywordPairs();
  std::vector<std::string> words;
  const size_t length = 8 + rng.Uniform(7);
  for (size_t i = 0; i < length; ++i) {
    words.push_back(fillers[rng.Uniform(fillers.size())]);
  }
  const auto insert = [&](const std::string& word) {
    words.insert(words.begin() + static_cast<std::ptrdiff_t>(
                                     rng.Uniform(words.size() + 1)),
                 word);
  };
  Instance instance;
  instance.id = id;
  instance.label = label;
  if (instance.label == 1) {
    insert(pairs[rng.Uniform(pairs.size())].first);
    if (rng.UniformReal() < 0.3) insert(pairs[rng.Uniform(pairs.size())].second);
  } else {
    const size_t count = 1 + rng.Uniform(2);
    for (size_t i = 0; i < count; ++i) {
      insert(pairs[rng.Uniform(pairs.size())].second);
    }
  }
  instance.text = Render(words);
  return instance;
}

// Three of every five instances are positive.
int PositiveSlot(size_t i) { return i % 5 < 3 ? 1 : 0; }

std::string Id(const char* prefix, size_t i) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%s-%05zu", prefix, i);
  return buffer;
}

}  // namespace

SyntheticCorpus MakeSeparableCorpus(size_t n_train, size_t n_attack,
                                    uint64_t seed) {
  Rng rng(seed);
  SyntheticCorpus corpus;
  corpus.train.role = SplitRole::kTrain;
  corpus.attack.role = SplitRole::kAttack;
  for (size_t i = 0; i < n_train; ++i) {
    corpus.train.instances.push_back(
        MakeInstance(rng, Id("tr", i), PositiveSlot(i)));
  }
  for (size_t i = 0; i < n_attack; ++i) {
    corpus.attack.instances.push_back(
        MakeInstance(rng, Id("at", i), PositiveSlot(i)));
  }
  return corpus;
}

EmbeddingRows SyntheticEmbeddingRows() {
  const auto& pairs = KeywordPairs();
  const auto& fillers = Fillers();
  // Axes: one per pair concept, two private axes per pair, one per filler.
  const size_t dim = pairs.size() * 3 + fillers.size();
  EmbeddingRows rows;
  for (size_t p = 0; p < pairs.size(); ++p) {
    std::vector<double> keyword(dim, 0.0);
    std::vector<double> counterpart(dim, 0.0);
    keyword[p] = counterpart[p] = 1.0;
    keyword[pairs.size() + 2 * p] = 0.3;
    counterpart[pairs.size() + 2 * p + 1] = 0.3;
    rows.emplace_back(pairs[p].first, std::move(keyword));
    rows.emplace_back(pairs[p].second, std::move(counterpart));
  }
  for (size_t f = 0; f < fillers.size(); ++f) {
    std::vector<double> row(dim, 0.0);
    row[pairs.size() * 3 + f] = 1.0;
    rows.emplace_back(fillers[f], std::move(row));
  }
  return rows;
}

EmbeddingTable SyntheticEmbeddings() {
  return EmbeddingTable::FromRows(SyntheticEmbeddingRows());
}

SynonymLexicon SyntheticSynonyms() {
  SynonymLexicon lexicon;
  for (const auto& [keyword, counterpart] : KeywordPairs()) {
    lexicon.Add(keyword, {counterpart});
    lexicon.Add(counterpart, {keyword});
  }
  return lexicon;
}

LinearVictim TrainSyntheticVictim(const Split& train) {
  return TrainLinear(train, LinearTrainConfig{});
}

void WriteEmbeddingsFile(const EmbeddingRows& rows,
                         const std::filesystem::path& path) {
  std::ofstream out(path);
  out.precision(17);
  for (const auto& [word, values] : rows) {
    out << word;
    for (double v : values) out << ' ' << v;
    out << '\n';
  }
}

void WriteSynonymsFile(const std::filesystem::path& path) {
  std::ofstream out(path);
  for (const auto& [keyword, counterpart] : KeywordPairs()) {
    out << keyword << '\t' << counterpart << '\n';
    out << counterpart << '\t' << keyword << '\n';
  }
}

std::filesystem::path WriteSyntheticTask(const std::filesystem::path& dir,
                                         size_t n_train, size_t n_attack,
                                         uint64_t seed) {
  const SyntheticCorpus corpus = MakeSeparableCorpus(n_train, n_attack, seed);
  SaveSplit(corpus.train, dir / "train.tsv");
  SaveSplit(corpus.attack, dir / "attack.tsv");
  WriteEmbeddingsFile(SyntheticEmbeddingRows(), dir / "embeddings.txt");
  WriteSynonymsFile(dir / "synonyms.tsv");
  const std::filesystem::path task = dir / "task.cfg";
  WriteFile(task,
            "# synthetic keyword task\n"
            "name = synthetic\n"
            "train_path = train.tsv\n"
            "attack_path = attack.tsv\n"
            "embeddings_path = embeddings.txt\n"
            "synonyms_path = synonyms.tsv\n");
  return task;
}

TrapFixture MakeTrapFixture() {
  FeaturizerConfig features;
  features.char_ngrams = false;
  LinearVictim victim = LinearVictim::Zero(features);
  victim.SetWordWeight("delta", -0.37);
  victim.SetWordWeight("gamma", -0.36);
  victim.set_bias(0.5);

  const EmbeddingRows rows = {
      {"alpha", {1.0, 1.0, 0.0}},
      {"beta", {1.0, 0.0, 1.2}},
      {"delta", {1.0, 0.0, 0.0}},
      {"gamma", {0.0, 1.0, 0.0}},
  };
  SynonymLexicon synonyms;
  synonyms.Add("alpha", {"delta", "gamma"});
  synonyms.Add("beta", {"delta"});

  Instance instance;
  instance.id = "trap";
  instance.label = 1;
  instance.text = "alpha beta";
  return TrapFixture{std::move(victim), EmbeddingTable::FromRows(rows),
                     std::move(synonyms), std::move(instance)};
}

TempDir::TempDir() {
  std::string pattern =
      (std::filesystem::temp_directory_path() / "bodega-XXXXXX").string();
  if (mkdtemp(pattern.data()) == nullptr) {
    throw std::runtime_error("mkdtemp failed");
  }
  path_ = pattern;
}

TempDir::~TempDir() {
  std::error_code ignored;
  std::filesystem::remove_all(path_, ignored);
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace bodega::testing
