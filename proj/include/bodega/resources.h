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

// Lexical resources consumed by the attacks and the scorer. Every resource is
// immutable after loading and safe to share between threads.

#ifndef BODEGA_RESOURCES_H_
#define BODEGA_RESOURCES_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace bodega {

// ---------------------------------------------------------------------------
// Tokenizer

enum class TokenKind { kWord, kPunctuation, kOther };

// A token is the byte range [start, end) of the source text. Whitespace is
// never part of a token; it lives in the gaps between spans.
struct TokenSpan {
  std::string_view token;
  size_t start = 0;
  size_t end = 0;
  TokenKind kind = TokenKind::kWord;
};

// Word tokens are maximal runs of letters, digits and apostrophes. Every other
// non-space code point is a token of its own.
std::vector<TokenSpan> Tokenize(std::string_view text);

// Case-folded word tokens only.
std::vector<std::string> WordTokens(std::string_view text);

// ---------------------------------------------------------------------------
// Sentence splitter

struct SentenceSplitOptions {
  // When false, a boundary only needs a letter or digit after the gap. Used
  // on case-folded text, where capitalization is gone.
  bool require_capital = true;
};

// Splits after [.!?] runs (plus closing quotes/brackets) that are followed by
// whitespace and then an uppercase letter or digit. Periods ending a stoplist
// abbreviation (Mr, Mrs, Dr, St, U.S, e.g, i.e) never split. Text without a
// boundary is returned as one trimmed sentence; empty text yields none.
std::vector<std::string> SplitSentences(std::string_view text,
                                        SentenceSplitOptions options = {});

// ---------------------------------------------------------------------------
// Word embeddings

struct Neighbor {
  std::string word;
  double cosine = 0.0;

  bool operator==(const Neighbor&) const = default;
};

class EmbeddingTable {
 public:
  EmbeddingTable() = default;

  // Rows are L2-normalized on insertion; words are case-folded and the first
  // occurrence of a word wins. Throws ValidationError on zero vectors or a
  // dimension mismatch.
  static EmbeddingTable FromRows(
      const std::vector<std::pair<std::string, std::vector<double>>>& rows);

  size_t size() const { return words_.size(); }
  size_t dimension() const { return dimension_; }

  // -1 when absent. Lookup is case-folded.
  int64_t IndexOf(std::string_view word) const;
  bool Contains(std::string_view word) const { return IndexOf(word) >= 0; }
  const std::string& Word(size_t index) const { return words_[index]; }
  std::span<const float> Row(size_t index) const {
    return {matrix_.data() + index * dimension_, dimension_};
  }

  // Dot product of the stored (normalized) rows; 0 if either word is absent.
  double Cosine(std::string_view a, std::string_view b) const;

 private:
  friend EmbeddingTable ParseEmbeddings(std::istream&, const std::string&);

  // Returns false when the word is already present.
  bool Add(std::string word, std::span<const double> values);

  size_t dimension_ = 0;
  std::vector<std::string> words_;
  std::vector<float> matrix_;
  std::unordered_map<std::string, size_t> index_;
};

// Text format: `word v1 ... vd` per line. A leading `count dim` header line
// (word2vec text style) is skipped.
EmbeddingTable ParseEmbeddings(std::istream& in,
                               const std::string& source = "<stream>");
EmbeddingTable LoadEmbeddings(const std::filesystem::path& path);

// Up to k words other than `word`, by descending cosine (ties by vocabulary
// order), all with cosine >= min_cosine. Empty when `word` is unknown.
// Exact brute force, parallelized over the vocabulary with OpenMP.
std::vector<Neighbor> NearestNeighbors(const EmbeddingTable& table,
                                       std::string_view word, size_t k,
                                       double min_cosine);

// Single-threaded reference for NearestNeighbors.
std::vector<Neighbor> NearestNeighborsSerial(const EmbeddingTable& table,
                                             std::string_view word, size_t k,
                                             double min_cosine);

// ---------------------------------------------------------------------------
// Synonym lexicon

class SynonymLexicon {
 public:
  SynonymLexicon() = default;

  // Merges into any existing list, case-folded, dropping self references and
  // duplicates while keeping first-seen order.
  void Add(std::string_view word, const std::vector<std::string>& synonyms);

  // Empty for unlisted words. Lookup is case-folded.
  const std::vector<std::string>& Synonyms(std::string_view word) const;
  size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, std::vector<std::string>> entries_;
};

// Format: `word<TAB>syn1,syn2,...` per line.
SynonymLexicon ParseSynonyms(std::istream& in,
                             const std::string& source = "<stream>");
SynonymLexicon LoadSynonyms(const std::filesystem::path& path);

}  // namespace bodega

#endif  // BODEGA_RESOURCES_H_
