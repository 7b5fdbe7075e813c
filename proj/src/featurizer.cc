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

#include "bodega/errors.h"
#include "bodega/resources.h"
#include "bodega/text.h"
#include "bodega/victims.h"

namespace bodega {

Featurizer::Featurizer(FeaturizerConfig config) : config_(config) {
  if (config_.dimension == 0 ||
      (config_.dimension & (config_.dimension - 1)) != 0) {
    throw ConfigError("feature dimension must be a power of two");
  }
  if (config_.char_ngrams &&
      (config_.ngram_min < 1 || config_.ngram_max < config_.ngram_min)) {
    throw ConfigError("invalid character n-gram range");
  }
}

std::pair<uint32_t, double> Featurizer::Slot(char prefix,
                                             std::string_view key) const {
  uint64_t h = Fnv1a64(std::string_view(&prefix, 1));
  // Continue the FNV stream over the key.
  for (char c : key) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  h = Mix64(h);
  const auto index = static_cast<uint32_t>(h & (config_.dimension - 1));
  const double sign = (h >> 63) ? -1.0 : 1.0;
  return {index, sign};
}

std::pair<uint32_t, double> Featurizer::WordSlot(std::string_view word) const {
  return Slot('w', FoldCase(word));
}

std::vector<Feature> Featurizer::Featurize(std::string_view text) const {
  std::vector<Feature> raw;
  for (const std::string& word : WordTokens(text)) {
    const auto [index, sign] = Slot('w', word);
    raw.push_back({index, sign});
    if (!config_.char_ngrams) continue;
    std::u32string padded = U"<";
    padded += DecodeUtf8(word);
    padded += U">";
    for (int n = config_.ngram_min; n <= config_.ngram_max; ++n) {
      if (static_cast<size_t>(n) > padded.size()) break;
      for (size_t i = 0; i + n <= padded.size(); ++i) {
        const std::string gram =
            EncodeUtf8(std::u32string_view(padded).substr(i, n));
        const auto [gram_index, gram_sign] = Slot('c', gram);
        raw.push_back({gram_index, gram_sign});
      }
    }
  }
  std::sort(raw.begin(), raw.end(),
            [](const Feature& a, const Feature& b) { return a.index < b.index; });
  std::vector<Feature> merged;
  for (const Feature& f : raw) {
    if (!merged.empty() && merged.back().index == f.index) {
      merged.back().value += f.value;
    } else {
      merged.push_back(f);
    }
  }
  std::erase_if(merged, [](const Feature& f) { return f.value == 0.0; });
  double norm = 0.0;
  for (const Feature& f : merged) norm += f.value * f.value;
  if (norm > 0.0) {
    const double inv = 1.0 / std::sqrt(norm);
    for (Feature& f : merged) f.value *= inv;
  }
  return merged;
}

}  // namespace bodega
