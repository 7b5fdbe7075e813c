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

#include "bodega/resources.h"
#include "bodega/text.h"

namespace bodega {

std::vector<TokenSpan> Tokenize(std::string_view text) {
  std::vector<TokenSpan> spans;
  size_t pos = 0;
  size_t word_start = std::string_view::npos;
  const auto close_word = [&](size_t end) {
    if (word_start == std::string_view::npos) return;
    spans.push_back({text.substr(word_start, end - word_start), word_start,
                     end, TokenKind::kWord});
    word_start = std::string_view::npos;
  };
  while (pos < text.size()) {
    const size_t start = pos;
    const char32_t c = NextCodePoint(text, pos);
    if (IsWordChar(c)) {
      if (word_start == std::string_view::npos) word_start = start;
      continue;
    }
    close_word(start);
    if (IsSpace(c)) continue;
    spans.push_back({text.substr(start, pos - start), start, pos,
                     IsPunctuation(c) ? TokenKind::kPunctuation
                                      : TokenKind::kOther});
  }
  close_word(text.size());
  return spans;
}

std::vector<std::string> WordTokens(std::string_view text) {
  std::vector<std::string> words;
  for (const TokenSpan& span : Tokenize(text)) {
    if (span.kind == TokenKind::kWord) words.push_back(FoldCase(span.token));
  }
  return words;
}

}  // namespace bodega
