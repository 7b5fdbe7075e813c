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

#include <array>

#include "bodega/resources.h"
#include "bodega/text.h"

namespace bodega {

namespace {

constexpr std::array<std::string_view, 7> kAbbreviations = {
    "mr", "mrs", "dr", "st", "u.s", "e.g", "i.e"};

bool IsTerminal(char c) { return c == '.' || c == '!' || c == '?'; }

bool IsCloser(char c) {
  return c == '"' || c == '\'' || c == ')' || c == ']';
}

// True when the period at `dot` ends a stoplisted abbreviation.
bool EndsAbbreviation(std::string_view text, size_t dot) {
  size_t begin = dot;
  while (begin > 0) {
    size_t prev = begin - 1;
    while (prev > 0 && (static_cast<unsigned char>(text[prev]) & 0xC0) == 0x80)
      --prev;
    size_t pos = prev;
    const char32_t c = NextCodePoint(text, pos);
    if (IsSpace(c) || c == '(' || c == '"' || c == '[') break;
    begin = prev;
  }
  const std::string word = FoldCase(text.substr(begin, dot - begin));
  for (std::string_view abbreviation : kAbbreviations) {
    if (word == abbreviation) return true;
  }
  return false;
}

}  // namespace

std::vector<std::string> SplitSentences(std::string_view text,
                                        SentenceSplitOptions options) {
  std::vector<std::string> sentences;
  const auto emit = [&sentences](std::string_view piece) {
    const std::string_view trimmed = TrimView(piece);
    if (!trimmed.empty()) sentences.emplace_back(trimmed);
  };
  size_t sentence_start = 0;
  size_t i = 0;
  while (i < text.size()) {
    if (!IsTerminal(text[i])) {
      ++i;
      continue;
    }
    const size_t first_terminal = i;
    while (i < text.size() && IsTerminal(text[i])) ++i;
    const size_t last_terminal = i - 1;
    while (i < text.size() && IsCloser(text[i])) ++i;
    const size_t boundary = i;

    // At least one whitespace code point, then the next sentence's start.
    size_t pos = boundary;
    size_t gap = 0;
    char32_t next = 0;
    while (pos < text.size()) {
      size_t after = pos;
      next = NextCodePoint(text, after);
      if (!IsSpace(next)) break;
      pos = after;
      ++gap;
    }
    if (gap == 0 || pos >= text.size()) continue;
    const bool starts_sentence =
        IsDigit(next) || (options.require_capital
                              ? IsUpper(next)
                              : (IsWordChar(next) && next != '\''));
    if (!starts_sentence) continue;
    if (first_terminal == last_terminal && text[last_terminal] == '.' &&
        EndsAbbreviation(text, last_terminal)) {
      continue;
    }
    emit(text.substr(sentence_start, boundary - sentence_start));
    sentence_start = boundary;
  }
  emit(text.substr(sentence_start));
  return sentences;
}

}  // namespace bodega
