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

// UTF-8 and character-class helpers shared by every module.
//
// Decoding is lossless: bytes that are not part of a well-formed UTF-8
// sequence decode to U+DC80..U+DCFF (one code unit per byte) and encode back
// to the same byte, so DecodeUtf8/EncodeUtf8 round-trip arbitrary input.

#ifndef BODEGA_TEXT_H_
#define BODEGA_TEXT_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace bodega {

std::u32string DecodeUtf8(std::string_view text);
std::string EncodeUtf8(std::u32string_view text);
void AppendUtf8(char32_t c, std::string& out);

// Decodes one code point starting at `pos` and advances `pos` past it.
char32_t NextCodePoint(std::string_view text, size_t& pos);

// Simple (one-to-one) lowercase mapping for Latin, Greek and Cyrillic.
char32_t FoldCase(char32_t c);
std::string FoldCase(std::string_view text);

bool IsSpace(char32_t c);
bool IsUpper(char32_t c);
bool IsLower(char32_t c);
bool IsDigit(char32_t c);
// Letters, digits and apostrophes form word tokens.
bool IsWordChar(char32_t c);
bool IsPunctuation(char32_t c);

std::string_view TrimView(std::string_view text);
std::string Trim(std::string_view text);

// Number of code points (as decoded by DecodeUtf8).
size_t CodePointLength(std::string_view text);

// Stable 64-bit hashes; identical on every platform and build.
uint64_t Fnv1a64(std::string_view bytes);
uint64_t Mix64(uint64_t x);

}  // namespace bodega

#endif  // BODEGA_TEXT_H_
