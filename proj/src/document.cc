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

#include "bodega/attacks.h"
#include "bodega/text.h"

namespace bodega {

Document::Document(std::vector<std::string> segments)
    : segments_(std::move(segments)) {
  for (size_t s = 0; s < segments_.size(); ++s) {
    for (const TokenSpan& span : Tokenize(segments_[s])) {
      if (span.kind == TokenKind::kWord) {
        words_.push_back({s, span.start, span.end});
      }
    }
  }
}

Document Document::FromInstance(const Instance& instance) {
  std::vector<std::string> segments{instance.text};
  if (instance.part2) segments.push_back(*instance.part2);
  return Document(std::move(segments));
}

std::string_view Document::word(size_t index) const {
  const WordRef& ref = words_[index];
  return std::string_view(segments_[ref.segment])
      .substr(ref.start, ref.end - ref.start);
}

std::vector<std::string> Document::RenderSegments(
    const Substitutions& subs) const {
  std::vector<std::string> out(segments_.size());
  std::vector<size_t> cursor(segments_.size(), 0);
  for (const auto& [index, replacement] : subs) {
    const WordRef& ref = words_.at(index);
    const std::string& source = segments_[ref.segment];
    out[ref.segment].append(source, cursor[ref.segment],
                            ref.start - cursor[ref.segment]);
    out[ref.segment] += replacement;
    cursor[ref.segment] = ref.end;
  }
  for (size_t s = 0; s < segments_.size(); ++s) {
    out[s].append(segments_[s], cursor[s]);
  }
  return out;
}

std::string Document::Render(const Substitutions& subs) const {
  const std::vector<std::string> parts = RenderSegments(subs);
  std::string joined;
  for (size_t s = 0; s < parts.size(); ++s) {
    if (s > 0) joined += kPairSeparator;
    joined += parts[s];
  }
  return joined;
}

std::string Document::RenderWithout(size_t word_index) const {
  return Render({{word_index, std::string()}});
}

}  // namespace bodega
