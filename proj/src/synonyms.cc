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
#include <fstream>
#include <istream>

#include "bodega/errors.h"
#include "bodega/resources.h"
#include "bodega/text.h"

namespace bodega {

void SynonymLexicon::Add(std::string_view word,
                         const std::vector<std::string>& synonyms) {
  const std::string key = FoldCase(word);
  auto& list = entries_[key];
  for (const std::string& synonym : synonyms) {
    std::string folded = FoldCase(TrimView(synonym));
    if (folded.empty() || folded == key) continue;
    if (std::find(list.begin(), list.end(), folded) == list.end()) {
      list.push_back(std::move(folded));
    }
  }
}

const std::vector<std::string>& SynonymLexicon::Synonyms(
    std::string_view word) const {
  static const std::vector<std::string> kNone;
  const auto it = entries_.find(FoldCase(word));
  return it == entries_.end() ? kNone : it->second;
}

SynonymLexicon ParseSynonyms(std::istream& in, const std::string& source) {
  SynonymLexicon lexicon;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (TrimView(line).empty()) continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError(source, line_no, "expected word<TAB>synonyms");
    }
    const std::string_view word = TrimView(std::string_view(line).substr(0, tab));
    const std::string_view rest = std::string_view(line).substr(tab + 1);
    if (word.empty()) throw ParseError(source, line_no, "empty word");
    if (rest.find('\t') != std::string_view::npos) {
      throw ParseError(source, line_no, "more than one tab");
    }
    std::vector<std::string> synonyms;
    size_t start = 0;
    while (start <= rest.size()) {
      const size_t comma = std::min(rest.find(',', start), rest.size());
      synonyms.emplace_back(rest.substr(start, comma - start));
      start = comma + 1;
    }
    lexicon.Add(word, synonyms);
  }
  return lexicon;
}

SynonymLexicon LoadSynonyms(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open synonym lexicon " + path.string());
  return ParseSynonyms(in, path.string());
}

}  // namespace bodega
