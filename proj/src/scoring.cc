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
#include <limits>

#include "bodega/errors.h"
#include "bodega/scoring.h"
#include "bodega/text.h"

namespace bodega {

namespace {

double Clip(double x) { return std::clamp(x, 0.0, 1.0); }

std::string JoinSegments(std::span<const std::string> segments) {
  std::string joined;
  for (size_t i = 0; i < segments.size(); ++i) {
    if (i > 0) joined += ' ';
    joined += segments[i];
  }
  return joined;
}

std::vector<std::string> OutcomeSegments(const AttackOutcome& outcome) {
  std::vector<std::string> segments{*outcome.adversarial_text};
  if (outcome.adversarial_part2) segments.push_back(*outcome.adversarial_part2);
  return segments;
}

std::vector<std::string> InstanceSegments(const Instance& instance) {
  std::vector<std::string> segments{instance.text};
  if (instance.part2) segments.push_back(*instance.part2);
  return segments;
}

}  // namespace

std::string NormalizeForScoring(std::string_view text) {
  const std::string folded = FoldCase(text);
  std::string out;
  out.reserve(folded.size());
  bool pending_space = false;
  size_t pos = 0;
  while (pos < folded.size()) {
    const size_t start = pos;
    const char32_t c = NextCodePoint(folded, pos);
    if (IsSpace(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out += ' ';
    pending_space = false;
    out.append(folded, start, pos - start);
  }
  return out;
}

std::optional<std::vector<double>> EmbeddingSemanticScorer::MeanVector(
    std::string_view text) const {
  std::vector<double> sum(embeddings_.dimension(), 0.0);
  size_t found = 0;
  for (const std::string& word : WordTokens(text)) {
    const int64_t index = embeddings_.IndexOf(word);
    if (index < 0) continue;
    const auto row = embeddings_.Row(index);
    for (size_t i = 0; i < row.size(); ++i) sum[i] += row[i];
    ++found;
  }
  if (found == 0) return std::nullopt;
  return sum;
}

double EmbeddingSemanticScorer::Score(std::string_view a, std::string_view b) {
  const auto va = MeanVector(a);
  const auto vb = MeanVector(b);
  if (va && vb) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (size_t i = 0; i < va->size(); ++i) {
      dot += (*va)[i] * (*vb)[i];
      na += (*va)[i] * (*va)[i];
      nb += (*vb)[i] * (*vb)[i];
    }
    if (na > 0.0 && nb > 0.0) {
      const double cosine = std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
      return Clip((cosine + 1.0) / 2.0);
    }
  }
  return CharScore(NormalizeForScoring(a), NormalizeForScoring(b));
}

double SemanticScore(SemanticScorer& scorer, std::string_view original,
                     std::string_view modified) {
  // Case is folded away, so boundaries cannot depend on capitals.
  const SentenceSplitOptions options{.require_capital = false};
  const std::vector<std::string> originals =
      SplitSentences(NormalizeForScoring(original), options);
  const std::vector<std::string> modifieds =
      SplitSentences(NormalizeForScoring(modified), options);
  if (originals.empty() || modifieds.empty()) {
    return originals.empty() && modifieds.empty() ? 1.0 : 0.0;
  }
  std::vector<std::u32string> decoded;
  decoded.reserve(originals.size());
  for (const std::string& s : originals) decoded.push_back(DecodeUtf8(s));

  double total = 0.0;
  for (const std::string& sentence : modifieds) {
    const std::u32string target = DecodeUtf8(sentence);
    size_t nearest = 0;
    size_t nearest_distance = std::numeric_limits<size_t>::max();
    for (size_t i = 0; i < decoded.size(); ++i) {
      const size_t distance = Levenshtein(decoded[i], target);
      if (distance < nearest_distance) {
        nearest_distance = distance;
        nearest = i;
      }
    }
    total += Clip(scorer.Score(originals[nearest], sentence));
  }
  return Clip(total / static_cast<double>(modifieds.size()));
}

double SemanticScore(SemanticScorer& scorer,
                     std::span<const std::string> original,
                     std::span<const std::string> modified, bool pair_task) {
  if (!pair_task || original.size() != modified.size() ||
      original.size() < 2) {
    return SemanticScore(scorer, JoinSegments(original),
                         JoinSegments(modified));
  }
  double total = 0.0;
  for (size_t i = 0; i < original.size(); ++i) {
    total += Clip(scorer.Score(NormalizeForScoring(original[i]),
                               NormalizeForScoring(modified[i])));
  }
  return Clip(total / static_cast<double>(original.size()));
}

ScoreBreakdown ScorePair(const Victim& victim,
                         const Prediction& original_prediction,
                         const Instance& original, const AttackOutcome& outcome,
                         SemanticScorer& scorer, bool pair_task) {
  ScoreBreakdown breakdown;
  if (!outcome.succeeded) return breakdown;
  if (!outcome.adversarial_text) {
    throw Error("successful outcome for '" + original.id +
                "' carries no adversarial text");
  }
  Instance adversarial = original;
  adversarial.text = *outcome.adversarial_text;
  adversarial.part2 = outcome.adversarial_part2;
  if (victim.Predict(ClassifierText(adversarial)).label ==
      original_prediction.label) {
    throw Error("attack on '" + original.id +
                "' claimed success but the victim's decision is unchanged");
  }
  const std::vector<std::string> before = InstanceSegments(original);
  const std::vector<std::string> after = OutcomeSegments(outcome);
  const std::string normalized_before = NormalizeForScoring(JoinSegments(before));
  const std::string normalized_after = NormalizeForScoring(JoinSegments(after));
  if (normalized_before == normalized_after) {
    throw Error("attack on '" + original.id +
                "' flipped the victim without changing the text");
  }
  breakdown.confusion = 1;
  breakdown.semantic = SemanticScore(scorer, before, after, pair_task);
  breakdown.character = CharScore(normalized_before, normalized_after);
  breakdown.bodega = static_cast<double>(breakdown.confusion) *
                     *breakdown.semantic * *breakdown.character;
  return breakdown;
}

EvaluationReport Aggregate(std::span<const ScoreBreakdown> breakdowns,
                           std::span<const uint64_t> queries) {
  if (breakdowns.empty()) throw ConfigError("nothing to aggregate");
  if (breakdowns.size() != queries.size()) {
    throw ConfigError("breakdown and query lists differ in length");
  }
  EvaluationReport report;
  report.n_instances = breakdowns.size();
  const double n = static_cast<double>(breakdowns.size());
  double confusion = 0.0, semantic = 0.0, character = 0.0, bodega = 0.0;
  double total_queries = 0.0;
  for (size_t i = 0; i < breakdowns.size(); ++i) {
    const ScoreBreakdown& b = breakdowns[i];
    bodega += b.bodega;
    total_queries += static_cast<double>(queries[i]);
    if (b.confusion == 1) {
      confusion += 1.0;
      semantic += b.semantic.value_or(0.0);
      character += b.character.value_or(0.0);
    }
  }
  report.confusion_rate = confusion / n;
  if (confusion > 0) {
    report.semantic_avg = semantic / confusion;
    report.character_avg = character / confusion;
  }
  report.bodega_avg = bodega / n;
  report.queries_avg = total_queries / n;
  return report;
}

}  // namespace bodega
