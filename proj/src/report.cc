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
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "bodega/harness.h"
#include "bodega/text.h"

namespace bodega {

namespace {

std::string Optional(const std::optional<double>& value) {
  return value ? FormatReportNumber(*value) : std::string();
}

std::vector<std::string_view> SplitWords(std::string_view text) {
  std::vector<std::string_view> words;
  size_t pos = 0;
  size_t start = std::string_view::npos;
  while (pos < text.size()) {
    const size_t here = pos;
    const bool space = IsSpace(NextCodePoint(text, pos));
    if (space && start != std::string_view::npos) {
      words.push_back(text.substr(start, here - start));
      start = std::string_view::npos;
    } else if (!space && start == std::string_view::npos) {
      start = here;
    }
  }
  if (start != std::string_view::npos) words.push_back(text.substr(start));
  return words;
}

// Cells beyond this fall back to replacing the whole differing middle.
constexpr size_t kMaxLcsCells = size_t{1} << 25;

class DiffWriter {
 public:
  void Common(std::string_view word) {
    Flush();
    Append(word);
  }
  void Delete(std::string_view word) { deleted_.push_back(word); }
  void Insert(std::string_view word) { inserted_.push_back(word); }

  std::string Finish() {
    Flush();
    return std::move(out_);
  }

 private:
  void Append(std::string_view piece) {
    if (!out_.empty()) out_ += ' ';
    out_ += piece;
  }

  static std::string Join(const std::vector<std::string_view>& words) {
    std::string joined;
    for (std::string_view w : words) {
      if (!joined.empty()) joined += ' ';
      joined += w;
    }
    return joined;
  }

  void Flush() {
    if (!deleted_.empty()) Append("[-" + Join(deleted_) + "-]");
    if (!inserted_.empty()) {
      const std::string piece = "{+" + Join(inserted_) + "+}";
      // Keep a replacement visually attached to what it replaces.
      if (!deleted_.empty()) {
        out_ += piece;
      } else {
        Append(piece);
      }
    }
    deleted_.clear();
    inserted_.clear();
  }

  std::string out_;
  std::vector<std::string_view> deleted_;
  std::vector<std::string_view> inserted_;
};

}  // namespace

std::string FormatReportNumber(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.4f", value);
  std::string text(buffer);
  const size_t dot = text.find('.');
  if (dot != std::string::npos) {
    size_t end = text.size();
    while (end > dot + 1 && text[end - 1] == '0') --end;
    if (end == dot + 1) end = dot;
    text.resize(end);
  }
  if (text == "-0") text = "0";
  return text;
}

std::string ReportTsvLine(const EvaluationReport& report) {
  std::ostringstream line;
  line << report.task << '\t' << report.attacker << '\t' << report.victim
       << '\t' << report.scenario << '\t' << report.n_instances << '\t'
       << FormatReportNumber(report.confusion_rate) << '\t'
       << Optional(report.semantic_avg) << '\t'
       << Optional(report.character_avg) << '\t'
       << FormatReportNumber(report.bodega_avg) << '\t'
       << FormatReportNumber(report.queries_avg);
  return line.str();
}

void WriteReportTsv(const EvaluationReport& report, std::ostream& out) {
  out << "task\tattacker\tvictim\tscenario\tn\tconfusion\tsemantic\t"
         "character\tbodega\tqueries\n"
      << ReportTsvLine(report) << '\n';
}

std::string FormatReportTable(const EvaluationReport& report) {
  const auto or_dash = [](const std::optional<double>& v) {
    return v ? FormatReportNumber(*v) : std::string("-");
  };
  const std::pair<std::string, std::string> rows[] = {
      {"task", report.task},
      {"attacker", report.attacker},
      {"victim", report.victim},
      {"scenario", report.scenario},
      {"instances", std::to_string(report.n_instances)},
      {"BODEGA score", FormatReportNumber(report.bodega_avg)},
      {"confusion score", FormatReportNumber(report.confusion_rate)},
      {"semantic score", or_dash(report.semantic_avg)},
      {"character score", or_dash(report.character_avg)},
      {"queries / instance", FormatReportNumber(report.queries_avg)},
  };
  std::string table;
  for (const auto& [key, value] : rows) {
    char line[160];
    std::snprintf(line, sizeof(line), "%-20s %s\n", key.c_str(),
                  value.c_str());
    table += line;
  }
  return table;
}

void EmitReport(const EvaluationReport& report,
                const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write report: " + path.string());
  WriteReportTsv(report, out);
  if (!out) throw Error("failed writing report: " + path.string());
}

void WriteAeDump(const std::vector<AeRecord>& records, std::ostream& out) {
  for (const AeRecord& record : records) {
    Instance adversarial = record.original;
    adversarial.text = record.adversarial_text;
    adversarial.part2 = record.adversarial_part2;
    out << EscapeField(record.original.id) << '\t' << record.queries << '\t'
        << FormatReportNumber(record.breakdown.bodega) << '\t'
        << Optional(record.breakdown.semantic) << '\t'
        << Optional(record.breakdown.character) << '\t'
        << EscapeField(ClassifierText(record.original)) << '\t'
        << EscapeField(ClassifierText(adversarial)) << '\t'
        << EscapeField(record.highlighted) << '\n';
  }
}

void EmitAeDump(const std::vector<AeRecord>& records,
                const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write AE dump: " + path.string());
  WriteAeDump(records, out);
  if (!out) throw Error("failed writing AE dump: " + path.string());
}

std::string HighlightChanges(std::string_view original,
                             std::string_view modified) {
  const std::vector<std::string_view> a = SplitWords(original);
  const std::vector<std::string_view> b = SplitWords(modified);
  size_t prefix = 0;
  while (prefix < a.size() && prefix < b.size() && a[prefix] == b[prefix]) {
    ++prefix;
  }
  size_t suffix = 0;
  while (suffix < a.size() - prefix && suffix < b.size() - prefix &&
         a[a.size() - 1 - suffix] == b[b.size() - 1 - suffix]) {
    ++suffix;
  }
  DiffWriter diff;
  for (size_t i = 0; i < prefix; ++i) diff.Common(a[i]);

  const size_t n = a.size() - prefix - suffix;
  const size_t m = b.size() - prefix - suffix;
  if ((n + 1) * (m + 1) > kMaxLcsCells) {
    for (size_t i = 0; i < n; ++i) diff.Delete(a[prefix + i]);
    for (size_t j = 0; j < m; ++j) diff.Insert(b[prefix + j]);
  } else {
    // lcs[i][j] = LCS length of a[prefix+i..] and b[prefix+j..].
    std::vector<uint32_t> lcs((n + 1) * (m + 1), 0);
    const auto at = [&](size_t i, size_t j) -> uint32_t& {
      return lcs[i * (m + 1) + j];
    };
    for (size_t i = n; i-- > 0;) {
      for (size_t j = m; j-- > 0;) {
        at(i, j) = a[prefix + i] == b[prefix + j]
                       ? at(i + 1, j + 1) + 1
                       : std::max(at(i + 1, j), at(i, j + 1));
      }
    }
    size_t i = 0;
    size_t j = 0;
    while (i < n || j < m) {
      if (i < n && j < m && a[prefix + i] == b[prefix + j]) {
        diff.Common(a[prefix + i]);
        ++i;
        ++j;
      } else if (j == m || (i < n && at(i + 1, j) >= at(i, j + 1))) {
        diff.Delete(a[prefix + i++]);
      } else {
        diff.Insert(b[prefix + j++]);
      }
    }
  }
  for (size_t i = a.size() - suffix; i < a.size(); ++i) diff.Common(a[i]);
  return diff.Finish();
}

}  // namespace bodega
