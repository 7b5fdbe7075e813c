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
#include <fstream>
#include <istream>
#include <sstream>

#include "bodega/errors.h"
#include "bodega/resources.h"
#include "bodega/text.h"

namespace bodega {

namespace {

double Dot(std::span<const float> a, std::span<const float> b) {
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    sum += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return sum;
}

bool LooksLikeHeader(const std::vector<std::string>& fields) {
  if (fields.size() != 2) return false;
  for (const std::string& f : fields) {
    if (f.empty() ||
        !std::all_of(f.begin(), f.end(), [](char c) { return c >= '0' && c <= '9'; }))
      return false;
  }
  return true;
}

std::vector<Neighbor> SelectTop(const EmbeddingTable& table, size_t query,
                                const std::vector<double>& cosines, size_t k,
                                double min_cosine) {
  std::vector<size_t> qualifying;
  for (size_t i = 0; i < cosines.size(); ++i) {
    if (i != query && cosines[i] >= min_cosine) qualifying.push_back(i);
  }
  const auto better = [&cosines](size_t a, size_t b) {
    if (cosines[a] != cosines[b]) return cosines[a] > cosines[b];
    return a < b;
  };
  const size_t take = std::min(k, qualifying.size());
  std::partial_sort(qualifying.begin(), qualifying.begin() + take,
                    qualifying.end(), better);
  std::vector<Neighbor> out;
  out.reserve(take);
  for (size_t i = 0; i < take; ++i) {
    out.push_back({table.Word(qualifying[i]), cosines[qualifying[i]]});
  }
  return out;
}

}  // namespace

bool EmbeddingTable::Add(std::string word, std::span<const double> values) {
  if (index_.count(word)) return false;
  double norm = 0.0;
  for (double v : values) norm += v * v;
  norm = std::sqrt(norm);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw ValidationError("embedding for '" + word +
                          "' has zero or non-finite norm");
  }
  index_.emplace(word, words_.size());
  words_.push_back(std::move(word));
  for (double v : values) matrix_.push_back(static_cast<float>(v / norm));
  return true;
}

EmbeddingTable EmbeddingTable::FromRows(
    const std::vector<std::pair<std::string, std::vector<double>>>& rows) {
  EmbeddingTable table;
  for (const auto& [word, values] : rows) {
    if (table.dimension_ == 0) table.dimension_ = values.size();
    if (values.size() != table.dimension_ || values.empty()) {
      throw ValidationError("embedding for '" + word + "' has dimension " +
                            std::to_string(values.size()) + ", expected " +
                            std::to_string(table.dimension_));
    }
    table.Add(FoldCase(word), values);
  }
  return table;
}

int64_t EmbeddingTable::IndexOf(std::string_view word) const {
  const auto it = index_.find(FoldCase(word));
  return it == index_.end() ? -1 : static_cast<int64_t>(it->second);
}

double EmbeddingTable::Cosine(std::string_view a, std::string_view b) const {
  const int64_t ia = IndexOf(a);
  const int64_t ib = IndexOf(b);
  if (ia < 0 || ib < 0) return 0.0;
  return Dot(Row(ia), Row(ib));
}

EmbeddingTable ParseEmbeddings(std::istream& in, const std::string& source) {
  EmbeddingTable table;
  std::string line;
  size_t line_no = 0;
  std::vector<std::string> fields;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream stream(line);
    fields.clear();
    for (std::string field; stream >> field;) fields.push_back(field);
    if (fields.empty()) continue;
    if (line_no == 1 && LooksLikeHeader(fields)) continue;
    if (fields.size() < 2) {
      throw ParseError(source, line_no, "expected a word followed by values");
    }
    values.clear();
    for (size_t i = 1; i < fields.size(); ++i) {
      try {
        size_t used = 0;
        values.push_back(std::stod(fields[i], &used));
        if (used != fields[i].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError(source, line_no,
                         "invalid number '" + fields[i] + "'");
      }
    }
    if (table.dimension_ == 0) table.dimension_ = values.size();
    if (values.size() != table.dimension_) {
      throw ParseError(source, line_no,
                       "dimension " + std::to_string(values.size()) +
                           " differs from " + std::to_string(table.dimension_));
    }
    try {
      table.Add(FoldCase(fields[0]), values);
    } catch (const ValidationError& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return table;
}

EmbeddingTable LoadEmbeddings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open embeddings " + path.string());
  return ParseEmbeddings(in, path.string());
}

std::vector<Neighbor> NearestNeighbors(const EmbeddingTable& table,
                                       std::string_view word, size_t k,
                                       double min_cosine) {
  const int64_t query = table.IndexOf(word);
  if (query < 0 || k == 0) return {};
  const auto query_row = table.Row(query);
  const auto n = static_cast<int64_t>(table.size());
  std::vector<double> cosines(table.size());
#pragma omp parallel for schedule(static) if (n > 4096)
  for (int64_t i = 0; i < n; ++i) {
    cosines[i] = Dot(query_row, table.Row(i));
  }
  return SelectTop(table, query, cosines, k, min_cosine);
}

std::vector<Neighbor> NearestNeighborsSerial(const EmbeddingTable& table,
                                             std::string_view word, size_t k,
                                             double min_cosine) {
  const int64_t query = table.IndexOf(word);
  if (query < 0 || k == 0) return {};
  const auto query_row = table.Row(query);
  std::vector<double> cosines(table.size());
  for (size_t i = 0; i < table.size(); ++i) {
    cosines[i] = Dot(query_row, table.Row(i));
  }
  return SelectTop(table, query, cosines, k, min_cosine);
}

}  // namespace bodega
