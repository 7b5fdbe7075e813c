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

#include "bodega/corpus.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <unordered_set>

#include "bodega/errors.h"
#include "bodega/random.h"
#include "bodega/text.h"

namespace bodega {

namespace {

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    const size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

Split Subset(const std::vector<Instance>& instances,
             std::vector<size_t> indices, SplitRole role) {
  std::sort(indices.begin(), indices.end());
  Split split{role, {}};
  split.instances.reserve(indices.size());
  for (size_t i : indices) split.instances.push_back(instances[i]);
  return split;
}

bool ParseBool(std::string_view value, bool& out) {
  const std::string v = FoldCase(value);
  if (v == "1" || v == "true" || v == "yes") {
    out = true;
    return true;
  }
  if (v == "0" || v == "false" || v == "no") {
    out = false;
    return true;
  }
  return false;
}

}  // namespace

std::string_view SplitRoleName(SplitRole role) {
  switch (role) {
    case SplitRole::kTrain:
      return "train";
    case SplitRole::kAttack:
      return "attack";
    case SplitRole::kDev:
      return "dev";
  }
  return "unknown";
}

std::string ClassifierText(const Instance& instance) {
  if (!instance.part2) return instance.text;
  std::string joined = instance.text;
  joined += kPairSeparator;
  joined += *instance.part2;
  return joined;
}

std::string EscapeField(std::string_view field) {
  std::string out;
  out.reserve(field.size());
  for (char c : field) {
    switch (c) {
      case '\\':
        out += "\\\\";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

std::string UnescapeField(std::string_view field) {
  std::string out;
  out.reserve(field.size());
  for (size_t i = 0; i < field.size(); ++i) {
    if (field[i] != '\\' || i + 1 == field.size()) {
      out.push_back(field[i]);
      continue;
    }
    switch (field[i + 1]) {
      case '\\':
        out.push_back('\\');
        break;
      case 't':
        out.push_back('\t');
        break;
      case 'n':
        out.push_back('\n');
        break;
      case 'r':
        out.push_back('\r');
        break;
      default:
        out.push_back('\\');
        out.push_back(field[i + 1]);
    }
    ++i;
  }
  return out;
}

Split ParseSplit(std::istream& in, SplitRole role, const std::string& source) {
  Split split{role, {}};
  std::unordered_set<std::string> seen;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (TrimView(line).empty()) continue;
    const auto fields = SplitTabs(line);
    if (fields.size() != 3 && fields.size() != 4) {
      throw ParseError(source, line_no,
                       "expected 3 or 4 tab-separated columns, got " +
                           std::to_string(fields.size()));
    }
    Instance instance;
    instance.id = UnescapeField(fields[0]);
    if (instance.id.empty()) throw ParseError(source, line_no, "empty id");
    if (fields[1] == "0") {
      instance.label = 0;
    } else if (fields[1] == "1") {
      instance.label = 1;
    } else {
      throw ParseError(source, line_no, "label must be 0 or 1");
    }
    instance.text = UnescapeField(fields[2]);
    if (TrimView(instance.text).empty()) {
      throw ParseError(source, line_no, "empty text");
    }
    if (fields.size() == 4) instance.part2 = UnescapeField(fields[3]);
    if (!seen.insert(instance.id).second) {
      throw ValidationError(source + ":" + std::to_string(line_no) +
                            ": duplicate id '" + instance.id + "'");
    }
    split.instances.push_back(std::move(instance));
  }
  return split;
}

Split LoadSplit(const std::filesystem::path& path, SplitRole role) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open split file " + path.string());
  return ParseSplit(in, role, path.string());
}

void WriteSplit(const Split& split, std::ostream& out) {
  for (const Instance& instance : split.instances) {
    out << EscapeField(instance.id) << '\t' << instance.label << '\t'
        << EscapeField(instance.text);
    if (instance.part2) out << '\t' << EscapeField(*instance.part2);
    out << '\n';
  }
}

void SaveSplit(const Split& split, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write split file " + path.string());
  WriteSplit(split, out);
  if (!out) throw Error("write failed for " + path.string());
}

SplitTriple RandomSplit(const std::vector<Instance>& instances,
                        const SplitFractions& fractions, uint64_t seed) {
  if (instances.empty()) throw ConfigError("cannot split an empty dataset");
  if (!(fractions.train > 0) || !(fractions.attack > 0) ||
      !(fractions.dev > 0)) {
    throw ConfigError("split fractions must be positive");
  }
  const double total = fractions.train + fractions.attack + fractions.dev;
  if (std::abs(total - 1.0) > 1e-9) {
    throw ConfigError("split fractions must sum to 1");
  }
  const size_t n = instances.size();
  // The epsilon keeps products such as 10 * 0.7 from flooring below 7.
  const auto floor_size = [n](double fraction) {
    return static_cast<size_t>(std::floor(n * fraction + 1e-9));
  };
  const size_t n_attack = floor_size(fractions.attack);
  const size_t n_dev = floor_size(fractions.dev);

  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.Shuffle(order);

  const auto attack_end = order.begin() + n_attack;
  const auto dev_end = attack_end + n_dev;
  SplitTriple out;
  out.attack = Subset(instances, {order.begin(), attack_end},
                      SplitRole::kAttack);
  out.dev = Subset(instances, {attack_end, dev_end}, SplitRole::kDev);
  out.train = Subset(instances, {dev_end, order.end()}, SplitRole::kTrain);
  return out;
}

AttackSubset MakeAttackSubset(const Split& test, size_t n, uint64_t seed,
                              bool allow_empty) {
  if (n > test.size()) {
    throw ConfigError("attack subset size " + std::to_string(n) +
                      " exceeds test split size " +
                      std::to_string(test.size()));
  }
  if (n == 0 && !allow_empty) {
    throw ConfigError("attack subset size is 0 (pass --allow-empty to permit)");
  }
  std::vector<size_t> order(test.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  // Partial Fisher-Yates: the first n slots are the sample.
  for (size_t i = 0; i < n; ++i) {
    std::swap(order[i], order[i + rng.Uniform(order.size() - i)]);
  }
  AttackSubset out;
  out.attack = Subset(test.instances, {order.begin(), order.begin() + n},
                      SplitRole::kAttack);
  out.dev = Subset(test.instances, {order.begin() + n, order.end()},
                   SplitRole::kDev);
  return out;
}

TaskConfig ParseTaskConfig(std::istream& in,
                           const std::filesystem::path& base_dir,
                           const std::string& source) {
  TaskConfig config;
  const auto resolve = [&base_dir](std::string_view value) {
    std::filesystem::path p{std::string(value)};
    return p.is_relative() ? base_dir / p : p;
  };
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const size_t hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    const std::string_view trimmed = TrimView(line);
    if (trimmed.empty()) continue;
    const size_t eq = trimmed.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(source, line_no, "expected key = value");
    }
    const std::string key = Trim(trimmed.substr(0, eq));
    const std::string value = Trim(trimmed.substr(eq + 1));
    if (key == "name") {
      config.name = value;
    } else if (key == "train_path") {
      config.train_path = resolve(value);
    } else if (key == "attack_path") {
      config.attack_path = resolve(value);
    } else if (key == "dev_path") {
      config.dev_path = resolve(value);
    } else if (key == "embeddings_path") {
      config.embeddings_path = resolve(value);
    } else if (key == "synonyms_path") {
      config.synonyms_path = resolve(value);
    } else if (key == "pair_task") {
      if (!ParseBool(value, config.pair_task)) {
        throw ParseError(source, line_no, "pair_task must be true or false");
      }
    } else {
      throw ParseError(source, line_no, "unknown key '" + key + "'");
    }
  }
  if (config.attack_path.empty()) {
    throw ConfigError(source + ": attack_path is required");
  }
  for (const auto* path : {&config.train_path, &config.attack_path,
                           &config.dev_path, &config.embeddings_path,
                           &config.synonyms_path}) {
    if (!path->empty() && !std::filesystem::exists(*path)) {
      throw ConfigError(source + ": file not found: " + path->string());
    }
  }
  if (config.name.empty()) config.name = "task";
  return config;
}

TaskConfig LoadTaskConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open task config " + path.string());
  return ParseTaskConfig(in, path.parent_path(), path.string());
}

}  // namespace bodega
