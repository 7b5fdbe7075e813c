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

// Labeled text datasets: the split file format, random splitting, and the
// attack-subset sampler.
//
// Split files are UTF-8 TSV without a header, one instance per line:
//
//   id <TAB> label <TAB> text [<TAB> part2]
//
// Backslash, tab, newline and carriage return inside fields are written as
// \\, \t, \n and \r.

#ifndef BODEGA_CORPUS_H_
#define BODEGA_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bodega {

// Label 1 marks non-credible content (the positive class).
struct Instance {
  std::string id;
  int label = 0;
  std::string text;
  std::optional<std::string> part2;

  bool operator==(const Instance&) const = default;
};

enum class SplitRole { kTrain, kAttack, kDev };

std::string_view SplitRoleName(SplitRole role);

struct Split {
  SplitRole role = SplitRole::kTrain;
  std::vector<Instance> instances;

  size_t size() const { return instances.size(); }
  bool empty() const { return instances.empty(); }
  bool operator==(const Split&) const = default;
};

struct TaskConfig {
  std::string name;
  std::filesystem::path train_path;
  std::filesystem::path attack_path;
  std::filesystem::path dev_path;
  bool pair_task = false;
  // Optional lexical resources; the CLI flags override these.
  std::filesystem::path embeddings_path;
  std::filesystem::path synonyms_path;
};

// Pair instances are classified as "text [SEP] part2".
inline constexpr std::string_view kPairSeparator = " [SEP] ";

std::string ClassifierText(const Instance& instance);

std::string EscapeField(std::string_view field);
// Unknown escape sequences are kept verbatim.
std::string UnescapeField(std::string_view field);

Split ParseSplit(std::istream& in, SplitRole role,
                 const std::string& source = "<stream>");
Split LoadSplit(const std::filesystem::path& path, SplitRole role);

void WriteSplit(const Split& split, std::ostream& out);
void SaveSplit(const Split& split, const std::filesystem::path& path);

struct SplitFractions {
  double train = 0.8;
  double attack = 0.1;
  double dev = 0.1;
};

struct SplitTriple {
  Split train;
  Split attack;
  Split dev;
};

// Attack and dev sizes are floor(n * fraction); the remainder goes to train.
// Each output keeps the input order of its members.
SplitTriple RandomSplit(const std::vector<Instance>& instances,
                        const SplitFractions& fractions, uint64_t seed);

struct AttackSubset {
  Split attack;
  Split dev;  // the unsampled remainder
};

// Samples `n` instances without replacement. n == 0 is rejected unless
// `allow_empty` is set.
AttackSubset MakeAttackSubset(const Split& test, size_t n, uint64_t seed,
                              bool allow_empty = false);

// Key-value task file: one `key = value` per line, '#' starts a comment.
// Keys: name, train_path, attack_path, dev_path, pair_task, embeddings_path,
// synonyms_path. Relative paths resolve against the file's directory.
TaskConfig ParseTaskConfig(std::istream& in,
                           const std::filesystem::path& base_dir,
                           const std::string& source = "<stream>");
TaskConfig LoadTaskConfig(const std::filesystem::path& path);

}  // namespace bodega

#endif  // BODEGA_CORPUS_H_
