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

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "bodega/errors.h"
#include "support/fixtures.h"

namespace bodega {
namespace {

Split Parse(const std::string& content, SplitRole role = SplitRole::kTrain) {
  std::istringstream in(content);
  return ParseSplit(in, role, "test.tsv");
}

std::vector<Instance> MakeInstances(size_t n) {
  std::vector<Instance> instances;
  for (size_t i = 0; i < n; ++i) {
    instances.push_back({"id" + std::to_string(i), static_cast<int>(i % 2),
                         "text " + std::to_string(i), std::nullopt});
  }
  return instances;
}

std::multiset<std::string> Ids(const Split& split) {
  std::multiset<std::string> ids;
  for (const Instance& i : split.instances) ids.insert(i.id);
  return ids;
}

TEST(ParseSplitTest, ParsesThreeColumnLine) {
  const Split split =
      Parse("7\t1\tRadioactive dust approaching after fire!\n");
  ASSERT_EQ(split.size(), 1u);
  EXPECT_EQ(split.instances[0],
            (Instance{"7", 1, "Radioactive dust approaching after fire!",
                      std::nullopt}));
}

TEST(ParseSplitTest, ParsesPairLine) {
  const Split split = Parse("9\t0\tclaim text\tevidence text\n");
  ASSERT_EQ(split.size(), 1u);
  EXPECT_EQ(split.instances[0],
            (Instance{"9", 0, "claim text", "evidence text"}));
  EXPECT_EQ(ClassifierText(split.instances[0]),
            "claim text [SEP] evidence text");
}

TEST(ParseSplitTest, RejectsNonBinaryLabel) {
  try {
    Parse("1\t0\tok\n3\t2\tfoo\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("label must be 0 or 1"),
              std::string::npos);
  }
}

TEST(ParseSplitTest, RejectsBadColumnsAndEmptyText) {
  EXPECT_THROW(Parse("1\t0\n"), ParseError);
  EXPECT_THROW(Parse("1\t0\ta\tb\tc\n"), ParseError);
  EXPECT_THROW(Parse("1\t0\t   \n"), ParseError);
}

TEST(ParseSplitTest, RejectsDuplicateIds) {
  EXPECT_THROW(Parse("1\t0\ta\n1\t1\tb\n"), ValidationError);
}

TEST(ParseSplitTest, HandlesCrlfAndBlankLines) {
  const Split split = Parse("1\t0\ta\r\n\n2\t1\tb\r\n");
  ASSERT_EQ(split.size(), 2u);
  EXPECT_EQ(split.instances[1].text, "b");
}

TEST(LoadSplitTest, MissingFileIsConfigError) {
  EXPECT_THROW(LoadSplit("/nonexistent/split.tsv", SplitRole::kTrain),
               ConfigError);
}

TEST(SplitFileTest, RoundTripsEscapedText) {
  Split split;
  split.role = SplitRole::kAttack;
  split.instances = {
      {"a", 1, "tab\there\nnewline and back\\slash", std::nullopt},
      {"b", 0, "claim", "evidence\twith tab"},
  };
  testing::TempDir dir;
  SaveSplit(split, dir / "s.tsv");
  EXPECT_EQ(LoadSplit(dir / "s.tsv", SplitRole::kAttack), split);
}

TEST(EscapeTest, EscapesAndUnescapes) {
  EXPECT_EQ(EscapeField("a\tb\nc\\"), "a\\tb\\nc\\\\");
  EXPECT_EQ(UnescapeField("a\\tb\\nc\\\\"), "a\tb\nc\\");
  EXPECT_EQ(UnescapeField("keep \\x as is"), "keep \\x as is");
}

TEST(RandomSplitTest, TenInstancesGiveEightOneOne) {
  const auto instances = MakeInstances(10);
  const SplitTriple triple = RandomSplit(instances, {0.8, 0.1, 0.1}, 42);
  EXPECT_EQ(triple.train.size(), 8u);
  EXPECT_EQ(triple.attack.size(), 1u);
  EXPECT_EQ(triple.dev.size(), 1u);
  std::multiset<std::string> all = Ids(triple.train);
  for (const auto& id : Ids(triple.attack)) all.insert(id);
  for (const auto& id : Ids(triple.dev)) all.insert(id);
  EXPECT_EQ(all, Ids(Split{SplitRole::kTrain, instances}));
}

TEST(RandomSplitTest, DeterministicPerSeed) {
  const auto instances = MakeInstances(50);
  EXPECT_EQ(RandomSplit(instances, {0.8, 0.1, 0.1}, 42).attack,
            RandomSplit(instances, {0.8, 0.1, 0.1}, 42).attack);
}

TEST(RandomSplitTest, PartitionsForAnySeed) {
  const auto instances = MakeInstances(100);
  for (uint64_t seed : {1u, 2u, 3u, 99u}) {
    const SplitTriple t = RandomSplit(instances, {0.9, 0.05, 0.05}, seed);
    EXPECT_EQ(t.attack.size(), 5u);
    EXPECT_EQ(t.dev.size(), 5u);
    EXPECT_EQ(t.train.size(), 90u);
    std::set<std::string> seen;
    for (const Split* s : {&t.train, &t.attack, &t.dev}) {
      for (const Instance& i : s->instances) {
        EXPECT_TRUE(seen.insert(i.id).second) << i.id;
      }
    }
    EXPECT_EQ(seen.size(), 100u);
  }
}

TEST(RandomSplitTest, RemainderGoesToTrain) {
  const SplitTriple t = RandomSplit(MakeInstances(7), {0.5, 0.25, 0.25}, 1);
  EXPECT_EQ(t.attack.size(), 1u);
  EXPECT_EQ(t.dev.size(), 1u);
  EXPECT_EQ(t.train.size(), 5u);
}

TEST(RandomSplitTest, RejectsBadInput) {
  EXPECT_THROW(RandomSplit({}, {0.8, 0.1, 0.1}, 1), Error);
  EXPECT_THROW(RandomSplit(MakeInstances(5), {0.8, 0.1, 0.2}, 1), Error);
  EXPECT_THROW(RandomSplit(MakeInstances(5), {1.0, 0.0, 0.0}, 1), Error);
}

TEST(AttackSubsetTest, MirrorsFourHundredOfFourThousand) {
  const Split test{SplitRole::kAttack, MakeInstances(4000)};
  const AttackSubset subset = MakeAttackSubset(test, 400, 5);
  EXPECT_EQ(subset.attack.size(), 400u);
  EXPECT_EQ(subset.dev.size(), 3600u);
  std::set<std::string> ids;
  for (const auto& i : subset.attack.instances) ids.insert(i.id);
  for (const auto& i : subset.dev.instances) ids.insert(i.id);
  EXPECT_EQ(ids.size(), 4000u);
  EXPECT_EQ(MakeAttackSubset(test, 400, 5).attack, subset.attack);
}

TEST(AttackSubsetTest, BoundaryCases) {
  const Split test{SplitRole::kAttack, MakeInstances(10)};
  const AttackSubset all = MakeAttackSubset(test, 10, 1);
  EXPECT_EQ(all.attack.instances, test.instances);
  EXPECT_TRUE(all.dev.empty());
  EXPECT_THROW(MakeAttackSubset(test, 11, 1), Error);
  EXPECT_THROW(MakeAttackSubset(test, 0, 1), Error);
  EXPECT_TRUE(MakeAttackSubset(test, 0, 1, true).attack.empty());
}

TEST(TaskConfigTest, ParsesAndResolvesPaths) {
  testing::TempDir dir;
  testing::WriteFile(dir / "a.tsv", "1\t0\tx\n");
  testing::WriteFile(dir / "t.tsv", "1\t0\tx\n");
  testing::WriteFile(dir / "task.cfg",
                     "# comment\n"
                     "name = fc\n"
                     "train_path = t.tsv\n"
                     "attack_path = a.tsv  # trailing comment\n"
                     "pair_task = true\n");
  const TaskConfig config = LoadTaskConfig(dir / "task.cfg");
  EXPECT_EQ(config.name, "fc");
  EXPECT_EQ(config.attack_path, dir / "a.tsv");
  EXPECT_EQ(config.train_path, dir / "t.tsv");
  EXPECT_TRUE(config.pair_task);
}

TEST(TaskConfigTest, RejectsMissingAttackPathAndUnknownKeys) {
  std::istringstream no_attack("name = x\n");
  EXPECT_THROW(ParseTaskConfig(no_attack, "."), ConfigError);
  std::istringstream unknown("attack_path = x\ncolour = red\n");
  EXPECT_THROW(ParseTaskConfig(unknown, "."), Error);
}

}  // namespace
}  // namespace bodega
