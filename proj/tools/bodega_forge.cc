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


// bodega-forge: train victims, prepare splits, run attacks, score pairs.
//
// Exit codes: 0 success, 2 configuration or input error, 3 runtime abort.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "bodega/attacks.h"
#include "bodega/corpus.h"
#include "bodega/errors.h"
#include "bodega/harness.h"
#include "bodega/resources.h"
#include "bodega/scoring.h"
#include "bodega/text.h"
#include "bodega/victims.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

using bodega::ConfigError;

template <typename T>
T ParseValue(std::string_view key, std::string_view text) {
  T value{};
  const auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ConfigError("bad value for '" + std::string(key) + "': " +
                      std::string(text));
  }
  return value;
}

bool ParseBool(std::string_view key, std::string_view text) {
  if (text == "1" || text == "true") return true;
  if (text == "0" || text == "false") return false;
  throw ConfigError("bad value for '" + std::string(key) + "': " +
                    std::string(text));
}

std::pair<std::string, std::string> SplitSetting(const std::string& setting) {
  const size_t eq = setting.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("expected key=value, got '" + setting + "'");
  }
  return {bodega::Trim(setting.substr(0, eq)),
          bodega::Trim(setting.substr(eq + 1))};
}

// Victim training keys: epochs, learning_rate, l2, threshold, alpha,
// dimension, char_ngrams, ngram_min, ngram_max.
void SetVictimOption(std::string_view key, std::string_view value,
                     bodega::LinearTrainConfig& linear,
                     bodega::NaiveBayesConfig& nb) {
  if (key == "epochs") {
    linear.epochs = ParseValue<int>(key, value);
  } else if (key == "learning_rate") {
    linear.learning_rate = ParseValue<double>(key, value);
  } else if (key == "l2") {
    linear.l2 = ParseValue<double>(key, value);
  } else if (key == "threshold") {
    linear.threshold = nb.threshold = ParseValue<double>(key, value);
  } else if (key == "alpha") {
    nb.alpha = ParseValue<double>(key, value);
  } else if (key == "dimension") {
    linear.featurizer.dimension = ParseValue<size_t>(key, value);
  } else if (key == "char_ngrams") {
    linear.featurizer.char_ngrams = ParseBool(key, value);
  } else if (key == "ngram_min") {
    linear.featurizer.ngram_min = ParseValue<int>(key, value);
  } else if (key == "ngram_max") {
    linear.featurizer.ngram_max = ParseValue<int>(key, value);
  } else {
    throw ConfigError("unknown victim option '" + std::string(key) + "'");
  }
}

std::string ReadWholeFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
    text.pop_back();
  }
  return text;
}

bodega::Instance TextAsInstance(std::string id, const std::string& text,
                                bool pair_task) {
  bodega::Instance instance;
  instance.id = std::move(id);
  const size_t sep = text.find(bodega::kPairSeparator);
  if (pair_task && sep != std::string::npos) {
    instance.text = text.substr(0, sep);
    instance.part2 = text.substr(sep + bodega::kPairSeparator.size());
  } else {
    instance.text = text;
  }
  return instance;
}

void WriteSplitFile(const bodega::Split& split,
                    const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  bodega::SaveSplit(split, path);
}

// ---------------------------------------------------------------------------

struct RunArgs {
  std::string task;
  std::string train;
  std::string attack;
  std::string dev;
  bool pair_task = false;
  std::string name;
  std::string victim = "linear";
  std::string attacker;
  std::string scenario = "u";
  std::string scorer = "builtin";
  uint64_t seed = 0;
  int workers = 1;
  std::string report;
  std::string ae_dump;
  std::optional<uint64_t> max_queries;
  std::vector<std::string> settings;
  std::string embeddings;
  std::string synonyms;
};

int DoRun(const RunArgs& args) {
  bodega::RunSpec spec;
  if (!args.task.empty()) {
    spec.task = bodega::LoadTaskConfig(args.task);
  } else if (args.attack.empty()) {
    throw ConfigError("give --task or --attack");
  }
  if (!args.train.empty()) spec.task.train_path = args.train;
  if (!args.attack.empty()) spec.task.attack_path = args.attack;
  if (!args.dev.empty()) spec.task.dev_path = args.dev;
  if (args.pair_task) spec.task.pair_task = true;
  if (!args.name.empty()) spec.task.name = args.name;
  if (spec.task.name.empty()) spec.task.name = "task";

  spec.victim = args.victim;
  const auto attacker = bodega::ParseAttackerKind(args.attacker);
  if (!attacker) throw ConfigError("unknown attacker '" + args.attacker + "'");
  spec.attacker = *attacker;
  const auto scenario = bodega::ParseScenario(args.scenario);
  if (!scenario) throw ConfigError("unknown scenario '" + args.scenario + "'");
  spec.scenario = *scenario;
  spec.scorer = bodega::ScorerSpec::Parse(args.scorer);
  spec.seed = args.seed;
  spec.linear.seed = args.seed;
  spec.workers = args.workers;
  spec.report_path = args.report;
  spec.ae_dump_path = args.ae_dump;
  spec.embeddings_path = args.embeddings;
  spec.synonyms_path = args.synonyms;
  for (const std::string& setting : args.settings) {
    const auto [key, value] = SplitSetting(setting);
    constexpr std::string_view kVictimPrefix = "victim.";
    if (key.rfind(kVictimPrefix, 0) == 0) {
      SetVictimOption(std::string_view(key).substr(kVictimPrefix.size()),
                      value, spec.linear, spec.naive_bayes);
    } else {
      spec.attack.Set(key, value);
    }
  }
  if (args.max_queries) spec.attack.max_queries = args.max_queries;

  const bodega::RunResult result = bodega::Run(spec);
  std::cout << bodega::FormatReportTable(result.report);
  if (!args.report.empty()) std::cout << "report: " << args.report << "\n";
  if (!args.ae_dump.empty()) {
    std::cout << "adversarial examples: " << args.ae_dump << " ("
              << result.records.size() << ")\n";
  }
  return 0;
}

struct TrainArgs {
  std::string kind = "linear";
  std::string train;
  std::string dev;
  std::string out;
  uint64_t seed = 1;
  std::vector<std::string> settings;
};

int DoTrain(const TrainArgs& args) {
  bodega::LinearTrainConfig linear;
  bodega::NaiveBayesConfig nb;
  linear.seed = args.seed;
  for (const std::string& setting : args.settings) {
    const auto [key, value] = SplitSetting(setting);
    SetVictimOption(key, value, linear, nb);
  }
  const bodega::Split train =
      bodega::LoadSplit(args.train, bodega::SplitRole::kTrain);
  std::unique_ptr<bodega::Victim> victim;
  if (args.kind == "linear") {
    victim = std::make_unique<bodega::LinearVictim>(
        bodega::TrainLinear(train, linear));
  } else if (args.kind == "nb") {
    victim = std::make_unique<bodega::NaiveBayesVictim>(
        bodega::TrainNaiveBayes(train, nb));
  } else {
    throw ConfigError("unknown victim kind '" + args.kind +
                      "' (expected linear or nb)");
  }
  bodega::SaveVictim(*victim, args.out);
  std::cout << "train F1 " << bodega::FormatReportNumber(
                                  bodega::F1Score(*victim, train))
            << "\n";
  if (!args.dev.empty()) {
    const bodega::Split dev =
        bodega::LoadSplit(args.dev, bodega::SplitRole::kDev);
    std::cout << "dev F1 "
              << bodega::FormatReportNumber(bodega::F1Score(*victim, dev))
              << "\n";
  }
  std::cout << "wrote " << args.out << "\n";
  return 0;
}

struct ScorePairArgs {
  std::string original;
  std::string modified;
  std::string scorer = "builtin";
  std::string embeddings;
  std::string victim;
  bool pair_task = false;
};

int DoScorePair(const ScorePairArgs& args) {
  const bodega::ScorerSpec spec = bodega::ScorerSpec::Parse(args.scorer);
  std::optional<bodega::EmbeddingTable> embeddings;
  std::unique_ptr<bodega::SemanticScorer> scorer;
  if (spec.command.empty()) {
    if (args.embeddings.empty()) {
      throw ConfigError("the builtin scorer needs --embeddings");
    }
    embeddings = bodega::LoadEmbeddings(args.embeddings);
    scorer = std::make_unique<bodega::EmbeddingSemanticScorer>(*embeddings);
  } else {
    scorer = std::make_unique<bodega::ExternalSemanticScorer>(spec.command);
  }
  const bodega::Instance original =
      TextAsInstance("original", ReadWholeFile(args.original), args.pair_task);
  const bodega::Instance modified =
      TextAsInstance("modified", ReadWholeFile(args.modified), args.pair_task);

  std::vector<std::string> before{original.text};
  std::vector<std::string> after{modified.text};
  if (original.part2 || modified.part2) {
    before.push_back(original.part2.value_or(""));
    after.push_back(modified.part2.value_or(""));
  }
  const std::string joined_before = bodega::NormalizeForScoring(
      bodega::ClassifierText(original));
  const std::string joined_after = bodega::NormalizeForScoring(
      bodega::ClassifierText(modified));

  // Without a victim the pair is scored as if the decision changed.
  int confusion = 1;
  if (!args.victim.empty()) {
    const auto victim = bodega::LoadVictim(args.victim);
    confusion = victim->Predict(bodega::ClassifierText(original)).label !=
                        victim->Predict(bodega::ClassifierText(modified)).label
                    ? 1
                    : 0;
  }
  const double semantic =
      bodega::SemanticScore(*scorer, before, after, args.pair_task);
  const double character = bodega::CharScore(joined_before, joined_after);
  const double total = confusion * semantic * character;
  std::cout << "confusion\t" << confusion << "\n"
            << "semantic\t" << bodega::FormatReportNumber(semantic) << "\n"
            << "character\t" << bodega::FormatReportNumber(character) << "\n"
            << "bodega\t" << bodega::FormatReportNumber(total) << "\n"
            << "diff\t"
            << bodega::HighlightChanges(bodega::ClassifierText(original),
                                        bodega::ClassifierText(modified))
            << "\n";
  return 0;
}

struct SplitArgs {
  std::string input;
  std::string out_dir;
  uint64_t seed = 0;
  std::vector<double> fractions{0.8, 0.1, 0.1};
};

int DoSplit(const SplitArgs& args) {
  const bodega::Split all =
      bodega::LoadSplit(args.input, bodega::SplitRole::kTrain);
  if (args.fractions.size() != 3) {
    throw ConfigError("--fractions takes train,attack,dev");
  }
  const bodega::SplitTriple triple = bodega::RandomSplit(
      all.instances,
      bodega::SplitFractions{args.fractions[0], args.fractions[1],
                             args.fractions[2]},
      args.seed);
  const std::filesystem::path dir(args.out_dir);
  WriteSplitFile(triple.train, dir / "train.tsv");
  WriteSplitFile(triple.attack, dir / "attack.tsv");
  WriteSplitFile(triple.dev, dir / "dev.tsv");
  std::cout << "train " << triple.train.size() << ", attack "
            << triple.attack.size() << ", dev " << triple.dev.size() << "\n";
  return 0;
}

struct SubsetArgs {
  std::string test;
  size_t n = 0;
  uint64_t seed = 0;
  std::string attack_out;
  std::string dev_out;
  bool allow_empty = false;
};

int DoAttackSubset(const SubsetArgs& args) {
  const bodega::Split test =
      bodega::LoadSplit(args.test, bodega::SplitRole::kAttack);
  const bodega::AttackSubset subset =
      bodega::MakeAttackSubset(test, args.n, args.seed, args.allow_empty);
  WriteSplitFile(subset.attack, args.attack_out);
  if (!args.dev_out.empty()) WriteSplitFile(subset.dev, args.dev_out);
  std::cout << "attack " << subset.attack.size() << ", dev "
            << subset.dev.size() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adversarial robustness benchmark for credibility classifiers"};
  app.require_subcommand(1);

  RunArgs run;
  CLI::App* run_cmd = app.add_subcommand("run", "Attack a victim and score it");
  run_cmd->add_option("--task", run.task, "Task file (key = value lines)");
  run_cmd->add_option("--train", run.train, "Training split (TSV)");
  run_cmd->add_option("--attack", run.attack, "Attack split (TSV)");
  run_cmd->add_option("--dev", run.dev, "Development split (TSV)");
  run_cmd->add_flag("--pair-task", run.pair_task,
                    "Instances carry a second text segment");
  run_cmd->add_option("--name", run.name, "Task name for the report");
  run_cmd->add_option("--victim", run.victim,
                      "linear | nb (trained now) or a victim file")
      ->capture_default_str();
  run_cmd->add_option("--attacker", run.attacker,
                      "deepwordbug | pwws | textfooler | genetic | pso")
      ->required();
  run_cmd->add_option("--scenario", run.scenario, "u (untargeted) | t")
      ->capture_default_str();
  run_cmd->add_option("--scorer", run.scorer, "builtin | cmd:<command>")
      ->capture_default_str();
  run_cmd->add_option("--seed", run.seed)->capture_default_str();
  run_cmd->add_option("--workers", run.workers)->capture_default_str();
  run_cmd->add_option("--report", run.report, "Report TSV path");
  run_cmd->add_option("--ae-dump", run.ae_dump,
                      "Adversarial example dump path");
  run_cmd->add_option("--max-queries", run.max_queries,
                      "Per-instance query budget");
  run_cmd->add_option("--set", run.settings,
                      "Attacker option key=value (victim.<key> for training)");
  run_cmd->add_option("--embeddings", run.embeddings, "Word vector file");
  run_cmd->add_option("--synonyms", run.synonyms, "Synonym lexicon file");

  TrainArgs train;
  CLI::App* train_cmd =
      app.add_subcommand("train-victim", "Train and save a victim");
  train_cmd->add_option("--kind", train.kind, "linear | nb")
      ->capture_default_str();
  train_cmd->add_option("--train", train.train)->required();
  train_cmd->add_option("--dev", train.dev, "Report F1 on this split too");
  train_cmd->add_option("--out", train.out)->required();
  train_cmd->add_option("--seed", train.seed)->capture_default_str();
  train_cmd->add_option("--set", train.settings, "Training option key=value");

  ScorePairArgs score;
  CLI::App* score_cmd =
      app.add_subcommand("score-pair", "Score one original/modified pair");
  score_cmd->add_option("--original", score.original)->required();
  score_cmd->add_option("--modified", score.modified)->required();
  score_cmd->add_option("--scorer", score.scorer)->capture_default_str();
  score_cmd->add_option("--embeddings", score.embeddings);
  score_cmd->add_option("--victim", score.victim,
                        "Victim file used for the confusion score");
  score_cmd->add_flag("--pair-task", score.pair_task,
                      "Texts hold two segments separated by ' [SEP] '");

  SplitArgs split;
  CLI::App* split_cmd =
      app.add_subcommand("split", "Randomly split a corpus into three files");
  split_cmd->add_option("--input", split.input)->required();
  split_cmd->add_option("--out-dir", split.out_dir)->required();
  split_cmd->add_option("--seed", split.seed)->capture_default_str();
  split_cmd->add_option("--fractions", split.fractions, "train,attack,dev")
      ->delimiter(',')
      ->expected(3);

  SubsetArgs subset;
  CLI::App* subset_cmd = app.add_subcommand(
      "attack-subset", "Sample an attack subset from a test split");
  subset_cmd->add_option("--test", subset.test)->required();
  subset_cmd->add_option("--n", subset.n)->required();
  subset_cmd->add_option("--seed", subset.seed)->capture_default_str();
  subset_cmd->add_option("--attack-out", subset.attack_out)->required();
  subset_cmd->add_option("--dev-out", subset.dev_out);
  subset_cmd->add_flag("--allow-empty", subset.allow_empty);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run_cmd) return DoRun(run);
    if (*train_cmd) return DoTrain(train);
    if (*score_cmd) return DoScorePair(score);
    if (*split_cmd) return DoSplit(split);
    if (*subset_cmd) return DoAttackSubset(subset);
  } catch (const bodega::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const bodega::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const bodega::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "aborted: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}
