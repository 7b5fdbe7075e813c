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


#include "bodega/harness.h"

#include <omp.h>

#include <atomic>
#include <exception>
#include <fstream>
#include <memory>
#include <mutex>
#include <utility>

#include "bodega/random.h"
#include "bodega/resources.h"
#include "bodega/text.h"

namespace bodega {

std::optional<Scenario> ParseScenario(std::string_view name) {
  if (name == "u" || name == "untargeted") return Scenario::kUntargeted;
  if (name == "t" || name == "targeted") return Scenario::kTargeted;
  return std::nullopt;
}

std::string_view ScenarioName(Scenario scenario) {
  return scenario == Scenario::kTargeted ? "targeted" : "untargeted";
}

ScenarioSubset SelectScenarioSubset(const Split& attack, const Victim& victim,
                                    Scenario scenario, int threads) {
  std::vector<std::string> texts;
  texts.reserve(attack.size());
  for (const Instance& instance : attack.instances) {
    texts.push_back(ClassifierText(instance));
  }
  const std::vector<double> scores = ScoreTexts(victim, texts, threads);
  ScenarioSubset subset;
  for (size_t i = 0; i < attack.size(); ++i) {
    const Prediction prediction{scores[i], victim.Label(scores[i])};
    if (scenario == Scenario::kTargeted &&
        (attack.instances[i].label != 1 || prediction.label != 1)) {
      continue;
    }
    subset.instances.push_back(attack.instances[i]);
    subset.predictions.push_back(prediction);
  }
  if (subset.instances.empty()) {
    throw Error(scenario == Scenario::kTargeted
                    ? "no correctly-classified positive instances"
                    : "attack split is empty");
  }
  return subset;
}

uint64_t InstanceSeed(uint64_t seed, std::string_view instance_id) {
  return StreamSeed(seed, Fnv1a64(instance_id));
}

namespace {

void CheckInputs(const RunInputs& inputs) {
  if (inputs.attack == nullptr || inputs.victim == nullptr ||
      inputs.attacker == nullptr || inputs.scorer == nullptr) {
    throw ConfigError("run inputs are incomplete");
  }
  if (inputs.workers < 1) throw ConfigError("workers must be at least 1");
}

InstanceResult AttackOne(const RunInputs& inputs, const Instance& instance,
                         const Prediction& original) {
  QueryCounter counter(*inputs.victim,
                       inputs.attacker->config().max_queries);
  InstanceResult result;
  result.instance = instance;
  result.outcome = inputs.attacker->Attack(
      counter, instance, InstanceSeed(inputs.seed, instance.id));
  result.outcome.queries = counter.queries();
  // Verification re-predicts the original too; neither call is counted.
  const Prediction verified_original =
      result.outcome.succeeded
          ? inputs.victim->Predict(ClassifierText(instance))
          : original;
  result.breakdown = ScorePair(*inputs.victim, verified_original, instance,
                               result.outcome, *inputs.scorer,
                               inputs.pair_task);
  return result;
}

std::string Describe(const Instance& instance, const std::exception& e) {
  return "instance '" + instance.id + "': " + e.what();
}

RunResult RunWith(const RunInputs& inputs, int workers) {
  CheckInputs(inputs);
  const ScenarioSubset subset = SelectScenarioSubset(
      *inputs.attack, *inputs.victim, inputs.scenario, workers);
  const size_t n = subset.instances.size();
  std::vector<std::optional<InstanceResult>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<bool> failed{false};

  const auto n_signed = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers) \
    if (workers > 1)
  for (std::ptrdiff_t i = 0; i < n_signed; ++i) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      slots[i] = AttackOne(inputs, subset.instances[i], subset.predictions[i]);
    } catch (...) {
      errors[i] = std::current_exception();
      failed.store(true, std::memory_order_relaxed);
    }
  }

  std::vector<InstanceResult> results;
  results.reserve(n);
  if (failed.load()) {
    size_t first = 0;
    while (!errors[first]) ++first;
    std::string message;
    try {
      std::rethrow_exception(errors[first]);
    } catch (const std::exception& e) {
      message = Describe(subset.instances[first], e);
    } catch (...) {
      message = "instance '" + subset.instances[first].id + "': unknown error";
    }
    // The partial result is the completed prefix in input order.
    for (size_t i = 0; i < n && slots[i]; ++i) {
      results.push_back(std::move(*slots[i]));
    }
    throw RunAborted(message, std::move(results));
  }
  for (size_t i = 0; i < n; ++i) results.push_back(std::move(*slots[i]));
  return Summarize(inputs, std::move(results));
}

}  // namespace

RunResult RunAttacks(const RunInputs& inputs) {
  return RunWith(inputs, inputs.workers);
}

RunResult RunAttacksSerial(const RunInputs& inputs) {
  CheckInputs(inputs);
  const ScenarioSubset subset = SelectScenarioSubset(
      *inputs.attack, *inputs.victim, inputs.scenario, 1);
  std::vector<InstanceResult> results;
  results.reserve(subset.instances.size());
  for (size_t i = 0; i < subset.instances.size(); ++i) {
    try {
      results.push_back(
          AttackOne(inputs, subset.instances[i], subset.predictions[i]));
    } catch (const std::exception& e) {
      throw RunAborted(Describe(subset.instances[i], e), std::move(results));
    }
  }
  return Summarize(inputs, std::move(results));
}

RunResult Summarize(const RunInputs& inputs,
                    std::vector<InstanceResult> results) {
  RunResult run;
  std::vector<ScoreBreakdown> breakdowns;
  std::vector<uint64_t> queries;
  breakdowns.reserve(results.size());
  queries.reserve(results.size());
  for (const InstanceResult& result : results) {
    breakdowns.push_back(result.breakdown);
    queries.push_back(result.outcome.queries);
    if (result.breakdown.confusion != 1) continue;
    AeRecord record;
    record.original = result.instance;
    record.adversarial_text = *result.outcome.adversarial_text;
    record.adversarial_part2 = result.outcome.adversarial_part2;
    record.breakdown = result.breakdown;
    record.queries = result.outcome.queries;
    record.highlighted =
        HighlightChanges(result.instance.text, record.adversarial_text);
    if (result.instance.part2) {
      record.highlighted += kPairSeparator;
      record.highlighted += HighlightChanges(
          *result.instance.part2,
          record.adversarial_part2.value_or(*result.instance.part2));
    }
    run.records.push_back(std::move(record));
  }
  if (!results.empty()) run.report = Aggregate(breakdowns, queries);
  run.report.task = inputs.task_name;
  run.report.attacker = std::string(inputs.attacker->name());
  run.report.victim = inputs.victim_name;
  run.report.scenario = std::string(ScenarioName(inputs.scenario));
  run.results = std::move(results);
  return run;
}

ScorerSpec ScorerSpec::Parse(std::string_view text) {
  if (text == "builtin") return ScorerSpec{};
  constexpr std::string_view kPrefix = "cmd:";
  if (text.substr(0, kPrefix.size()) == kPrefix) {
    std::string command(Trim(text.substr(kPrefix.size())));
    if (command.empty()) throw ConfigError("scorer command is empty");
    return ScorerSpec{std::move(command)};
  }
  throw ConfigError("unknown scorer '" + std::string(text) +
                    "' (expected builtin or cmd:<command>)");
}

namespace {

std::string VictimName(const std::string& victim) {
  if (victim == "linear" || victim == "nb") return victim;
  return std::filesystem::path(victim).stem().string();
}

std::unique_ptr<Victim> PrepareVictim(const RunSpec& spec) {
  if (spec.victim == "linear" || spec.victim == "nb") {
    if (spec.task.train_path.empty()) {
      throw ConfigError("victim '" + spec.victim +
                        "' needs a training split (train_path)");
    }
    const Split train = LoadSplit(spec.task.train_path, SplitRole::kTrain);
    if (spec.victim == "linear") {
      return std::make_unique<LinearVictim>(TrainLinear(train, spec.linear));
    }
    return std::make_unique<NaiveBayesVictim>(
        TrainNaiveBayes(train, spec.naive_bayes));
  }
  if (!std::filesystem::exists(spec.victim)) {
    throw ConfigError("victim file not found: " + spec.victim);
  }
  return LoadVictim(spec.victim);
}

bool NeedsEmbeddings(AttackerKind kind) {
  return kind == AttackerKind::kTextFooler || kind == AttackerKind::kGenetic ||
         kind == AttackerKind::kPso;
}

void WritePartial(const RunInputs& inputs, const RunAborted& aborted,
                  const std::filesystem::path& report_path) {
  std::filesystem::path path = report_path;
  path += ".partial";
  std::ofstream out(path);
  if (!out) return;
  out << "# partial run: " << aborted.what() << "\n";
  out << "# completed instances: " << aborted.partial().size() << "\n";
  if (aborted.partial().empty()) return;
  const RunResult partial = Summarize(inputs, aborted.partial());
  WriteReportTsv(partial.report, out);
}

}  // namespace

RunResult Run(const RunSpec& spec) {
  if (spec.workers < 1) throw ConfigError("workers must be at least 1");
  if (spec.task.attack_path.empty()) {
    throw ConfigError("no attack split given");
  }
  spec.attack.Validate();
  const Split attack = LoadSplit(spec.task.attack_path, SplitRole::kAttack);
  const std::unique_ptr<Victim> victim = PrepareVictim(spec);

  const std::filesystem::path embeddings_path =
      spec.embeddings_path.empty() ? spec.task.embeddings_path
                                   : spec.embeddings_path;
  const std::filesystem::path synonyms_path =
      spec.synonyms_path.empty() ? spec.task.synonyms_path
                                 : spec.synonyms_path;
  const bool builtin_scorer = spec.scorer.command.empty();
  std::optional<EmbeddingTable> embeddings;
  if (NeedsEmbeddings(spec.attacker) || builtin_scorer) {
    if (embeddings_path.empty()) {
      throw ConfigError(
          builtin_scorer && !NeedsEmbeddings(spec.attacker)
              ? "the builtin scorer needs word embeddings (--embeddings)"
              : "attacker '" + std::string(AttackerName(spec.attacker)) +
                    "' needs word embeddings (--embeddings)");
    }
    embeddings = LoadEmbeddings(embeddings_path);
  }
  std::optional<SynonymLexicon> synonyms;
  if (spec.attacker == AttackerKind::kPwws) {
    if (synonyms_path.empty()) {
      throw ConfigError("attacker 'pwws' needs a synonym lexicon (--synonyms)");
    }
    synonyms = LoadSynonyms(synonyms_path);
  }

  AttackResources resources;
  if (embeddings) resources.embeddings = &*embeddings;
  if (synonyms) resources.synonyms = &*synonyms;
  const Attacker attacker(spec.attacker, spec.attack, resources);

  std::unique_ptr<SemanticScorer> scorer;
  if (builtin_scorer) {
    scorer = std::make_unique<EmbeddingSemanticScorer>(*embeddings);
  } else {
    scorer = std::make_unique<ExternalSemanticScorer>(spec.scorer.command);
  }

  RunInputs inputs;
  inputs.attack = &attack;
  inputs.victim = victim.get();
  inputs.attacker = &attacker;
  inputs.scorer = scorer.get();
  inputs.scenario = spec.scenario;
  inputs.pair_task = spec.task.pair_task;
  inputs.seed = spec.seed;
  inputs.workers = spec.workers;
  inputs.task_name = spec.task.name.empty() ? "task" : spec.task.name;
  inputs.victim_name = VictimName(spec.victim);

  RunResult result;
  try {
    result = RunAttacks(inputs);
  } catch (const RunAborted& aborted) {
    if (!spec.report_path.empty()) {
      WritePartial(inputs, aborted, spec.report_path);
    }
    throw;
  } catch (const Error& e) {
    if (!spec.report_path.empty()) {
      WritePartial(inputs, RunAborted(e.what(), {}), spec.report_path);
    }
    throw;
  }
  if (!spec.report_path.empty()) EmitReport(result.report, spec.report_path);
  if (!spec.ae_dump_path.empty()) EmitAeDump(result.records, spec.ae_dump_path);
  return result;
}

}  // namespace bodega
