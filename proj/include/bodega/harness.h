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

// End-to-end runs: scenario selection, the per-instance attack loop, scoring,
// and the report / adversarial-example outputs.
//
// Instances are attacked in parallel by an OpenMP worker team. Each instance
// gets its own QueryCounter and an RNG stream derived from (seed, id), and
// results are reassembled in input order, so reports do not depend on the
// worker count.

#ifndef BODEGA_HARNESS_H_
#define BODEGA_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bodega/attacks.h"
#include "bodega/corpus.h"
#include "bodega/errors.h"
#include "bodega/scoring.h"
#include "bodega/victims.h"

namespace bodega {

enum class Scenario { kUntargeted, kTargeted };

// u | untargeted | t | targeted
std::optional<Scenario> ParseScenario(std::string_view name);
std::string_view ScenarioName(Scenario scenario);

struct ScenarioSubset {
  std::vector<Instance> instances;
  // Victim decision on each selected instance, in the same order.
  std::vector<Prediction> predictions;
};

// Untargeted keeps every instance; targeted keeps those with label 1 that the
// victim also labels 1. Victim calls made here are not attack queries.
// Throws Error when the targeted subset is empty.
ScenarioSubset SelectScenarioSubset(const Split& attack, const Victim& victim,
                                    Scenario scenario, int threads = 1);

struct InstanceResult {
  Instance instance;
  AttackOutcome outcome;
  ScoreBreakdown breakdown;
};

struct AeRecord {
  Instance original;
  std::string adversarial_text;
  std::optional<std::string> adversarial_part2;
  ScoreBreakdown breakdown;
  uint64_t queries = 0;
  // Word diff: deletions as [-...-], insertions as {+...+}.
  std::string highlighted;
};

struct RunResult {
  EvaluationReport report;
  std::vector<InstanceResult> results;
  std::vector<AeRecord> records;
};

struct RunInputs {
  const Split* attack = nullptr;
  const Victim* victim = nullptr;
  const Attacker* attacker = nullptr;
  SemanticScorer* scorer = nullptr;
  Scenario scenario = Scenario::kUntargeted;
  bool pair_task = false;
  uint64_t seed = 0;
  int workers = 1;
  std::string task_name = "task";
  std::string victim_name = "victim";
};

// Thrown when an instance fails mid-run; carries the results completed before
// the first failing instance (in input order).
class RunAborted : public Error {
 public:
  RunAborted(const std::string& what, std::vector<InstanceResult> partial)
      : Error(what), partial_(std::move(partial)) {}

  const std::vector<InstanceResult>& partial() const { return partial_; }

 private:
  std::vector<InstanceResult> partial_;
};

// Parallel over instances with `workers` OpenMP threads.
RunResult RunAttacks(const RunInputs& inputs);
// Single-threaded reference for RunAttacks.
RunResult RunAttacksSerial(const RunInputs& inputs);

// Report and AE records for a set of finished instances.
RunResult Summarize(const RunInputs& inputs,
                    std::vector<InstanceResult> results);

// Seed of the RNG stream used for one instance.
uint64_t InstanceSeed(uint64_t seed, std::string_view instance_id);

// ---------------------------------------------------------------------------
// Outputs

// Up to four decimals, trailing zeros dropped ("0.7", "20", "0.4467").
std::string FormatReportNumber(double value);

// Header line plus one data line; columns: task, attacker, victim, scenario,
// n, confusion, semantic, character, bodega, queries.
void WriteReportTsv(const EvaluationReport& report, std::ostream& out);
std::string ReportTsvLine(const EvaluationReport& report);
std::string FormatReportTable(const EvaluationReport& report);
void EmitReport(const EvaluationReport& report,
                const std::filesystem::path& path);

// One line per success: id, queries, bodega, semantic, character, original,
// adversarial, highlighted diff (text fields escaped as in split files).
void WriteAeDump(const std::vector<AeRecord>& records, std::ostream& out);
void EmitAeDump(const std::vector<AeRecord>& records,
                const std::filesystem::path& path);

// Word-level diff of whitespace-separated tokens.
std::string HighlightChanges(std::string_view original,
                             std::string_view modified);

// ---------------------------------------------------------------------------
// File-driven runs (the CLI's `run` subcommand)

struct ScorerSpec {
  // Empty means the built-in embedding scorer.
  std::string command;

  // builtin | cmd:<shell command>
  static ScorerSpec Parse(std::string_view text);
};

struct RunSpec {
  TaskConfig task;
  // linear | nb (train on the task's train split now) or a victim-v1 path.
  std::string victim = "linear";
  LinearTrainConfig linear;
  NaiveBayesConfig naive_bayes;
  AttackerKind attacker = AttackerKind::kDeepWordBug;
  AttackConfig attack;
  Scenario scenario = Scenario::kUntargeted;
  ScorerSpec scorer;
  uint64_t seed = 0;
  int workers = 1;
  std::filesystem::path report_path;
  std::filesystem::path ae_dump_path;
  // Override the task file's resource paths when set.
  std::filesystem::path embeddings_path;
  std::filesystem::path synonyms_path;
};

// Loads inputs, runs, and writes the report and AE dump. Setup problems throw
// ConfigError / ParseError / ValidationError before any attack starts. On a
// mid-run failure the completed results are written to
// `<report_path>.partial` and the RunAborted is rethrown.
RunResult Run(const RunSpec& spec);

}  // namespace bodega

#endif  // BODEGA_HARNESS_H_
