// Copyright 2026 The coreg Authors
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

// Multi-trial runs and their artifact tree:
//
//   <out>/config.ini                 canonical config snapshot
//   <out>/trials/<stem>.csv          per-round trial records
//   <out>/beliefs/<stem>_beliefs.csv optional belief dumps
//   <out>/summary.csv                per-condition C_norm statistics
//   <out>/curves.csv                 per-iteration mean metric curves
//   <out>/auc.csv                    per-trial original/shuffled JSD AUC
//   <out>/plots/*.gp                 gnuplot scripts
//   <out>/timings.json               wall-clock timings
//   <out>/manifest.json              everything above, plus seeds
//
// Every file except timings.json is a pure function of the config.

#ifndef COREG_EXPERIMENT_H_
#define COREG_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "coreg/config.h"
#include "coreg/metrics.h"
#include "coreg/trial.h"

namespace coreg {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::string_view kManifestFile = "manifest.json";

struct TrialEntry {
  Condition condition = Condition::kMhng;
  int trial = 0;
  std::uint64_t seed = 0;
  std::string csv;      // relative to the run root
  std::string beliefs;  // empty unless beliefs were dumped
};

struct RunManifest {
  std::filesystem::path root;  // run directory; not serialized
  ExperimentConfig config;
  std::string tool_version;
  std::vector<TrialEntry> trials;
  // Every artifact of the run relative to root, sorted; excludes the
  // manifest itself.
  std::vector<std::string> artifacts;
  std::string timings;
};

std::string SerializeManifest(const RunManifest& manifest);
RunManifest ParseManifest(std::string_view json, const std::filesystem::path& root);
// Accepts the run directory or the manifest file itself.
RunManifest LoadManifest(const std::filesystem::path& path);

// Runs every (condition, trial) pair of the config on a bounded worker pool
// and writes the artifact tree under config.output_dir. A failing trial
// aborts the run with its condition and index in the message.
RunManifest RunExperiment(const ExperimentConfig& config);

struct TrialAucRow {
  Condition condition = Condition::kMhng;
  int trial = 0;
  ShuffleAuc auc;
};

struct Report {
  std::map<Condition, ConditionSummary> summaries;
  std::vector<TrialAucRow> auc;
};

// Rebuilds the aggregates of a finished run from its trial CSVs. AUC rows
// come from auc.csv, or are recomputed from belief dumps when that file is
// missing and every trial has one.
Report BuildReport(const RunManifest& manifest);

std::string FormatSummaryCsv(const Report& report,
                             const std::vector<Condition>& order);
std::string FormatCurvesCsv(const Report& report,
                            const std::vector<Condition>& order);
std::string FormatAucCsv(const std::vector<TrialAucRow>& rows);
std::vector<TrialAucRow> ParseAucCsv(const std::filesystem::path& path);

// Writes summary.csv, curves.csv and auc.csv under the manifest root.
void WriteReport(const RunManifest& manifest, const Report& report);

}  // namespace coreg

#endif  // COREG_EXPERIMENT_H_
