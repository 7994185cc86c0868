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

#include "coreg/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>
#include "json.hpp"

#include "coreg/artifacts.h"
#include "coreg/plots.h"

namespace coreg {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

constexpr std::string_view kSummaryFile = "summary.csv";
constexpr std::string_view kCurvesFile = "curves.csv";
constexpr std::string_view kAucFile = "auc.csv";
constexpr std::string_view kConfigFile = "config.ini";
constexpr std::string_view kTimingsFile = "timings.json";

struct TrialJob {
  Condition condition;
  int trial;
};

struct TrialOutcome {
  std::vector<IterationMetrics> iterations;
  ShuffleAuc auc;
  double seconds = 0.0;
};

std::string RelativeCsv(Condition c, int trial) {
  return "trials/" + TrialFileStem(c, trial) + ".csv";
}

std::string RelativeBeliefs(Condition c, int trial) {
  return "beliefs/" + TrialFileStem(c, trial) + "_beliefs.csv";
}

int WorkerCount(int requested, std::size_t jobs) {
  int n = requested > 0 ? requested
                        : static_cast<int>(std::thread::hardware_concurrency());
  n = std::max(n, 1);
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(n), jobs));
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArtifactError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string SerializeManifest(const RunManifest& manifest) {
  json j;
  j["tool_version"] = manifest.tool_version;
  j["config"] = SerializeConfig(manifest.config);
  j["config_file"] = std::string(kConfigFile);
  j["root_seed"] = manifest.config.seed;
  json trials = json::array();
  for (const TrialEntry& t : manifest.trials) {
    json e;
    e["condition"] = std::string(ConditionName(t.condition));
    e["trial"] = t.trial;
    e["seed"] = t.seed;
    e["csv"] = t.csv;
    if (!t.beliefs.empty()) e["beliefs"] = t.beliefs;
    trials.push_back(std::move(e));
  }
  j["trials"] = std::move(trials);
  j["artifacts"] = manifest.artifacts;
  j["timings"] = manifest.timings;
  return j.dump(2) + "\n";
}

RunManifest ParseManifest(std::string_view text, const fs::path& root) {
  RunManifest m;
  m.root = root;
  try {
    const json j = json::parse(text);
    m.tool_version = j.at("tool_version").get<std::string>();
    m.config = ParseConfig(j.at("config").get<std::string>());
    for (const json& e : j.at("trials")) {
      TrialEntry t;
      t.condition = ParseCondition(e.at("condition").get<std::string>());
      t.trial = e.at("trial").get<int>();
      t.seed = e.at("seed").get<std::uint64_t>();
      t.csv = e.at("csv").get<std::string>();
      if (e.contains("beliefs")) t.beliefs = e.at("beliefs").get<std::string>();
      m.trials.push_back(std::move(t));
    }
    m.artifacts = j.at("artifacts").get<std::vector<std::string>>();
    m.timings = j.at("timings").get<std::string>();
  } catch (const json::exception& e) {
    throw ArtifactError(std::string("malformed manifest: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ArtifactError(std::string("malformed manifest: ") + e.what());
  } catch (const ConfigError& e) {
    throw ArtifactError(std::string("manifest config: ") + e.what());
  }
  return m;
}

RunManifest LoadManifest(const fs::path& path) {
  const fs::path file = fs::is_directory(path) ? path / kManifestFile : path;
  return ParseManifest(ReadFile(file), file.parent_path());
}

std::string FormatSummaryCsv(const Report& report,
                             const std::vector<Condition>& order) {
  std::string out = "condition,trials,mean_c_norm,std_c_norm,sem_c_norm\n";
  for (Condition c : order) {
    const auto it = report.summaries.find(c);
    if (it == report.summaries.end()) continue;
    const ConditionSummary& s = it->second;
    out += fmt::format("{},{},{},{},{}\n", ConditionName(c), s.trials,
                       FormatReal(s.c_norm.mean), FormatReal(s.c_norm.std),
                       FormatReal(s.c_norm.sem));
  }
  return out;
}

std::string FormatCurvesCsv(const Report& report,
                            const std::vector<Condition>& order) {
  std::string out = "condition,iteration,c_norm,jsd_z,kld_A,kld_B_sleep\n";
  for (Condition c : order) {
    const auto it = report.summaries.find(c);
    if (it == report.summaries.end()) continue;
    const ConditionSummary& s = it->second;
    for (std::size_t i = 0; i < s.c_norm_curve.size(); ++i) {
      out += fmt::format("{},{},{},{},{},{}\n", ConditionName(c), i + 1,
                         FormatReal(s.c_norm_curve[i]), FormatReal(s.jsd_curve[i]),
                         FormatReal(s.kld_A_curve[i]),
                         FormatReal(s.kld_B_sleep_curve[i]));
    }
  }
  return out;
}

std::string FormatAucCsv(const std::vector<TrialAucRow>& rows) {
  std::string out = "condition,trial,auc_original,auc_shuffled\n";
  for (const TrialAucRow& r : rows) {
    out += fmt::format("{},{},{},{}\n", ConditionName(r.condition), r.trial,
                       FormatReal(r.auc.original), FormatReal(r.auc.shuffled));
  }
  return out;
}

std::vector<TrialAucRow> ParseAucCsv(const fs::path& path) {
  std::istringstream in(ReadFile(path));
  std::string line;
  if (!std::getline(in, line) ||
      line != "condition,trial,auc_original,auc_shuffled") {
    throw ArtifactError(path.string() + ": unexpected header");
  }
  std::vector<TrialAucRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string condition, trial, original, shuffled;
    if (!std::getline(ls, condition, ',') || !std::getline(ls, trial, ',') ||
        !std::getline(ls, original, ',') || !std::getline(ls, shuffled)) {
      throw ArtifactError(path.string() + ": malformed row '" + line + "'");
    }
    try {
      rows.push_back(TrialAucRow{ParseCondition(condition), std::stoi(trial),
                                 ShuffleAuc{std::stod(original), std::stod(shuffled)}});
    } catch (const std::exception&) {
      throw ArtifactError(path.string() + ": malformed row '" + line + "'");
    }
  }
  return rows;
}

Report BuildReport(const RunManifest& manifest) {
  if (manifest.trials.empty()) throw ArtifactError("manifest lists no trials");
  std::map<Condition, std::vector<std::vector<IterationMetrics>>> groups;
  bool all_beliefs = true;
  for (const TrialEntry& t : manifest.trials) {
    const TrialCsv csv = ReadTrialCsv(manifest.root / t.csv);
    if (csv.condition != t.condition || csv.trial != t.trial) {
      throw ArtifactError(t.csv + ": does not match its manifest entry");
    }
    groups[t.condition].push_back(IterationMetricsFromRounds(csv.rounds));
    all_beliefs = all_beliefs && !t.beliefs.empty();
  }
  Report report;
  for (Condition c : manifest.config.conditions) {
    const auto it = groups.find(c);
    if (it == groups.end()) {
      throw ArtifactError("no trials for condition " + std::string(ConditionName(c)));
    }
    report.summaries.emplace(
        c, SummarizeTrials(std::string(ConditionName(c)), it->second));
  }
  // Runs shorter than the AUC window have no AUC rows.
  if (!AucWindowFits(manifest.config)) return report;
  if (fs::exists(manifest.root / kAucFile)) {
    report.auc = ParseAucCsv(manifest.root / kAucFile);
  } else if (all_beliefs) {
    for (const TrialEntry& t : manifest.trials) {
      const BeliefDump dump = ReadBeliefDump(manifest.root / t.beliefs);
      report.auc.push_back(TrialAucRow{
          t.condition, t.trial,
          ComputeShuffleAuc(dump.IterationBeliefs(AgentKind::kParent),
                            dump.IterationBeliefs(AgentKind::kInfant),
                            manifest.config, t.seed)});
    }
  }
  return report;
}

void WriteReport(const RunManifest& manifest, const Report& report) {
  const auto& order = manifest.config.conditions;
  WriteTextFile(manifest.root / kSummaryFile, FormatSummaryCsv(report, order));
  WriteTextFile(manifest.root / kCurvesFile, FormatCurvesCsv(report, order));
  WriteTextFile(manifest.root / kAucFile, FormatAucCsv(report.auc));
}

RunManifest RunExperiment(const ExperimentConfig& config) {
  Validate(config);
  using Clock = std::chrono::steady_clock;
  const auto run_start = Clock::now();

  RunManifest manifest;
  manifest.root = config.output_dir;
  manifest.config = config;
  manifest.tool_version = std::string(kToolVersion);
  manifest.timings = std::string(kTimingsFile);
  fs::create_directories(manifest.root);

  std::vector<TrialJob> jobs;
  for (Condition c : config.conditions) {
    for (int t = 0; t < config.trials; ++t) jobs.push_back(TrialJob{c, t});
  }

  std::vector<TrialOutcome> outcomes(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size() || failed.load()) return;
      const TrialJob& job = jobs[i];
      try {
        const auto start = Clock::now();
        const TrialLog log = RunTrial(config, job.condition, job.trial);
        const fs::path csv = manifest.root / RelativeCsv(job.condition, job.trial);
        WriteTrialCsv(log, csv);
        if (config.dump_beliefs) {
          WriteBeliefDump(log,
                          manifest.root / RelativeBeliefs(job.condition, job.trial));
        }
        if (AucWindowFits(config)) outcomes[i].auc = ComputeShuffleAuc(log, config);
        // Aggregate from the written rows so that `report` reproduces the
        // run's summaries exactly.
        outcomes[i].iterations = IterationMetricsFromRounds(ReadTrialCsv(csv).rounds);
        outcomes[i].seconds =
            std::chrono::duration<double>(Clock::now() - start).count();
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true);
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const int workers = WorkerCount(config.threads, jobs.size());
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!errors[i]) continue;
    const std::string who = fmt::format("trial {} of condition {}", jobs[i].trial,
                                        ConditionName(jobs[i].condition));
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw std::runtime_error(who + " failed: " + e.what());
    } catch (...) {
      throw std::runtime_error(who + " failed");
    }
  }

  Report report;
  std::map<Condition, std::vector<std::vector<IterationMetrics>>> groups;
  json timing_rows = json::array();
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const TrialJob& job = jobs[i];
    TrialEntry entry{job.condition, job.trial,
                     TrialSeed(config.seed, job.condition, job.trial),
                     RelativeCsv(job.condition, job.trial), ""};
    if (config.dump_beliefs) entry.beliefs = RelativeBeliefs(job.condition, job.trial);
    manifest.trials.push_back(entry);
    groups[job.condition].push_back(std::move(outcomes[i].iterations));
    if (AucWindowFits(config)) {
      report.auc.push_back(TrialAucRow{job.condition, job.trial, outcomes[i].auc});
    }
    timing_rows.push_back({{"condition", std::string(ConditionName(job.condition))},
                           {"trial", job.trial},
                           {"seconds", outcomes[i].seconds}});
  }
  for (auto& [c, trials] : groups) {
    report.summaries.emplace(c, SummarizeTrials(std::string(ConditionName(c)), trials));
  }
  WriteReport(manifest, report);
  WriteTextFile(manifest.root / kConfigFile, SerializeConfig(config));

  for (const TrialEntry& t : manifest.trials) {
    manifest.artifacts.push_back(t.csv);
    if (!t.beliefs.empty()) manifest.artifacts.push_back(t.beliefs);
  }
  for (std::string_view f : {kSummaryFile, kCurvesFile, kAucFile, kConfigFile,
                             kTimingsFile}) {
    manifest.artifacts.emplace_back(f);
  }
  for (const fs::path& p : EmitPlots(manifest)) {
    manifest.artifacts.push_back(p.lexically_relative(manifest.root).generic_string());
  }
  std::sort(manifest.artifacts.begin(), manifest.artifacts.end());

  json timings;
  timings["trials"] = std::move(timing_rows);
  timings["total_seconds"] =
      std::chrono::duration<double>(Clock::now() - run_start).count();
  timings["threads"] = WorkerCount(config.threads, jobs.size());
  WriteTextFile(manifest.root / kTimingsFile, timings.dump(2) + "\n");
  WriteTextFile(manifest.root / kManifestFile, SerializeManifest(manifest));
  return manifest;
}

}  // namespace coreg
