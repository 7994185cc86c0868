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

#include "coreg/cli.h"

#include <cstdlib>
#include <exception>
#include <filesystem>
#include <ostream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "coreg/artifacts.h"
#include "coreg/config.h"
#include "coreg/experiment.h"
#include "coreg/trial.h"

namespace coreg {
namespace {

namespace fs = std::filesystem;

// Flags shared by the subcommands. Each is applied only when given.
struct Overrides {
  std::string config_path;
  std::vector<std::string> conditions;
  int trials = 0;
  int iterations = 0;
  std::uint64_t seed = 0;
  std::string out;
  bool dump_beliefs = false;
  int threads = 0;

  CLI::Option* trials_opt = nullptr;
  CLI::Option* iterations_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
};

bool Given(const CLI::Option* opt) { return opt != nullptr && opt->count() > 0; }

void AddConfigFlag(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config_path,
                  "INI config file, or 'default' for built-in values");
}

void AddConditionFlag(CLI::App* app, Overrides& o, bool multiple) {
  auto* opt = app->add_option("--condition", o.conditions,
                              multiple ? "Conditions to run (repeatable)"
                                       : "Dialogue condition");
  opt->check(CLI::IsMember({"mhng", "a-led", "b-led"}));
  if (!multiple) opt->expected(1);
}

void AddRunFlags(CLI::App* app, Overrides& o) {
  o.iterations_opt = app->add_option("--iterations", o.iterations,
                                     "Iterations per trial")
                         ->check(CLI::PositiveNumber);
  o.seed_opt = app->add_option("--seed", o.seed, "Root seed");
  o.out_opt = app->add_option("--out", o.out, "Output directory");
}

ExperimentConfig Resolve(const Overrides& o, const CliEnvironment& env) {
  ExperimentConfig config;
  if (!o.config_path.empty() && o.config_path != "default") {
    config = LoadConfig(o.config_path);
  }
  if (env.out_dir && !env.out_dir->empty()) config.output_dir = *env.out_dir;
  if (!o.conditions.empty()) {
    config.conditions.clear();
    for (const auto& name : o.conditions) config.conditions.push_back(ParseCondition(name));
  }
  if (Given(o.trials_opt)) config.trials = o.trials;
  if (Given(o.iterations_opt)) config.iterations = o.iterations;
  if (Given(o.seed_opt)) config.seed = o.seed;
  if (Given(o.out_opt)) config.output_dir = o.out;
  if (o.dump_beliefs) config.dump_beliefs = true;
  if (Given(o.threads_opt)) config.threads = o.threads;
  Validate(config);
  return config;
}

void PrintSummary(const Report& report, const std::vector<Condition>& order,
                  std::ostream& out) {
  out << fmt::format("{:<9} {:>6} {:>12} {:>10} {:>10}\n", "condition", "trials",
                     "mean_c_norm", "std", "sem");
  for (Condition c : order) {
    const auto it = report.summaries.find(c);
    if (it == report.summaries.end()) continue;
    const ConditionSummary& s = it->second;
    out << fmt::format("{:<9} {:>6} {:>12.4f} {:>10.4f} {:>10.4f}\n",
                       ConditionName(c), s.trials, s.c_norm.mean, s.c_norm.std,
                       s.c_norm.sem);
  }
}

int CmdRun(const Overrides& o, bool print_default, const CliEnvironment& env,
           std::ostream& out) {
  if (print_default) {
    out << SerializeConfig(ExperimentConfig{});
    return kExitOk;
  }
  const ExperimentConfig config = Resolve(o, env);
  const RunManifest manifest = RunExperiment(config);
  PrintSummary(BuildReport(manifest), config.conditions, out);
  out << fmt::format("wrote {} artifacts under {}\n", manifest.artifacts.size() + 1,
                     manifest.root.string());
  return kExitOk;
}

int CmdTrial(const Overrides& o, int trial, const CliEnvironment& env,
             std::ostream& out) {
  ExperimentConfig config = Resolve(o, env);
  const Condition condition =
      o.conditions.empty() ? Condition::kMhng : config.conditions.front();
  const TrialLog log = RunTrial(config, condition, trial);
  const std::string stem = TrialFileStem(condition, trial);
  const fs::path csv = fs::path(config.output_dir) / "trials" / (stem + ".csv");
  WriteTrialCsv(log, csv);
  out << "wrote " << csv.string() << '\n';
  if (config.dump_beliefs) {
    const fs::path beliefs =
        fs::path(config.output_dir) / "beliefs" / (stem + "_beliefs.csv");
    WriteBeliefDump(log, beliefs);
    out << "wrote " << beliefs.string() << '\n';
  }
  std::vector<double> c_norm;
  for (const auto& m : log.iterations) c_norm.push_back(m.c_norm);
  const IterationMetrics& last = log.iterations.back();
  out << fmt::format(
      "{} trial {} seed {}: mean c_norm {:.4f}, final jsd_z {:.4g}, "
      "kld_A {:.4g}, kld_B_sleep {:.4g}\n",
      ConditionName(condition), trial, log.trial_seed, Summarize(c_norm).mean,
      last.jsd_z, last.kld_A, last.kld_B_sleep);
  return kExitOk;
}

int CmdShuffle(const Overrides& o, int trial, const std::string& beliefs_path,
               int permutations, const CLI::Option* permutations_opt,
               const CliEnvironment& env, std::ostream& out) {
  ExperimentConfig config = Resolve(o, env);
  if (Given(permutations_opt)) config.shuffle_permutations = permutations;
  Validate(config);
  const Condition condition =
      o.conditions.empty() ? Condition::kMhng : config.conditions.front();

  std::vector<Categorical> parent, infant;
  if (!beliefs_path.empty()) {
    const BeliefDump dump = ReadBeliefDump(fs::path(beliefs_path));
    parent = dump.IterationBeliefs(AgentKind::kParent);
    infant = dump.IterationBeliefs(AgentKind::kInfant);
  } else {
    const TrialLog log = RunTrial(config, condition, trial);
    parent = log.IterationBeliefs(AgentKind::kParent);
    infant = log.IterationBeliefs(AgentKind::kInfant);
  }
  if (static_cast<int>(parent.size()) < config.auc_last_iteration) {
    throw std::invalid_argument(fmt::format(
        "need at least {} iterations of beliefs, have {}",
        config.auc_last_iteration, parent.size()));
  }
  const std::uint64_t stream = TrialSeed(config.seed, condition, trial);
  const ShuffleAuc auc = ComputeShuffleAuc(parent, infant, config, stream);
  out << fmt::format("window {}-{}: auc_original {} auc_shuffled {} ({} permutation{})\n",
                     config.auc_first_iteration, config.auc_last_iteration,
                     FormatReal(auc.original), FormatReal(auc.shuffled),
                     config.shuffle_permutations,
                     config.shuffle_permutations == 1 ? "" : "s");

  if (Given(o.out_opt)) {
    Rng rng(ShuffleStreamSeed(stream, 0));
    const auto original = JsdSeries(parent, infant);
    const auto shuffled = ShuffleControl(parent, infant, rng);
    std::string csv = "iteration,jsd_original,jsd_shuffled\n";
    for (std::size_t i = 0; i < original.size(); ++i) {
      csv += fmt::format("{},{},{}\n", i + 1, FormatReal(original[i]),
                         FormatReal(shuffled[i]));
    }
    const fs::path path = fs::path(config.output_dir) / "shuffle_control.csv";
    WriteTextFile(path, csv);
    out << "wrote " << path.string() << '\n';
  }
  return kExitOk;
}

int CmdReport(const Overrides& o, const CliEnvironment& env, std::ostream& out) {
  fs::path dir = "coreg_out";
  if (env.out_dir && !env.out_dir->empty()) dir = *env.out_dir;
  if (Given(o.out_opt)) dir = o.out;
  const RunManifest manifest = LoadManifest(dir);
  const Report report = BuildReport(manifest);
  WriteReport(manifest, report);
  PrintSummary(report, manifest.config.conditions, out);
  return kExitOk;
}

}  // namespace

CliEnvironment CliEnvironment::FromProcess() {
  CliEnvironment env;
  if (const char* v = std::getenv(kOutputDirEnv)) env.out_dir = v;
  return env;
}

int CliMain(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err, const CliEnvironment& env) {
  CLI::App app{"Caregiver-infant co-regulation simulator", "coreg"};
  app.require_subcommand(1);

  Overrides run_o, trial_o, shuffle_o, report_o;
  bool print_default = false;
  int trial_index = 0;
  int shuffle_trial = 0;
  std::string beliefs_path;
  int permutations = 1;

  auto* run = app.add_subcommand("run", "Run every configured condition and trial");
  AddConfigFlag(run, run_o);
  AddConditionFlag(run, run_o, true);
  run_o.trials_opt = run->add_option("--trials", run_o.trials, "Trials per condition")
                         ->check(CLI::PositiveNumber);
  AddRunFlags(run, run_o);
  run->add_flag("--dump-beliefs", run_o.dump_beliefs, "Write per-round belief dumps");
  run_o.threads_opt = run->add_option("--threads", run_o.threads,
                                      "Worker threads (0: hardware count)")
                          ->check(CLI::NonNegativeNumber);
  run->add_flag("--print-default-config", print_default,
                "Print the built-in configuration and exit");

  auto* trial = app.add_subcommand("trial", "Run a single trial");
  AddConfigFlag(trial, trial_o);
  AddConditionFlag(trial, trial_o, false);
  AddRunFlags(trial, trial_o);
  trial->add_option("--trial", trial_index, "Trial index")->check(CLI::NonNegativeNumber);
  trial->add_flag("--dump-beliefs", trial_o.dump_beliefs, "Write the belief dump");

  auto* shuffle = app.add_subcommand(
      "shuffle-control", "Compare JSD area against a temporally shuffled control");
  AddConfigFlag(shuffle, shuffle_o);
  AddConditionFlag(shuffle, shuffle_o, false);
  AddRunFlags(shuffle, shuffle_o);
  shuffle->add_option("--trial", shuffle_trial, "Trial index")
      ->check(CLI::NonNegativeNumber);
  shuffle->add_option("--beliefs", beliefs_path,
                      "Belief dump to analyse instead of running a trial")
      ->check(CLI::ExistingFile);
  auto* permutations_opt =
      shuffle->add_option("--permutations", permutations, "Shuffled permutations")
          ->check(CLI::PositiveNumber);

  auto* report = app.add_subcommand("report", "Rebuild aggregates of a finished run");
  report_o.out_opt = report->add_option("--out", report_o.out, "Run directory");

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("coreg");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "coreg: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (run->parsed()) return CmdRun(run_o, print_default, env, out);
    if (trial->parsed()) return CmdTrial(trial_o, trial_index, env, out);
    if (shuffle->parsed()) {
      return CmdShuffle(shuffle_o, shuffle_trial, beliefs_path, permutations,
                        permutations_opt, env, out);
    }
    if (report->parsed()) return CmdReport(report_o, env, out);
  } catch (const ConfigError& e) {
    err << "coreg: config error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "coreg: error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace coreg
