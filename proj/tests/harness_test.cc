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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "coreg/artifacts.h"
#include "coreg/config.h"
#include "coreg/experiment.h"
#include "coreg/plots.h"

namespace coreg {
namespace {

namespace fs = std::filesystem;

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Every regular file under root, keyed by its relative path.
std::map<std::string, std::string> Tree(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) {
      out[e.path().lexically_relative(root).generic_string()] = Slurp(e.path());
    }
  }
  return out;
}

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() /
            (std::string("coreg_harness_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

ExperimentConfig Small(const fs::path& out, int trials = 2, int iterations = 60) {
  ExperimentConfig c;
  c.trials = trials;
  c.iterations = iterations;
  c.output_dir = out.string();
  return c;
}

TEST(ConfigTest, DefaultsRoundTrip) {
  const ExperimentConfig c;
  EXPECT_EQ(c.trials, 10);
  EXPECT_EQ(c.iterations, 1000);
  EXPECT_EQ(c.dynamics.branch_probability, 0.2);
  const std::string text = SerializeConfig(c);
  EXPECT_EQ(ParseConfig(text), c);
  EXPECT_EQ(SerializeConfig(ParseConfig(text)), text);
}

TEST(ConfigTest, NormalizesHandWrittenFile) {
  const std::string text =
      "; comment\n"
      "[experiment]\n"
      "  trials =   3  \n"
      "conditions = b-led,mhng\n"
      "current_symbol = fresh\n"
      "[agent]\n"
      "dirichlet_prior = 0.5\n"
      "[preference]\n"
      "normalization = softmax\n";
  const ExperimentConfig c = ParseConfig(text);
  EXPECT_EQ(c.trials, 3);
  EXPECT_EQ(c.conditions, (std::vector<Condition>{Condition::kBLed, Condition::kMhng}));
  EXPECT_EQ(c.current_symbol, CurrentSymbol::kFresh);
  EXPECT_EQ(c.dirichlet_prior, 0.5);
  EXPECT_EQ(c.preference_normalization, PreferenceNormalization::kSoftmax);
  EXPECT_EQ(c.iterations, 1000);
  const std::string normalized = SerializeConfig(c);
  EXPECT_EQ(SerializeConfig(ParseConfig(normalized)), normalized);
  EXPECT_NE(normalized.find("conditions = b-led, mhng"), std::string::npos);
}

TEST(ConfigTest, ExplicitPreferenceValuesRoundTrip) {
  ExperimentConfig c;
  c.preference.explicit_values = std::vector<double>(36, 0.5);
  (*c.preference.explicit_values)[7] = 2.25;
  EXPECT_EQ(ParseConfig(SerializeConfig(c)), c);
}

TEST(ConfigTest, RejectsInvalidValues) {
  EXPECT_THROW(ParseConfig("[experiment]\ntrials = 0\n"), ConfigError);
  EXPECT_THROW(ParseConfig("[experiment]\niterations = -1\n"), ConfigError);
  EXPECT_THROW(ParseConfig("[environment]\nbranch_probability = 1.5\n"), ConfigError);
  EXPECT_THROW(ParseConfig("[preference]\nvalues = 1, 2, 3\n"), ConfigError);
  EXPECT_THROW(ParseConfig("[agent]\ndirichlet_prior = 0\n"), ConfigError);
  EXPECT_THROW(ParseConfig("[experiment]\nconditions = mhng, mhng\n"), ConfigError);
  EXPECT_THROW(ParseConfig("[experiment]\nconditions = both\n"), ConfigError);
  EXPECT_THROW(ParseConfig("[experiment]\ntrials = ten\n"), ConfigError);
  EXPECT_THROW(ParseConfig("[experiment]\ncurrent_symbol = sometimes\n"), ConfigError);
  EXPECT_THROW(ParseConfig("[experiment]\nbogus = 1\n"), ConfigError);
  EXPECT_THROW(ParseConfig("[metrics]\nauc_first_iteration = 50\n"), ConfigError);
  EXPECT_THROW(LoadConfig("/nonexistent/coreg.ini"), ConfigError);

  std::vector<double> bad(36, 1.0);
  bad[3] = 0.0;
  ExperimentConfig c;
  c.preference.explicit_values = bad;
  EXPECT_THROW(Validate(c), ConfigError);
}

TEST(TrialTest, SeedsDependOnlyOnRootConditionAndIndex) {
  EXPECT_EQ(TrialSeed(42, Condition::kMhng, 3),
            DeriveSeed(42, static_cast<std::uint64_t>(ConditionId(Condition::kMhng)), 3));
  EXPECT_NE(TrialSeed(42, Condition::kMhng, 3), TrialSeed(42, Condition::kALed, 3));
  EXPECT_NE(TrialSeed(42, Condition::kMhng, 3), TrialSeed(42, Condition::kMhng, 4));
  EXPECT_NE(TrialSeed(42, Condition::kMhng, 3), TrialSeed(43, Condition::kMhng, 3));
}

TEST(TrialTest, SingleIterationHasTwoRounds) {
  ExperimentConfig c;
  c.iterations = 1;
  const TrialLog log = RunTrial(c, Condition::kMhng, 0);
  ASSERT_EQ(log.iterations.size(), 1u);
  ASSERT_EQ(log.rounds.size(), 2u);
  EXPECT_EQ(log.rounds[0].round, 1);
  EXPECT_EQ(log.rounds[1].round, 2);
  EXPECT_EQ(log.rounds[0].dialogue.speaker, AgentKind::kInfant);
  EXPECT_EQ(log.iterations[0].c_norm, log.rounds[1].c_norm);
  EXPECT_EQ(log.parent_beliefs.size(), 2u);
}

TEST(TrialTest, SameConfigGivesByteIdenticalCsv) {
  ExperimentConfig c;
  c.iterations = 120;
  for (Condition cond : kAllConditions) {
    std::ostringstream a, b, da, db;
    const TrialLog la = RunTrial(c, cond, 2);
    const TrialLog lb = RunTrial(c, cond, 2);
    WriteTrialCsv(la, a);
    WriteTrialCsv(lb, b);
    WriteBeliefDump(la, da);
    WriteBeliefDump(lb, db);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(da.str(), db.str());
  }
}

TEST(TrialTest, IterationIndicesAreMonotone) {
  ExperimentConfig c;
  c.iterations = 40;
  const TrialLog log = RunTrial(c, Condition::kBLed, 1);
  ASSERT_EQ(log.iterations.size(), 40u);
  for (int i = 0; i < 40; ++i) EXPECT_EQ(log.iterations[i].iteration, i + 1);
  for (const RoundLog& r : log.rounds) {
    EXPECT_GT(r.c_norm, 0.0);
    EXPECT_LE(r.c_norm, 1.0);
    EXPECT_LE(r.jsd_z, std::log(2.0) + 1e-9);
  }
}

TEST(TrialTest, DefaultMhngTrialLearnsBothModels) {
  const TrialLog log = RunTrial(ExperimentConfig{}, Condition::kMhng, 0);
  ASSERT_EQ(log.iterations.size(), 1000u);
  const IterationMetrics& first = log.iterations.front();
  const IterationMetrics& last = log.iterations.back();
  EXPECT_LT(last.kld_A, 0.2 * first.kld_A);
  EXPECT_LT(last.kld_B_sleep, 0.2 * first.kld_B_sleep);
}

TEST(ArtifactTest, TrialCsvRoundTrip) {
  ExperimentConfig c;
  c.iterations = 30;
  const TrialLog log = RunTrial(c, Condition::kALed, 4);
  std::stringstream s;
  WriteTrialCsv(log, s);
  const std::string text = s.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), kTrialCsvHeader);
  const TrialCsv csv = ReadTrialCsv(s);
  EXPECT_EQ(csv.condition, Condition::kALed);
  EXPECT_EQ(csv.trial, 4);
  ASSERT_EQ(csv.rounds.size(), log.rounds.size());
  for (std::size_t i = 0; i < csv.rounds.size(); ++i) {
    const RoundLog& a = csv.rounds[i];
    const RoundLog& b = log.rounds[i];
    EXPECT_EQ(a.iteration, b.iteration);
    EXPECT_EQ(a.dialogue.shared_w, b.dialogue.shared_w);
    EXPECT_EQ(a.dialogue.action, b.dialogue.action);
    EXPECT_EQ(a.true_state, b.true_state);
    EXPECT_EQ(a.rare_branch, b.rare_branch);
    EXPECT_NEAR(a.jsd_z, b.jsd_z, 1e-8 * std::max(1.0, b.jsd_z));
  }
  const auto metrics = IterationMetricsFromRounds(csv.rounds);
  ASSERT_EQ(metrics.size(), log.iterations.size());
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    EXPECT_EQ(metrics[i].rare_branch, log.iterations[i].rare_branch);
  }
  // Rewriting the parsed rows reproduces the file.
  TrialLog again;
  again.condition = csv.condition;
  again.trial = csv.trial;
  again.rounds = csv.rounds;
  std::ostringstream t;
  WriteTrialCsv(again, t);
  EXPECT_EQ(t.str(), text);
}

TEST(ArtifactTest, CsvErrorsAreReported) {
  std::istringstream empty("");
  EXPECT_THROW(ReadTrialCsv(empty), ArtifactError);
  std::istringstream short_row(std::string(kTrialCsvHeader) + "\nmhng,0,1\n");
  EXPECT_THROW(ReadTrialCsv(short_row), ArtifactError);
  EXPECT_THROW(ReadTrialCsv(fs::path("/nonexistent/t.csv")), ArtifactError);
  std::istringstream bad_dump("iteration,round,agent,z0\n1,1,parent,1\n");
  EXPECT_THROW(ReadBeliefDump(bad_dump), ArtifactError);
}

TEST(ArtifactTest, BeliefDumpRoundTrip) {
  ExperimentConfig c;
  c.iterations = 25;
  const TrialLog log = RunTrial(c, Condition::kMhng, 1);
  std::stringstream s;
  WriteBeliefDump(log, s);
  const BeliefDump dump = ReadBeliefDump(s);
  ASSERT_EQ(dump.parent.size(), 50u);
  for (std::size_t i = 0; i < dump.parent.size(); ++i) {
    EXPECT_LE((dump.parent[i].probs() - log.parent_beliefs[i].probs()).cwiseAbs().maxCoeff(),
              1e-15);
    EXPECT_LE((dump.infant[i].probs() - log.infant_beliefs[i].probs()).cwiseAbs().maxCoeff(),
              1e-15);
  }
  const auto a = dump.IterationBeliefs(AgentKind::kInfant);
  const auto b = log.IterationBeliefs(AgentKind::kInfant);
  ASSERT_EQ(a.size(), 25u);
  ASSERT_EQ(b.size(), 25u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_LE((a[i].probs() - b[i].probs()).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(ShuffleAucTest, PermutationStreamsAreSeeded) {
  ExperimentConfig c;
  c.iterations = 60;
  const TrialLog log = RunTrial(c, Condition::kMhng, 0);
  const ShuffleAuc a = ComputeShuffleAuc(log, c);
  const ShuffleAuc b = ComputeShuffleAuc(log, c);
  EXPECT_EQ(a.original, b.original);
  EXPECT_EQ(a.shuffled, b.shuffled);
  EXPECT_EQ(a.original,
            AucWindow(JsdSeries(log.IterationBeliefs(AgentKind::kParent),
                                log.IterationBeliefs(AgentKind::kInfant)),
                      19, 49));
  c.shuffle_permutations = 4;
  const ShuffleAuc avg = ComputeShuffleAuc(log, c);
  EXPECT_EQ(avg.original, a.original);
  EXPECT_NE(avg.shuffled, a.shuffled);
  EXPECT_NE(ShuffleStreamSeed(log.trial_seed, 0), ShuffleStreamSeed(log.trial_seed, 1));
}

TEST(AggregateTest, GroupsByConditionAndRejectsMissingGroups) {
  ExperimentConfig c;
  c.iterations = 10;
  std::vector<TrialLog> logs;
  for (int t = 0; t < 3; ++t) logs.push_back(RunTrial(c, Condition::kMhng, t));
  logs.push_back(RunTrial(c, Condition::kBLed, 0));
  const auto summary = AggregateConditions(logs);
  EXPECT_EQ(summary.at(Condition::kMhng).trials, 3);
  EXPECT_EQ(summary.at(Condition::kBLed).trials, 1);
  EXPECT_THROW(AggregateConditions(logs, {Condition::kALed}), std::invalid_argument);
  EXPECT_THROW(AggregateConditions({}), std::invalid_argument);
}

TEST(ExperimentTest, ThirtyCsvsSummaryAndCompleteManifest) {
  TempDir dir;
  ExperimentConfig c = Small(dir.path() / "run", 10, 60);
  const RunManifest m = RunExperiment(c);
  EXPECT_EQ(m.trials.size(), 30u);
  int csvs = 0;
  for (const auto& e : fs::directory_iterator(dir.path() / "run" / "trials")) {
    csvs += e.path().extension() == ".csv";
  }
  EXPECT_EQ(csvs, 30);
  EXPECT_TRUE(fs::exists(dir.path() / "run" / "summary.csv"));

  // Every listed artifact exists, and the manifest parses back to itself.
  for (const std::string& a : m.artifacts) {
    EXPECT_TRUE(fs::exists(m.root / a)) << a;
  }
  const RunManifest loaded = LoadManifest(dir.path() / "run");
  EXPECT_EQ(loaded.config, m.config);
  EXPECT_EQ(loaded.artifacts, m.artifacts);
  EXPECT_EQ(loaded.tool_version, kToolVersion);
  ASSERT_EQ(loaded.trials.size(), m.trials.size());
  for (std::size_t i = 0; i < m.trials.size(); ++i) {
    EXPECT_EQ(loaded.trials[i].seed,
              TrialSeed(c.seed, loaded.trials[i].condition, loaded.trials[i].trial));
    EXPECT_EQ(loaded.trials[i].csv, m.trials[i].csv);
    EXPECT_NO_THROW(ReadTrialCsv(m.root / m.trials[i].csv));
  }
  EXPECT_EQ(SerializeManifest(loaded), Slurp(m.root / kManifestFile));
  EXPECT_EQ(LoadConfig(m.root / "config.ini"), c);

  const Report report = BuildReport(loaded);
  EXPECT_EQ(report.summaries.size(), 3u);
  EXPECT_EQ(report.auc.size(), 30u);
  EXPECT_EQ(FormatSummaryCsv(report, c.conditions), Slurp(m.root / "summary.csv"));
  EXPECT_EQ(FormatCurvesCsv(report, c.conditions), Slurp(m.root / "curves.csv"));
}

TEST(ExperimentTest, ParallelAndSerialRunsProduceIdenticalArtifacts) {
  TempDir dir;
  ExperimentConfig serial = Small(dir.path() / "serial", 3, 60);
  serial.threads = 1;
  serial.dump_beliefs = true;
  ExperimentConfig parallel = serial;
  parallel.output_dir = (dir.path() / "parallel").string();
  parallel.threads = 4;
  RunExperiment(serial);
  RunExperiment(parallel);
  auto a = Tree(dir.path() / "serial");
  auto b = Tree(dir.path() / "parallel");
  // Timings are wall-clock; the config snapshot records the thread count and
  // output directory, which differ by construction.
  for (auto* t : {&a, &b}) {
    t->erase("timings.json");
    t->erase("config.ini");
    t->erase("manifest.json");
  }
  EXPECT_EQ(a.size(), b.size());
  for (const auto& [path, body] : a) {
    ASSERT_TRUE(b.count(path)) << path;
    EXPECT_EQ(body, b.at(path)) << path;
  }
  RunManifest ma = LoadManifest(dir.path() / "serial");
  RunManifest mb = LoadManifest(dir.path() / "parallel");
  ma.config.threads = mb.config.threads;
  ma.config.output_dir = mb.config.output_dir;
  ma.root = mb.root;
  EXPECT_EQ(SerializeManifest(ma), SerializeManifest(mb));
}

TEST(ExperimentTest, RepeatedRunIsByteIdentical) {
  TempDir dir;
  const ExperimentConfig c = Small(dir.path() / "run", 2, 60);
  RunExperiment(c);
  auto first = Tree(dir.path() / "run");
  RunExperiment(c);
  auto second = Tree(dir.path() / "run");
  first.erase("timings.json");
  second.erase("timings.json");
  EXPECT_EQ(first, second);
}

TEST(ExperimentTest, ShortRunsSkipTheAucWindow) {
  TempDir dir;
  const RunManifest m = RunExperiment(Small(dir.path() / "run", 1, 5));
  EXPECT_EQ(Slurp(m.root / "auc.csv"), "condition,trial,auc_original,auc_shuffled\n");
  EXPECT_TRUE(BuildReport(m).auc.empty());
}

TEST(ExperimentTest, ReportFromBeliefDumpsMatchesRunAuc) {
  TempDir dir;
  ExperimentConfig c = Small(dir.path() / "run", 2, 60);
  c.dump_beliefs = true;
  const RunManifest m = RunExperiment(c);
  const auto recorded = ParseAucCsv(m.root / "auc.csv");
  fs::remove(m.root / "auc.csv");
  const Report rebuilt = BuildReport(LoadManifest(m.root));
  ASSERT_EQ(rebuilt.auc.size(), recorded.size());
  for (std::size_t i = 0; i < recorded.size(); ++i) {
    // auc.csv keeps 9 significant digits.
    EXPECT_NEAR(rebuilt.auc[i].auc.original, recorded[i].auc.original,
                1e-8 * recorded[i].auc.original);
    EXPECT_NEAR(rebuilt.auc[i].auc.shuffled, recorded[i].auc.shuffled,
                1e-8 * recorded[i].auc.shuffled);
  }
}

TEST(ExperimentTest, TrialErrorsCarryTheirIdentity) {
  TempDir dir;
  ExperimentConfig c = Small(dir.path() / "run", 3, 5);
  c.conditions = {Condition::kALed};
  // A directory where the CSV should go makes that one trial fail to write.
  fs::create_directories(dir.path() / "run" / "trials" / "a-led_trial01.csv");
  try {
    RunExperiment(c);
    FAIL() << "expected the run to fail";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("trial 1 of condition a-led"), std::string::npos)
        << e.what();
  }
}

TEST(ManifestTest, ParseErrorsAreArtifactErrors) {
  EXPECT_THROW(ParseManifest("{", "."), ArtifactError);
  EXPECT_THROW(ParseManifest("{\"tool_version\": 3}", "."), ArtifactError);
  EXPECT_THROW(LoadManifest("/nonexistent/run"), ArtifactError);
}

TEST(PlotTest, FourScriptsWithRareArrowsAndAucWindow) {
  TempDir dir;
  const RunManifest m = RunExperiment(Small(dir.path() / "run", 2, 80));
  const fs::path plots = m.root / "plots";
  for (const char* f : {"cnorm_bars.gp", "kld_curves.gp", "jsd_trajectory.gp",
                        "auc_bars.gp"}) {
    EXPECT_TRUE(fs::exists(plots / f)) << f;
  }
  int scripts = 0;
  for (const auto& e : fs::directory_iterator(plots)) scripts += e.path().extension() == ".gp";
  EXPECT_EQ(scripts, 4);

  const TrialEntry* rep = nullptr;
  for (const TrialEntry& t : m.trials) {
    if (t.condition == Condition::kMhng && t.trial == 0) rep = &t;
  }
  ASSERT_NE(rep, nullptr);
  const auto iterations = IterationMetricsFromRounds(ReadTrialCsv(m.root / rep->csv).rounds);
  const std::string jsd = Slurp(plots / "jsd_trajectory.gp");
  int rare = 0;
  for (const IterationMetrics& it : iterations) {
    if (!it.rare_branch) continue;
    ++rare;
    EXPECT_NE(jsd.find("set arrow from " + std::to_string(it.iteration) + ", graph 1"),
              std::string::npos)
        << it.iteration;
  }
  std::size_t arrows = 0;
  for (std::size_t pos = 0; (pos = jsd.find("set arrow", pos)) != std::string::npos; ++pos) {
    ++arrows;
  }
  EXPECT_GT(rare, 0);
  EXPECT_EQ(arrows, static_cast<std::size_t>(rare));

  const std::string auc = Slurp(plots / "auc_bars.gp");
  EXPECT_NE(auc.find("window_first = 20\n"), std::string::npos);
  EXPECT_NE(auc.find("window_last = 50\n"), std::string::npos);

  fs::remove(m.root / "curves.csv");
  EXPECT_THROW(EmitPlots(m), ArtifactError);
}

}  // namespace
}  // namespace coreg
