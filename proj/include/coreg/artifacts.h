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

// On-disk formats.
//
// Trial CSV, one row per round, header mandatory:
//   condition,trial,iteration,round,speaker,proposed_w,listener_own_w,
//   accepted,acceptance_prob,shared_w,action,true_x,true_y,rare_branch,
//   c_norm,jsd_z,kld_A,kld_B_sleep
// Reals carry 9 significant digits; booleans are 0/1; speaker is
// parent|infant; action is the action name.
//
// Belief dump, one row per (round, agent):
//   iteration,round,agent,z0,...,z35
// with 17 significant digits, enough to reload every double unchanged.

#ifndef COREG_ARTIFACTS_H_
#define COREG_ARTIFACTS_H_

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coreg/trial.h"

namespace coreg {

class ArtifactError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kTrialCsvHeader =
    "condition,trial,iteration,round,speaker,proposed_w,listener_own_w,"
    "accepted,acceptance_prob,shared_w,action,true_x,true_y,rare_branch,"
    "c_norm,jsd_z,kld_A,kld_B_sleep";

// 9 significant digits.
std::string FormatReal(double v);

// "mhng_trial03" style stem shared by every per-trial file.
std::string TrialFileStem(Condition condition, int trial);

void WriteTrialCsv(const TrialLog& log, std::ostream& out);
void WriteTrialCsv(const TrialLog& log, const std::filesystem::path& path);

struct TrialCsv {
  Condition condition = Condition::kMhng;
  int trial = 0;
  std::vector<RoundLog> rounds;
};

// Throws ArtifactError on a missing file, bad header or malformed row.
TrialCsv ReadTrialCsv(std::istream& in);
TrialCsv ReadTrialCsv(const std::filesystem::path& path);

// Per-iteration metrics rebuilt from per-round rows: the values of each
// iteration's last round, with rare_branch set if any round had it.
std::vector<IterationMetrics> IterationMetricsFromRounds(
    const std::vector<RoundLog>& rounds);

void WriteBeliefDump(const TrialLog& log, std::ostream& out);
void WriteBeliefDump(const TrialLog& log, const std::filesystem::path& path);

struct BeliefDump {
  // Per round, in file order.
  std::vector<Categorical> parent;
  std::vector<Categorical> infant;
  std::vector<int> round_of_iteration;  // 1 or 2 for each entry

  // Beliefs at the end of every iteration.
  std::vector<Categorical> IterationBeliefs(AgentKind kind) const;
};

BeliefDump ReadBeliefDump(std::istream& in);
BeliefDump ReadBeliefDump(const std::filesystem::path& path);

// Writes `contents` to `path`, creating parent directories.
void WriteTextFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace coreg

#endif  // COREG_ARTIFACTS_H_
