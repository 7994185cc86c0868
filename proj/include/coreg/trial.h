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

#ifndef COREG_TRIAL_H_
#define COREG_TRIAL_H_

#include <cstdint>
#include <map>
#include <vector>

#include "coreg/agent.h"
#include "coreg/config.h"
#include "coreg/dialogue.h"
#include "coreg/metrics.h"

namespace coreg {

// One row of the per-round record.
struct RoundLog {
  int iteration = 0;  // 1-based
  int round = 0;      // 1 or 2
  DialogueOutcome dialogue;
  VisceralState true_state;  // after the round's step
  bool rare_branch = false;
  double c_norm = 0.0;
  double jsd_z = 0.0;
  double kld_A = 0.0;
  double kld_B_sleep = 0.0;
};

struct TrialLog {
  Condition condition = Condition::kMhng;
  int trial = 0;
  std::uint64_t root_seed = 0;
  std::uint64_t trial_seed = 0;
  std::vector<IterationMetrics> iterations;
  std::vector<RoundLog> rounds;
  // Post-round beliefs, one entry per round.
  std::vector<Categorical> parent_beliefs;
  std::vector<Categorical> infant_beliefs;

  // Beliefs at the end of each iteration (after its second round).
  std::vector<Categorical> IterationBeliefs(AgentKind kind) const;
};

// hash(root seed, condition id, trial index); see DeriveSeed.
std::uint64_t TrialSeed(std::uint64_t root_seed, Condition condition, int trial);

// Final agents alongside the log, for inspecting the learned matrices.
struct TrialResult {
  TrialLog log;
  Agent parent;
  Agent infant;
};

// Deterministic in (config, condition, trial). The world starts at (2, 2);
// both agents start from uniform beliefs and flat Dirichlet priors.
TrialResult RunTrialWithAgents(const ExperimentConfig& config,
                               Condition condition, int trial);
TrialLog RunTrial(const ExperimentConfig& config, Condition condition, int trial);

// Original and temporally shuffled JSD areas over the configured window.
struct ShuffleAuc {
  double original = 0.0;
  double shuffled = 0.0;  // averaged over config.shuffle_permutations
};

// Seed of the k-th permutation stream hanging off `stream_seed`.
// False when the configured AUC window runs past the trial length; short
// runs then skip the shuffle comparison.
inline bool AucWindowFits(const ExperimentConfig& config) {
  return config.auc_last_iteration <= config.iterations;
}

std::uint64_t ShuffleStreamSeed(std::uint64_t stream_seed, int k);

// Uses per-iteration beliefs and a permutation stream derived from
// `stream_seed`.
ShuffleAuc ComputeShuffleAuc(const std::vector<Categorical>& parent,
                             const std::vector<Categorical>& infant,
                             const ExperimentConfig& config,
                             std::uint64_t stream_seed);
ShuffleAuc ComputeShuffleAuc(const TrialLog& log, const ExperimentConfig& config);

// Groups per-iteration metrics by condition and summarizes each group.
// Throws std::invalid_argument when there are no logs or when a condition in
// `expected` has none.
std::map<Condition, ConditionSummary> AggregateConditions(
    const std::vector<TrialLog>& logs,
    const std::vector<Condition>& expected = {});

}  // namespace coreg

#endif  // COREG_TRIAL_H_
