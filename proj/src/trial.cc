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

#include "coreg/trial.h"

#include <stdexcept>
#include <string>
#include <utility>

namespace coreg {
namespace {

// Label of the permutation streams hanging off a trial seed.
constexpr std::uint64_t kShuffleStream = 0x73687566666c65ULL;

}  // namespace

std::vector<Categorical> TrialLog::IterationBeliefs(AgentKind kind) const {
  const auto& per_round = kind == AgentKind::kParent ? parent_beliefs : infant_beliefs;
  std::vector<Categorical> out;
  out.reserve(per_round.size() / 2);
  for (std::size_t i = 1; i < per_round.size(); i += 2) out.push_back(per_round[i]);
  return out;
}

std::uint64_t TrialSeed(std::uint64_t root_seed, Condition condition, int trial) {
  return DeriveSeed(root_seed, static_cast<std::uint64_t>(ConditionId(condition)),
                    static_cast<std::uint64_t>(trial));
}

TrialResult RunTrialWithAgents(const ExperimentConfig& config,
                               Condition condition, int trial) {
  Validate(config);
  const TransitionModel truth = TransitionModel::Build(config.dynamics);
  const PriorPreference preference = PriorPreference::Build(config.preference);
  const SharedPriors shared =
      SharedPriors::Make(preference, config.preference_normalization);
  const Eigen::MatrixXd true_observation = TrueObservationMatrix();

  TrialResult result{TrialLog{},
                     Agent(AgentKind::kParent, truth, shared, config.dirichlet_prior),
                     Agent(AgentKind::kInfant, truth, shared, config.dirichlet_prior)};
  TrialLog& log = result.log;
  log.condition = condition;
  log.trial = trial;
  log.root_seed = config.seed;
  log.trial_seed = TrialSeed(config.seed, condition, trial);
  log.iterations.reserve(config.iterations);
  log.rounds.reserve(2 * static_cast<std::size_t>(config.iterations));
  log.parent_beliefs.reserve(2 * static_cast<std::size_t>(config.iterations));
  log.infant_beliefs.reserve(2 * static_cast<std::size_t>(config.iterations));

  VisceralWorld world(truth);
  Rng rng(log.trial_seed);
  SymbolChain chain{config.current_symbol, std::nullopt};

  int iteration = 0;
  int round_in_iteration = 0;
  auto record_round = [&](const RoundRecord& r, const Agent& parent,
                          const Agent& infant) {
    RoundLog row;
    row.iteration = iteration;
    row.round = ++round_in_iteration;
    row.dialogue = r.dialogue;
    row.true_state = r.step.next_state;
    row.rare_branch = r.step.rare_branch;
    row.c_norm = CNorm(r.step.next_state, preference);
    row.jsd_z = JsdLatent(r.parent_belief, r.infant_belief);
    row.kld_A = KldObservationError(true_observation, parent.model().observation());
    row.kld_B_sleep = KldTransitionError(
        truth, infant.model().transition(Action::kSleep), Action::kSleep);
    log.rounds.push_back(row);
    log.parent_beliefs.push_back(r.parent_belief);
    log.infant_beliefs.push_back(r.infant_belief);
  };

  for (iteration = 1; iteration <= config.iterations; ++iteration) {
    round_in_iteration = 0;
    const IterationRecord rec =
        RunIteration(result.parent, result.infant, world, condition, rng, chain,
                     config.round_order, record_round);
    const RoundLog& last = log.rounds.back();
    log.iterations.push_back(IterationMetrics{iteration, last.c_norm, last.jsd_z,
                                              last.kld_A, last.kld_B_sleep,
                                              rec.AnyRareBranch()});
  }
  return result;
}

TrialLog RunTrial(const ExperimentConfig& config, Condition condition, int trial) {
  return RunTrialWithAgents(config, condition, trial).log;
}

std::uint64_t ShuffleStreamSeed(std::uint64_t stream_seed, int k) {
  return DeriveSeed(stream_seed, kShuffleStream, static_cast<std::uint64_t>(k));
}

ShuffleAuc ComputeShuffleAuc(const std::vector<Categorical>& parent,
                             const std::vector<Categorical>& infant,
                             const ExperimentConfig& config,
                             std::uint64_t stream_seed) {
  const int start = config.auc_first_iteration - 1;
  const int end = config.auc_last_iteration - 1;
  ShuffleAuc out;
  out.original = AucWindow(JsdSeries(parent, infant), start, end);
  for (int k = 0; k < config.shuffle_permutations; ++k) {
    Rng rng(ShuffleStreamSeed(stream_seed, k));
    out.shuffled += AucWindow(ShuffleControl(parent, infant, rng), start, end);
  }
  out.shuffled /= config.shuffle_permutations;
  return out;
}

ShuffleAuc ComputeShuffleAuc(const TrialLog& log, const ExperimentConfig& config) {
  return ComputeShuffleAuc(log.IterationBeliefs(AgentKind::kParent),
                           log.IterationBeliefs(AgentKind::kInfant), config,
                           log.trial_seed);
}

std::map<Condition, ConditionSummary> AggregateConditions(
    const std::vector<TrialLog>& logs, const std::vector<Condition>& expected) {
  if (logs.empty()) throw std::invalid_argument("no trial logs to aggregate");
  std::map<Condition, std::vector<std::vector<IterationMetrics>>> groups;
  for (const auto& log : logs) groups[log.condition].push_back(log.iterations);
  for (Condition c : expected) {
    if (!groups.contains(c)) {
      throw std::invalid_argument("no trials for condition " +
                                  std::string(ConditionName(c)));
    }
  }
  std::map<Condition, ConditionSummary> out;
  for (auto& [condition, trials] : groups) {
    out.emplace(condition,
                SummarizeTrials(std::string(ConditionName(condition)), trials));
  }
  return out;
}

}  // namespace coreg
