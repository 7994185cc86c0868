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

#ifndef COREG_METRICS_H_
#define COREG_METRICS_H_

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "coreg/categorical.h"
#include "coreg/rng.h"
#include "coreg/visceral_world.h"

namespace coreg {

// Values recorded once per iteration, after its second round.
struct IterationMetrics {
  int iteration = 0;  // 1-based
  double c_norm = 0.0;
  double jsd_z = 0.0;
  double kld_A = 0.0;
  double kld_B_sleep = 0.0;
  bool rare_branch = false;
};

// C(state) / max(C).
double CNorm(VisceralState state, const PriorPreference& c);

// Mean over columns z of KL(truth(. | z) || learned(. | z)), with the
// learned columns floored as in KlDivergence.
double MeanColumnKl(const Eigen::MatrixXd& truth, const Eigen::MatrixXd& learned);

// Observation-model learning error, averaged over the 36 latent states.
inline double KldObservationError(const Eigen::MatrixXd& truth,
                                  const Eigen::MatrixXd& learned) {
  return MeanColumnKl(truth, learned);
}

// Transition learning error for one action, averaged over previous states.
inline double KldTransitionError(const TransitionModel& truth,
                                 const Eigen::MatrixXd& learned, Action a) {
  return MeanColumnKl(truth.ForAction(a), learned);
}

inline double JsdLatent(const Categorical& parent, const Categorical& infant) {
  return JsDivergence(parent, infant);
}

// Trapezoidal area of series[start..end] (both inclusive) with unit spacing.
// Requires 0 <= start < end < series.size().
double AucWindow(std::span<const double> series, int start, int end);

// Pointwise JSD of two equally long belief sequences.
std::vector<double> JsdSeries(std::span<const Categorical> parent,
                              std::span<const Categorical> infant);

// JSD of parent[t] against infant[permutation[t]].
std::vector<double> ShuffledJsdSeries(std::span<const Categorical> parent,
                                      std::span<const Categorical> infant,
                                      std::span<const int> permutation);

// Temporal-shuffle control: the infant sequence is permuted uniformly at
// random in time and compared against the unpermuted parent sequence.
std::vector<double> ShuffleControl(std::span<const Categorical> parent,
                                   std::span<const Categorical> infant,
                                   Rng& rng);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation; 0 for a single value
  double sem = 0.0;
};
MeanStd Summarize(std::span<const double> values);

struct ConditionSummary {
  std::string condition;
  int trials = 0;
  MeanStd c_norm;  // over per-trial means
  // Pointwise means across trials, one entry per iteration.
  std::vector<double> c_norm_curve;
  std::vector<double> jsd_curve;
  std::vector<double> kld_A_curve;
  std::vector<double> kld_B_sleep_curve;
};

// Requires at least one trial and equal trial lengths.
ConditionSummary SummarizeTrials(
    std::string condition,
    const std::vector<std::vector<IterationMetrics>>& trials);

}  // namespace coreg

#endif  // COREG_METRICS_H_
