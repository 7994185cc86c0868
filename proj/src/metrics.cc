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

#include "coreg/metrics.h"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace coreg {

double CNorm(VisceralState state, const PriorPreference& c) {
  return c.At(state) / c.Max();
}

double MeanColumnKl(const Eigen::MatrixXd& truth, const Eigen::MatrixXd& learned) {
  if (truth.rows() != learned.rows() || truth.cols() != learned.cols()) {
    throw DimensionError("learned matrix shape differs from the truth");
  }
  double total = 0.0;
  for (Eigen::Index z = 0; z < truth.cols(); ++z) {
    total += KlDivergence(Categorical(truth.col(z)), Categorical(learned.col(z)));
  }
  return total / static_cast<double>(truth.cols());
}

double AucWindow(std::span<const double> series, int start, int end) {
  if (start < 0 || start >= end || static_cast<std::size_t>(end) >= series.size()) {
    throw std::out_of_range("AUC window [" + std::to_string(start) + ", " +
                            std::to_string(end) + "] outside a series of length " +
                            std::to_string(series.size()));
  }
  double area = 0.0;
  for (int t = start; t < end; ++t) area += 0.5 * (series[t] + series[t + 1]);
  return area;
}

std::vector<double> JsdSeries(std::span<const Categorical> parent,
                              std::span<const Categorical> infant) {
  if (parent.size() != infant.size()) {
    throw DimensionError("belief sequences differ in length");
  }
  std::vector<double> out;
  out.reserve(parent.size());
  for (std::size_t t = 0; t < parent.size(); ++t) {
    out.push_back(JsdLatent(parent[t], infant[t]));
  }
  return out;
}

std::vector<double> ShuffledJsdSeries(std::span<const Categorical> parent,
                                      std::span<const Categorical> infant,
                                      std::span<const int> permutation) {
  if (parent.size() != infant.size() || permutation.size() != parent.size()) {
    throw DimensionError("belief sequences and permutation differ in length");
  }
  std::vector<double> out;
  out.reserve(parent.size());
  for (std::size_t t = 0; t < parent.size(); ++t) {
    const int src = permutation[t];
    if (src < 0 || static_cast<std::size_t>(src) >= infant.size()) {
      throw std::out_of_range("permutation entry out of range");
    }
    out.push_back(JsdLatent(parent[t], infant[src]));
  }
  return out;
}

std::vector<double> ShuffleControl(std::span<const Categorical> parent,
                                   std::span<const Categorical> infant,
                                   Rng& rng) {
  if (parent.size() != infant.size()) {
    throw DimensionError("belief sequences differ in length");
  }
  const std::vector<int> perm = RandomPermutation(static_cast<int>(infant.size()), rng);
  return ShuffledJsdSeries(parent, infant, perm);
}

MeanStd Summarize(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("cannot summarize nothing");
  MeanStd out;
  const double n = static_cast<double>(values.size());
  for (double v : values) out.mean += v;
  out.mean /= n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(ss / (n - 1.0));
    out.sem = out.std / std::sqrt(n);
  }
  return out;
}

ConditionSummary SummarizeTrials(
    std::string condition,
    const std::vector<std::vector<IterationMetrics>>& trials) {
  if (trials.empty()) {
    throw std::invalid_argument("condition '" + condition + "' has no trials");
  }
  const std::size_t length = trials.front().size();
  if (length == 0) throw std::invalid_argument("trial without iterations");
  for (const auto& t : trials) {
    if (t.size() != length) {
      throw DimensionError("trials of one condition differ in length");
    }
  }

  ConditionSummary out;
  out.condition = std::move(condition);
  out.trials = static_cast<int>(trials.size());
  out.c_norm_curve.assign(length, 0.0);
  out.jsd_curve.assign(length, 0.0);
  out.kld_A_curve.assign(length, 0.0);
  out.kld_B_sleep_curve.assign(length, 0.0);

  std::vector<double> per_trial_means;
  const double n = static_cast<double>(trials.size());
  for (const auto& trial : trials) {
    double sum = 0.0;
    for (std::size_t t = 0; t < length; ++t) {
      sum += trial[t].c_norm;
      out.c_norm_curve[t] += trial[t].c_norm / n;
      out.jsd_curve[t] += trial[t].jsd_z / n;
      out.kld_A_curve[t] += trial[t].kld_A / n;
      out.kld_B_sleep_curve[t] += trial[t].kld_B_sleep / n;
    }
    per_trial_means.push_back(sum / static_cast<double>(length));
  }
  out.c_norm = Summarize(per_trial_means);
  return out;
}

}  // namespace coreg
