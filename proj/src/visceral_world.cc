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

#include "coreg/visceral_world.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace coreg {
namespace {

int Clamp(int v) { return std::clamp(v, 0, kGridSize - 1); }

// Temperature shift applied by the branch, given the current level.
int BranchDy(int y, const DynamicsParams& p) {
  if (y <= p.low_temperature_max) return -1;
  if (y >= p.high_temperature_min) return 1;
  return 0;
}

}  // namespace

Action ActionFromIndex(int index) {
  if (index < 0 || index >= kNumActions) {
    throw std::out_of_range("action index " + std::to_string(index));
  }
  return static_cast<Action>(index);
}

std::string_view ActionName(Action a) {
  switch (a) {
    case Action::kCool:
      return "Cool";
    case Action::kWarm:
      return "Warm";
    case Action::kEat:
      return "Eat";
    case Action::kPlay:
      return "Play";
    case Action::kSleep:
      return "Sleep";
  }
  return "?";
}

VisceralState VisceralState::FromFlat(int index) {
  if (index < 0 || index >= kNumStates) {
    throw std::out_of_range("flat state index " + std::to_string(index));
  }
  return VisceralState(index % kGridSize, index / kGridSize);
}

TransitionModel TransitionModel::Build(const DynamicsParams& params) {
  if (!(params.branch_probability >= 0.0 && params.branch_probability <= 1.0)) {
    throw std::invalid_argument("branch probability must lie in [0, 1]");
  }
  TransitionModel model;
  model.params_ = params;
  for (auto& m : model.matrices_) m = Eigen::MatrixXd::Zero(kNumStates, kNumStates);

  const double p = params.branch_probability;
  for (int prev = 0; prev < kNumStates; ++prev) {
    const VisceralState s = VisceralState::FromFlat(prev);
    auto to = [](int x, int y) { return VisceralState(Clamp(x), Clamp(y)).Flat(); };

    const int cool = to(s.x + params.cool_dx, s.y + params.cool_dy);
    const int warm = to(s.x + params.warm_dx, s.y + params.warm_dy);
    model.matrices_[ToIndex(Action::kCool)](cool, prev) = 1.0;
    model.matrices_[ToIndex(Action::kWarm)](warm, prev) = 1.0;
    model.main_successor_[ToIndex(Action::kCool)][prev] = cool;
    model.main_successor_[ToIndex(Action::kWarm)][prev] = warm;

    const int dy = BranchDy(s.y, params);
    for (auto [action, dx] : {std::pair{Action::kEat, params.eat_dx},
                              std::pair{Action::kPlay, params.play_dx},
                              std::pair{Action::kSleep, params.sleep_dx}}) {
      const int main = to(s.x + dx, s.y);
      const int branch = to(s.x + dx, s.y + dy);
      auto& m = model.matrices_[ToIndex(action)];
      // += merges the two branches when clamping sends them to one cell.
      m(main, prev) += 1.0 - p;
      m(branch, prev) += p;
      model.main_successor_[ToIndex(action)][prev] = main;
    }
  }
  return model;
}

Categorical TransitionModel::Column(int prev, Action a) const {
  if (prev < 0 || prev >= kNumStates) throw std::out_of_range("state index");
  return Categorical(matrices_[ToIndex(a)].col(prev));
}

Eigen::MatrixXd TrueObservationMatrix() {
  return Eigen::MatrixXd::Identity(kNumStates, kNumStates);
}

StepOutcome Step(const TransitionModel& model, VisceralState state, Action a,
                 Rng& rng) {
  const int prev = state.Flat();
  const int next = Sample(model.Column(prev, a), rng);
  StepOutcome out;
  out.next_state = VisceralState::FromFlat(next);
  out.rare_branch = next != model.MainSuccessor(prev, a);
  // A_true is the identity, so both channels report the state itself.
  out.infant_obs = next;
  out.parent_obs = next;
  return out;
}

PriorPreference::PriorPreference(Eigen::VectorXd values)
    : values_(std::move(values)) {
  if (values_.size() != kNumStates) {
    throw std::invalid_argument("prior preference needs 36 values");
  }
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
      throw std::invalid_argument("prior preference values must be > 0");
    }
  }
}

PriorPreference PriorPreference::Build(const PreferenceParams& params) {
  if (params.explicit_values) {
    const auto& v = *params.explicit_values;
    return PriorPreference(
        Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
  }
  if (!(params.sigma > 0.0) || !(params.floor > 0.0)) {
    throw std::invalid_argument("preference sigma and floor must be > 0");
  }
  Eigen::VectorXd values(kNumStates);
  for (int i = 0; i < kNumStates; ++i) {
    const VisceralState s = VisceralState::FromFlat(i);
    const double dx = s.x - params.center_x;
    const double dy = s.y - params.center_y;
    const double bump =
        std::exp(-(dx * dx + dy * dy) / (2.0 * params.sigma * params.sigma));
    values[i] = std::max(params.floor, bump);
  }
  return PriorPreference(std::move(values));
}

Categorical PreferredObsDistribution(const PriorPreference& c,
                                     PreferenceNormalization mode) {
  switch (mode) {
    case PreferenceNormalization::kLinear:
      return Categorical::FromWeights(c.values());
    case PreferenceNormalization::kSoftmax:
      return SoftmaxNeg(-c.values());
  }
  throw std::invalid_argument("unknown preference normalization");
}

}  // namespace coreg
