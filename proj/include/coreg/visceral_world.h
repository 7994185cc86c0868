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

// The infant's visceral state: a 6x6 grid of (energy, body temperature)
// levels, the five regulatory actions that move it, and the shared prior
// preference over it.

#ifndef COREG_VISCERAL_WORLD_H_
#define COREG_VISCERAL_WORLD_H_

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "coreg/categorical.h"
#include "coreg/rng.h"

namespace coreg {

inline constexpr int kGridSize = 6;
inline constexpr int kNumStates = kGridSize * kGridSize;
inline constexpr int kNumActions = 5;

enum class Action : int { kCool = 0, kWarm = 1, kEat = 2, kPlay = 3, kSleep = 4 };

inline constexpr std::array<Action, kNumActions> kAllActions = {
    Action::kCool, Action::kWarm, Action::kEat, Action::kPlay, Action::kSleep};

inline int ToIndex(Action a) { return static_cast<int>(a); }
Action ActionFromIndex(int index);
std::string_view ActionName(Action a);

// x is the energy level, y the body-temperature level; both in [0, 5].
struct VisceralState {
  int x = 0;
  int y = 0;

  constexpr VisceralState() = default;
  // Throws std::out_of_range outside the grid.
  constexpr VisceralState(int x_level, int y_level) : x(x_level), y(y_level) {
    if (x < 0 || x >= kGridSize || y < 0 || y >= kGridSize) {
      throw std::out_of_range("visceral state outside the 6x6 grid");
    }
  }

  int Flat() const { return y * kGridSize + x; }
  static VisceralState FromFlat(int index);

  friend bool operator==(const VisceralState&, const VisceralState&) = default;
};

// Constants of the action dynamics. Defaults reproduce the reference world.
struct DynamicsParams {
  int cool_dx = -1;
  int cool_dy = -1;
  int warm_dx = -1;
  int warm_dy = 1;
  int eat_dx = 2;
  int play_dx = -1;
  int sleep_dx = 0;
  // Probability that Eat, Play or Sleep also shifts the temperature.
  double branch_probability = 0.2;
  // The shift lowers y when y <= low_temperature_max and raises it when
  // y >= high_temperature_min; otherwise y is left alone.
  int low_temperature_max = 2;
  int high_temperature_min = 3;

  friend bool operator==(const DynamicsParams&, const DynamicsParams&) = default;
};

// B_true(z' | z, a). Coordinates are clamped to the grid after each move;
// when clamping sends both branches to one cell their mass is merged.
class TransitionModel {
 public:
  static TransitionModel Build(const DynamicsParams& params = {});

  double operator()(int next, int prev, Action a) const {
    return matrices_[ToIndex(a)](next, prev);
  }
  // Column-stochastic matrix with entry (next, prev).
  const Eigen::MatrixXd& ForAction(Action a) const {
    return matrices_[ToIndex(a)];
  }
  Categorical Column(int prev, Action a) const;

  // The successor reached when the temperature branch does not fire.
  int MainSuccessor(int prev, Action a) const {
    return main_successor_[ToIndex(a)][prev];
  }

  const DynamicsParams& params() const { return params_; }

 private:
  DynamicsParams params_;
  std::array<Eigen::MatrixXd, kNumActions> matrices_;
  std::array<std::array<int, kNumStates>, kNumActions> main_successor_{};
};

// The true sensory mapping: both agents observe the one-hot of the state.
Eigen::MatrixXd TrueObservationMatrix();

struct StepOutcome {
  VisceralState next_state;
  // Set iff the sampled successor differs from the main successor, i.e. the
  // low-probability temperature branch fired and moved somewhere distinct.
  bool rare_branch = false;
  int infant_obs = 0;
  int parent_obs = 0;
};

StepOutcome Step(const TransitionModel& model, VisceralState state, Action a,
                 Rng& rng);

// Default preference surface: a radial bump around the grid centre.
struct PreferenceParams {
  double center_x = 2.5;
  double center_y = 2.5;
  double sigma = 1.25;
  double floor = 0.01;
  // When set, overrides the bump; 36 strictly positive values in flat order.
  std::optional<std::vector<double>> explicit_values;

  friend bool operator==(const PreferenceParams&,
                         const PreferenceParams&) = default;
};

// The prior preference C over the 36 cells; strictly positive.
class PriorPreference {
 public:
  static PriorPreference Build(const PreferenceParams& params = {});
  // Throws std::invalid_argument unless values has 36 positive entries.
  explicit PriorPreference(Eigen::VectorXd values);

  double operator[](int flat) const { return values_[flat]; }
  double At(VisceralState s) const { return values_[s.Flat()]; }
  double Max() const { return values_.maxCoeff(); }
  const Eigen::VectorXd& values() const { return values_; }

 private:
  Eigen::VectorXd values_;
};

enum class PreferenceNormalization { kLinear, kSoftmax };

// p(i | C): C divided by its sum (kLinear) or softmax(C) (kSoftmax).
Categorical PreferredObsDistribution(
    const PriorPreference& c,
    PreferenceNormalization mode = PreferenceNormalization::kLinear);

// Ground truth of one trial: dynamics plus the current state.
class VisceralWorld {
 public:
  static constexpr VisceralState kDefaultStart{2, 2};

  explicit VisceralWorld(TransitionModel model,
                         VisceralState start = kDefaultStart)
      : model_(std::move(model)), state_(start) {}

  const TransitionModel& model() const { return model_; }
  VisceralState state() const { return state_; }

  StepOutcome Advance(Action a, Rng& rng) {
    StepOutcome out = Step(model_, state_, a, rng);
    state_ = out.next_state;
    return out;
  }

 private:
  TransitionModel model_;
  VisceralState state_;
};

}  // namespace coreg

#endif  // COREG_VISCERAL_WORLD_H_
