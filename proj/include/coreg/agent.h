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

// Discrete active-inference agents over the visceral grid.
//
// Each agent keeps a generative model made of
//   A(i, z) = P(i | z)          observation model, column-stochastic
//   B_a(z', z) = P(z' | z, a)   one transition matrix per action
//   p(i | C)                    preferred observations (shared)
//   E(a, w) = P(a | w)          symbol interpretation (shared)
// and a belief q(z) that is filtered forward through every executed action.
//
// The parent knows B exactly and learns A; the infant knows A exactly and
// learns B. The learnable matrix is always the column-normalized mean of its
// Dirichlet concentrations.

#ifndef COREG_AGENT_H_
#define COREG_AGENT_H_

#include <array>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "coreg/categorical.h"
#include "coreg/dirichlet.h"
#include "coreg/visceral_world.h"

namespace coreg {

enum class AgentKind { kParent, kInfant };

std::string_view AgentKindName(AgentKind kind);

// Raised when a learning rule is applied to the wrong kind of agent.
class KindError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Parameters common to both agents and never learned.
struct SharedPriors {
  Categorical preferred_obs;
  Eigen::MatrixXd interpretation;  // E(a, w)

  // Identity interpretation; p(i | C) from the given surface.
  static SharedPriors Make(
      const PriorPreference& c,
      PreferenceNormalization mode = PreferenceNormalization::kLinear);
};

class GenerativeModel {
 public:
  using TransitionSet = std::array<Eigen::MatrixXd, kNumActions>;

  GenerativeModel(Eigen::MatrixXd observation, TransitionSet transition,
                  SharedPriors shared);

  int num_states() const { return static_cast<int>(observation_.cols()); }
  int num_observations() const { return static_cast<int>(observation_.rows()); }

  const Eigen::MatrixXd& observation() const { return observation_; }
  const Eigen::MatrixXd& transition(Action a) const {
    return transition_[ToIndex(a)];
  }
  const Categorical& preferred_obs() const { return shared_.preferred_obs; }
  const Eigen::MatrixXd& interpretation() const { return shared_.interpretation; }
  // H[A(. | z)] for every latent z.
  const Eigen::VectorXd& observation_entropy() const { return observation_entropy_; }

  void set_observation(Eigen::MatrixXd observation);
  void set_transition(Action a, Eigen::MatrixXd transition);
  void set_interpretation(Eigen::MatrixXd interpretation);

 private:
  Eigen::MatrixXd observation_;
  TransitionSet transition_;
  SharedPriors shared_;
  Eigen::VectorXd observation_entropy_;
};

// q_pred(z') = sum_z B_a(z', z) q(z).
Categorical PredictBelief(const Categorical& belief, Action a,
                          const GenerativeModel& model);

// q(z) proportional to A(obs, z) q_pred(z). If that product has no mass the
// likelihood row alone is normalized instead.
Categorical UpdateBelief(const Categorical& predicted, int obs,
                         const GenerativeModel& model);

struct FreeEnergyTerms {
  double ambiguity = 0.0;  // E_{q_pred}[H[A(. | z)]]
  double risk = 0.0;       // KL[q(i | a) || p(i | C)]
  double total() const { return ambiguity + risk; }
};

// One-step expected free energy of taking `a` from `belief`.
FreeEnergyTerms ExpectedFreeEnergyTerms(const Categorical& belief, Action a,
                                        const GenerativeModel& model);
double ExpectedFreeEnergy(const Categorical& belief, Action a,
                          const GenerativeModel& model);

// P(w | z) = softmax(-G(w)), G(w) = sum_a E(a, w) EFE(a).
Categorical SymbolPosterior(const Categorical& belief,
                            const GenerativeModel& model);
// Same, from precomputed per-action free energies.
Categorical SymbolPosteriorFromFreeEnergy(const Eigen::VectorXd& action_efe,
                                          const Eigen::MatrixXd& interpretation);

inline constexpr double kDefaultDirichletPrior = 0.01;

class Agent {
 public:
  // Starts from a uniform belief; the exact matrix is copied from the truth
  // and the learnable one is the mean of a flat Dirichlet prior.
  Agent(AgentKind kind, const TransitionModel& truth, SharedPriors shared,
        double dirichlet_prior = kDefaultDirichletPrior);

  AgentKind kind() const { return kind_; }
  const GenerativeModel& model() const { return model_; }
  const Categorical& belief() const { return belief_; }
  void set_belief(Categorical belief);

  Categorical SymbolPosterior() const {
    return coreg::SymbolPosterior(belief_, model_);
  }

  // Filters the belief through an executed action and the resulting
  // observation. Returns the new belief.
  const Categorical& Perceive(Action a, int obs);

  // Parent only: alpha(obs, z) += posterior(z), then A is recomputed.
  void LearnObservation(const Categorical& posterior, int obs);
  // Infant only: beta_a(z', z) += curr(z') prev(z), then B_a is recomputed.
  void LearnTransition(const Categorical& prev, const Categorical& curr,
                       Action a);

  const DirichletParams& observation_counts() const;
  const DirichletParams& transition_counts(Action a) const;
  // Sum of all concentrations of the learnable matrix.
  double LearnableMass() const;

 private:
  AgentKind kind_;
  GenerativeModel model_;
  Categorical belief_;
  std::optional<DirichletParams> observation_counts_;
  std::vector<DirichletParams> transition_counts_;
};

}  // namespace coreg

#endif  // COREG_AGENT_H_
