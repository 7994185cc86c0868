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

#include "coreg/agent.h"

#include <cmath>
#include <string>
#include <utility>

namespace coreg {
namespace {

Eigen::VectorXd ColumnEntropies(const Eigen::MatrixXd& m) {
  Eigen::VectorXd h(m.cols());
  for (Eigen::Index z = 0; z < m.cols(); ++z) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double p = m(i, z);
      if (p > 0.0) acc -= p * std::log(p);
    }
    h[z] = acc;
  }
  return h;
}

void CheckObservation(int obs, const GenerativeModel& model) {
  if (obs < 0 || obs >= model.num_observations()) {
    throw std::out_of_range("observation index " + std::to_string(obs));
  }
}

void CheckBeliefSize(const Categorical& belief, const GenerativeModel& model) {
  if (belief.size() != model.num_states()) {
    throw DimensionError("belief size does not match the latent space");
  }
}

}  // namespace

std::string_view AgentKindName(AgentKind kind) {
  return kind == AgentKind::kParent ? "parent" : "infant";
}

SharedPriors SharedPriors::Make(const PriorPreference& c,
                                PreferenceNormalization mode) {
  return SharedPriors{PreferredObsDistribution(c, mode),
                      Eigen::MatrixXd::Identity(kNumActions, kNumActions)};
}

GenerativeModel::GenerativeModel(Eigen::MatrixXd observation,
                                 TransitionSet transition, SharedPriors shared)
    : observation_(std::move(observation)),
      transition_(std::move(transition)),
      shared_(std::move(shared)) {
  for (const auto& b : transition_) {
    if (b.rows() != observation_.cols() || b.cols() != observation_.cols()) {
      throw DimensionError("transition matrices must be square over the latent space");
    }
  }
  if (shared_.preferred_obs.size() != observation_.rows()) {
    throw DimensionError("preference size does not match observations");
  }
  set_interpretation(shared_.interpretation);
  observation_entropy_ = ColumnEntropies(observation_);
}

void GenerativeModel::set_observation(Eigen::MatrixXd observation) {
  if (observation.rows() != observation_.rows() ||
      observation.cols() != observation_.cols()) {
    throw DimensionError("observation matrix shape changed");
  }
  observation_ = std::move(observation);
  observation_entropy_ = ColumnEntropies(observation_);
}

void GenerativeModel::set_transition(Action a, Eigen::MatrixXd transition) {
  auto& slot = transition_[ToIndex(a)];
  if (transition.rows() != slot.rows() || transition.cols() != slot.cols()) {
    throw DimensionError("transition matrix shape changed");
  }
  slot = std::move(transition);
}

void GenerativeModel::set_interpretation(Eigen::MatrixXd interpretation) {
  if (interpretation.rows() != kNumActions || interpretation.cols() != kNumActions) {
    throw DimensionError("interpretation matrix must be 5x5");
  }
  shared_.interpretation = std::move(interpretation);
}

Categorical PredictBelief(const Categorical& belief, Action a,
                          const GenerativeModel& model) {
  CheckBeliefSize(belief, model);
  return Categorical::FromWeights(model.transition(a) * belief.probs());
}

Categorical UpdateBelief(const Categorical& predicted, int obs,
                         const GenerativeModel& model) {
  CheckBeliefSize(predicted, model);
  CheckObservation(obs, model);
  const Eigen::VectorXd likelihood = model.observation().row(obs).transpose();
  const Eigen::VectorXd joint = likelihood.cwiseProduct(predicted.probs());
  if (joint.sum() > 0.0) return Categorical::FromWeights(joint);
  return Categorical::FromWeights(likelihood);
}

FreeEnergyTerms ExpectedFreeEnergyTerms(const Categorical& belief, Action a,
                                        const GenerativeModel& model) {
  const Categorical predicted = PredictBelief(belief, a, model);
  FreeEnergyTerms terms;
  terms.ambiguity = predicted.probs().dot(model.observation_entropy());
  const Categorical predicted_obs =
      Categorical::FromWeights(model.observation() * predicted.probs());
  terms.risk = KlDivergence(predicted_obs, model.preferred_obs());
  return terms;
}

double ExpectedFreeEnergy(const Categorical& belief, Action a,
                          const GenerativeModel& model) {
  return ExpectedFreeEnergyTerms(belief, a, model).total();
}

Categorical SymbolPosteriorFromFreeEnergy(const Eigen::VectorXd& action_efe,
                                          const Eigen::MatrixXd& interpretation) {
  if (action_efe.size() != interpretation.rows()) {
    throw DimensionError("free energies do not match interpretation rows");
  }
  // G(w) = sum_a E(a, w) F(a)
  const Eigen::VectorXd symbol_efe = interpretation.transpose() * action_efe;
  return SoftmaxNeg(symbol_efe);
}

Categorical SymbolPosterior(const Categorical& belief,
                            const GenerativeModel& model) {
  Eigen::VectorXd efe(kNumActions);
  for (Action a : kAllActions) efe[ToIndex(a)] = ExpectedFreeEnergy(belief, a, model);
  return SymbolPosteriorFromFreeEnergy(efe, model.interpretation());
}

namespace {

GenerativeModel InitialModel(AgentKind kind, const TransitionModel& truth,
                             SharedPriors shared, double prior) {
  GenerativeModel::TransitionSet transition;
  Eigen::MatrixXd observation;
  if (kind == AgentKind::kParent) {
    for (Action a : kAllActions) transition[ToIndex(a)] = truth.ForAction(a);
    observation = DirichletParams(kNumStates, kNumStates, prior).Mean();
  } else {
    const Eigen::MatrixXd flat = DirichletParams(kNumStates, kNumStates, prior).Mean();
    for (auto& b : transition) b = flat;
    observation = TrueObservationMatrix();
  }
  return GenerativeModel(std::move(observation), std::move(transition),
                         std::move(shared));
}

}  // namespace

Agent::Agent(AgentKind kind, const TransitionModel& truth, SharedPriors shared,
             double dirichlet_prior)
    : kind_(kind),
      model_(InitialModel(kind, truth, std::move(shared), dirichlet_prior)),
      belief_(Categorical::Uniform(kNumStates)) {
  if (kind_ == AgentKind::kParent) {
    observation_counts_.emplace(kNumStates, kNumStates, dirichlet_prior);
  } else {
    transition_counts_.assign(kNumActions,
                              DirichletParams(kNumStates, kNumStates, dirichlet_prior));
  }
}

void Agent::set_belief(Categorical belief) {
  CheckBeliefSize(belief, model_);
  belief_ = std::move(belief);
}

const Categorical& Agent::Perceive(Action a, int obs) {
  belief_ = UpdateBelief(PredictBelief(belief_, a, model_), obs, model_);
  return belief_;
}

void Agent::LearnObservation(const Categorical& posterior, int obs) {
  if (kind_ != AgentKind::kParent) {
    throw KindError("only the parent learns the observation model");
  }
  CheckBeliefSize(posterior, model_);
  CheckObservation(obs, model_);
  observation_counts_->AddToRow(obs, posterior.probs());
  model_.set_observation(observation_counts_->Mean());
}

void Agent::LearnTransition(const Categorical& prev, const Categorical& curr,
                            Action a) {
  if (kind_ != AgentKind::kInfant) {
    throw KindError("only the infant learns the transition model");
  }
  CheckBeliefSize(prev, model_);
  CheckBeliefSize(curr, model_);
  auto& counts = transition_counts_[ToIndex(a)];
  counts.AddOuter(curr.probs(), prev.probs());
  model_.set_transition(a, counts.Mean());
}

const DirichletParams& Agent::observation_counts() const {
  if (!observation_counts_) throw KindError("infant has no observation counts");
  return *observation_counts_;
}

const DirichletParams& Agent::transition_counts(Action a) const {
  if (transition_counts_.empty()) throw KindError("parent has no transition counts");
  return transition_counts_[ToIndex(a)];
}

double Agent::LearnableMass() const {
  if (observation_counts_) return observation_counts_->TotalMass();
  double total = 0.0;
  for (const auto& c : transition_counts_) total += c.TotalMass();
  return total;
}

}  // namespace coreg
