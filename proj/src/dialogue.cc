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

#include "coreg/dialogue.h"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace coreg {
namespace {

void CheckSymbol(int w) {
  if (w < 0 || w >= kNumSymbols) {
    throw std::out_of_range("symbol index " + std::to_string(w));
  }
}

// Accept decision under the one-sided conditions. The leading agent's
// proposals are always adopted; the other agent's are adopted only when
// the leader happened to pick the same symbol.
bool LeaderOverride(AgentKind leader, AgentKind speaker, int proposed_w,
                    int listener_own_w) {
  if (speaker == leader) return true;
  return proposed_w == listener_own_w;
}

RoundRecord PlayRound(Agent& speaker, Agent& listener, Agent& parent,
                      Agent& infant, VisceralWorld& world, Condition condition,
                      Rng& rng, SymbolChain& chain) {
  const DialogueOutcome dialogue =
      RunChainRound(speaker, listener, condition, rng, chain);
  const StepOutcome step = world.Advance(dialogue.action, rng);

  const Categorical infant_prev = infant.belief();
  parent.Perceive(dialogue.action, step.parent_obs);
  infant.Perceive(dialogue.action, step.infant_obs);

  parent.LearnObservation(parent.belief(), step.parent_obs);
  infant.LearnTransition(infant_prev, infant.belief(), dialogue.action);

  return RoundRecord{dialogue, step, parent.belief(), infant.belief()};
}

}  // namespace

std::string_view ConditionName(Condition c) {
  switch (c) {
    case Condition::kALed:
      return "a-led";
    case Condition::kBLed:
      return "b-led";
    case Condition::kMhng:
      return "mhng";
  }
  return "?";
}

Condition ParseCondition(std::string_view name) {
  for (Condition c : kAllConditions) {
    if (ConditionName(c) == name) return c;
  }
  throw std::invalid_argument("unknown condition '" + std::string(name) +
                              "' (expected mhng, a-led or b-led)");
}

int Propose(const Categorical& speaker_belief,
            const GenerativeModel& speaker_model, Rng& rng) {
  return Sample(SymbolPosterior(speaker_belief, speaker_model), rng);
}

double MhAcceptanceProbability(int proposed_w, int current_w,
                               const Categorical& listener_posterior) {
  CheckSymbol(proposed_w);
  CheckSymbol(current_w);
  if (listener_posterior.size() != kNumSymbols) {
    throw DimensionError("symbol posterior must cover 5 symbols");
  }
  const double denominator = listener_posterior[current_w];
  if (denominator <= 0.0) return 1.0;
  return std::min(1.0, listener_posterior[proposed_w] / denominator);
}

MhDecision MhAcceptFromPosterior(int proposed_w, int current_w,
                                 const Categorical& listener_posterior,
                                 Rng& rng) {
  MhDecision decision;
  decision.acceptance_prob =
      MhAcceptanceProbability(proposed_w, current_w, listener_posterior);
  decision.accepted = rng.Uniform() < decision.acceptance_prob;
  return decision;
}

MhDecision MhAccept(int proposed_w, int current_w,
                    const Categorical& listener_belief,
                    const GenerativeModel& listener_model, Rng& rng) {
  return MhAcceptFromPosterior(proposed_w, current_w,
                               SymbolPosterior(listener_belief, listener_model),
                               rng);
}

DialogueOutcome RunRound(const Agent& speaker, const Agent& listener,
                         Condition condition, Rng& rng,
                         std::optional<int> current_w) {
  const Categorical speaker_posterior = speaker.SymbolPosterior();
  const Categorical listener_posterior = listener.SymbolPosterior();

  DialogueOutcome out;
  out.speaker = speaker.kind();
  out.proposed_w = Sample(speaker_posterior, rng);
  out.listener_own_w = Sample(listener_posterior, rng);
  if (current_w && condition == Condition::kMhng) {
    CheckSymbol(*current_w);
    out.listener_own_w = *current_w;
  }

  const MhDecision mh = MhAcceptFromPosterior(out.proposed_w, out.listener_own_w,
                                              listener_posterior, rng);
  switch (condition) {
    case Condition::kMhng:
      out.accepted = mh.accepted;
      out.acceptance_prob = mh.acceptance_prob;
      break;
    case Condition::kALed:
    case Condition::kBLed: {
      const AgentKind leader = condition == Condition::kALed
                                   ? AgentKind::kParent
                                   : AgentKind::kInfant;
      out.accepted = LeaderOverride(leader, out.speaker, out.proposed_w,
                                    out.listener_own_w);
      out.acceptance_prob = out.accepted ? 1.0 : 0.0;
      break;
    }
  }
  out.shared_w = out.accepted ? out.proposed_w : out.listener_own_w;
  // E is the identity: symbol w selects action w.
  out.action = ActionFromIndex(out.shared_w);
  return out;
}

DialogueOutcome RunChainRound(const Agent& speaker, const Agent& listener,
                              Condition condition, Rng& rng, SymbolChain& chain) {
  const std::optional<int> current =
      chain.mode == CurrentSymbol::kChain ? chain.last_shared : std::nullopt;
  DialogueOutcome out = RunRound(speaker, listener, condition, rng, current);
  chain.last_shared = out.shared_w;
  return out;
}

IterationRecord RunIteration(Agent& parent, Agent& infant, VisceralWorld& world,
                             Condition condition, Rng& rng, SymbolChain& chain,
                             RoundOrder order,
                             const RoundObserver& observer) {
  if (parent.kind() != AgentKind::kParent || infant.kind() != AgentKind::kInfant) {
    throw KindError("RunIteration needs a parent and an infant");
  }
  const bool infant_first = order == RoundOrder::kInfantFirst;
  Agent& first = infant_first ? infant : parent;
  Agent& second = infant_first ? parent : infant;
  RoundRecord r1 = PlayRound(first, second, parent, infant, world, condition, rng, chain);
  if (observer) observer(r1, parent, infant);
  RoundRecord r2 = PlayRound(second, first, parent, infant, world, condition, rng, chain);
  if (observer) observer(r2, parent, infant);
  return IterationRecord{{std::move(r1), std::move(r2)}};
}

}  // namespace coreg
