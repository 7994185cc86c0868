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

// Metropolis-Hastings naming game between the parent and the infant.
//
// In one round the speaker samples a symbol from its own symbol posterior,
// the listener samples its own candidate, and the listener decides whether
// to adopt the proposal. Under the MH rule the listener accepts with
// probability min(1, P_li(proposed) / P_li(own)), which needs nothing but
// the listener's posterior; the chain of shared symbols then targets the
// product P_sp(w) P_li(w) / Z. The one-sided conditions replace that draw
// with a fixed policy. The shared symbol is executed as an action.

#ifndef COREG_DIALOGUE_H_
#define COREG_DIALOGUE_H_

#include <array>
#include <functional>
#include <optional>
#include <string_view>

#include "coreg/agent.h"
#include "coreg/categorical.h"
#include "coreg/rng.h"
#include "coreg/visceral_world.h"

namespace coreg {

inline constexpr int kNumSymbols = kNumActions;

enum class Condition { kALed = 0, kBLed = 1, kMhng = 2 };

inline constexpr std::array<Condition, 3> kAllConditions = {
    Condition::kMhng, Condition::kALed, Condition::kBLed};

// "a-led", "b-led" or "mhng".
std::string_view ConditionName(Condition c);
// Inverse of ConditionName; throws std::invalid_argument.
Condition ParseCondition(std::string_view name);
// Stable numeric id used for seed derivation.
inline int ConditionId(Condition c) { return static_cast<int>(c); }

enum class RoundOrder { kInfantFirst, kParentFirst };

// Where the listener's current symbol w in the MH ratio comes from under
// MHNG. kChain continues the chain: w is the symbol shared in the previous
// round (a fresh listener sample before the first round), so with frozen
// beliefs the shared symbols are distributed as the normalized product of
// the two symbol posteriors. kFresh draws w from the listener's posterior
// every round; that one-step kernel does not preserve the product.
// One-sided conditions always compare against a fresh listener sample.
enum class CurrentSymbol { kChain, kFresh };

// MHNG chain state carried across rounds of one trial.
struct SymbolChain {
  CurrentSymbol mode = CurrentSymbol::kChain;
  std::optional<int> last_shared;
};

struct DialogueOutcome {
  AgentKind speaker = AgentKind::kInfant;
  int proposed_w = 0;
  int listener_own_w = 0;
  bool accepted = false;
  int shared_w = 0;
  Action action = Action::kCool;
  double acceptance_prob = 0.0;
};

// Draws w' ~ P(w' | z_speaker).
int Propose(const Categorical& speaker_belief,
            const GenerativeModel& speaker_model, Rng& rng);

// min(1, P(proposed) / P(current)) under the listener's symbol posterior;
// 1 when P(current) is zero.
double MhAcceptanceProbability(int proposed_w, int current_w,
                               const Categorical& listener_posterior);

struct MhDecision {
  bool accepted = false;
  double acceptance_prob = 0.0;
};

// Consumes exactly one uniform draw.
MhDecision MhAcceptFromPosterior(int proposed_w, int current_w,
                                 const Categorical& listener_posterior,
                                 Rng& rng);
MhDecision MhAccept(int proposed_w, int current_w,
                    const Categorical& listener_belief,
                    const GenerativeModel& listener_model, Rng& rng);

// One speaker/listener exchange. Neither agent is modified. Always consumes
// three uniforms (proposal, listener candidate, acceptance draw) so that the
// random stream stays aligned across conditions. Under MHNG a given
// `current_w` replaces the listener's fresh candidate in the MH ratio.
DialogueOutcome RunRound(const Agent& speaker, const Agent& listener,
                         Condition condition, Rng& rng,
                         std::optional<int> current_w = std::nullopt);

// RunRound with the current symbol taken from `chain`, which is then
// advanced to the round's shared symbol.
DialogueOutcome RunChainRound(const Agent& speaker, const Agent& listener,
                              Condition condition, Rng& rng, SymbolChain& chain);

struct RoundRecord {
  DialogueOutcome dialogue;
  StepOutcome step;
  // Beliefs after both agents have filtered the round's observation.
  Categorical parent_belief;
  Categorical infant_belief;
};

struct IterationRecord {
  std::array<RoundRecord, 2> rounds;
  bool AnyRareBranch() const {
    return rounds[0].step.rare_branch || rounds[1].step.rare_branch;
  }
};

// Called after each round with the agents in their post-round state.
using RoundObserver = std::function<void(const RoundRecord& round,
                                         const Agent& parent,
                                         const Agent& infant)>;

// Two rounds, each agent speaking once. After each round the agreed action
// is executed in the world, both agents filter their observation, the parent
// updates its observation counts and the infant its transition counts.
IterationRecord RunIteration(Agent& parent, Agent& infant, VisceralWorld& world,
                             Condition condition, Rng& rng, SymbolChain& chain,
                             RoundOrder order = RoundOrder::kInfantFirst,
                             const RoundObserver& observer = nullptr);

}  // namespace coreg

#endif  // COREG_DIALOGUE_H_
