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

#ifndef COREG_CONFIG_H_
#define COREG_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coreg/agent.h"
#include "coreg/dialogue.h"
#include "coreg/visceral_world.h"

namespace coreg {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::vector<Condition> conditions = {Condition::kMhng, Condition::kALed,
                                       Condition::kBLed};
  int trials = 10;
  int iterations = 1000;
  std::uint64_t seed = 42;
  RoundOrder round_order = RoundOrder::kInfantFirst;
  CurrentSymbol current_symbol = CurrentSymbol::kChain;
  // Worker threads for independent trials; 0 picks the hardware count.
  // Never affects results.
  int threads = 0;

  DynamicsParams dynamics;
  PreferenceParams preference;
  PreferenceNormalization preference_normalization =
      PreferenceNormalization::kLinear;
  double dirichlet_prior = kDefaultDirichletPrior;

  int shuffle_permutations = 1;
  int auc_first_iteration = 20;
  int auc_last_iteration = 50;

  std::string output_dir = "coreg_out";
  bool dump_beliefs = false;

  friend bool operator==(const ExperimentConfig&,
                         const ExperimentConfig&) = default;
};

// Throws ConfigError describing the first violated constraint.
void Validate(const ExperimentConfig& config);

// INI-style text: [section] headers and key = value lines; ';' and '#'
// start comments. Keys absent from the text keep their defaults. Unknown
// sections or keys are errors. The result is validated.
ExperimentConfig ParseConfig(std::string_view text);
ExperimentConfig LoadConfig(const std::filesystem::path& path);

// Canonical text form: every key, fixed order, shortest round-trip numbers.
std::string SerializeConfig(const ExperimentConfig& config);

std::string_view RoundOrderName(RoundOrder order);
std::string_view CurrentSymbolName(CurrentSymbol mode);
std::string_view PreferenceNormalizationName(PreferenceNormalization mode);

// Environment variable that overrides output.directory from a config file.
// Command-line flags still take precedence over it.
inline constexpr const char* kOutputDirEnv = "COREG_OUT_DIR";

}  // namespace coreg

#endif  // COREG_CONFIG_H_
