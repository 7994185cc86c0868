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

#include "coreg/config.h"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

namespace coreg {
namespace {

namespace pt = boost::property_tree;

template <typename T>
T ParseNumber(const std::string& key, std::string raw) {
  boost::algorithm::trim(raw);
  T value{};
  const char* begin = raw.data();
  const char* end = raw.data() + raw.size();
  if (!raw.empty() && raw.front() == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || raw.empty()) {
    throw ConfigError(fmt::format("{}: cannot parse '{}' as a number", key, raw));
  }
  return value;
}

bool ParseBool(const std::string& key, std::string raw) {
  boost::algorithm::trim(raw);
  if (raw == "true" || raw == "1" || raw == "yes") return true;
  if (raw == "false" || raw == "0" || raw == "no") return false;
  throw ConfigError(fmt::format("{}: expected true or false, got '{}'", key, raw));
}

std::vector<std::string> SplitList(const std::string& raw) {
  std::vector<std::string> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    boost::algorithm::trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

RoundOrder ParseRoundOrder(const std::string& key, std::string raw) {
  boost::algorithm::trim(raw);
  if (raw == "infant-first") return RoundOrder::kInfantFirst;
  if (raw == "parent-first") return RoundOrder::kParentFirst;
  throw ConfigError(fmt::format("{}: expected infant-first or parent-first", key));
}

CurrentSymbol ParseCurrentSymbol(const std::string& key, std::string raw) {
  boost::algorithm::trim(raw);
  if (raw == "chain") return CurrentSymbol::kChain;
  if (raw == "fresh") return CurrentSymbol::kFresh;
  throw ConfigError(fmt::format("{}: expected chain or fresh", key));
}

PreferenceNormalization ParseNormalization(const std::string& key, std::string raw) {
  boost::algorithm::trim(raw);
  if (raw == "linear") return PreferenceNormalization::kLinear;
  if (raw == "softmax") return PreferenceNormalization::kSoftmax;
  throw ConfigError(fmt::format("{}: expected linear or softmax", key));
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

// Every recognized "section.key" and how to apply it.
const std::map<std::string, Setter>& Setters() {
  static const auto* setters = new std::map<std::string, Setter>{
      {"experiment.conditions",
       [](ExperimentConfig& c, const std::string& v) {
         c.conditions.clear();
         for (const auto& name : SplitList(v)) {
           try {
             c.conditions.push_back(ParseCondition(name));
           } catch (const std::invalid_argument& e) {
             throw ConfigError(std::string("experiment.conditions: ") + e.what());
           }
         }
       }},
      {"experiment.trials",
       [](ExperimentConfig& c, const std::string& v) {
         c.trials = ParseNumber<int>("experiment.trials", v);
       }},
      {"experiment.iterations",
       [](ExperimentConfig& c, const std::string& v) {
         c.iterations = ParseNumber<int>("experiment.iterations", v);
       }},
      {"experiment.seed",
       [](ExperimentConfig& c, const std::string& v) {
         c.seed = ParseNumber<std::uint64_t>("experiment.seed", v);
       }},
      {"experiment.round_order",
       [](ExperimentConfig& c, const std::string& v) {
         c.round_order = ParseRoundOrder("experiment.round_order", v);
       }},
      {"experiment.current_symbol",
       [](ExperimentConfig& c, const std::string& v) {
         c.current_symbol = ParseCurrentSymbol("experiment.current_symbol", v);
       }},
      {"experiment.threads",
       [](ExperimentConfig& c, const std::string& v) {
         c.threads = ParseNumber<int>("experiment.threads", v);
       }},
      {"environment.branch_probability",
       [](ExperimentConfig& c, const std::string& v) {
         c.dynamics.branch_probability =
             ParseNumber<double>("environment.branch_probability", v);
       }},
      {"environment.cool_dx",
       [](ExperimentConfig& c, const std::string& v) {
         c.dynamics.cool_dx = ParseNumber<int>("environment.cool_dx", v);
       }},
      {"environment.cool_dy",
       [](ExperimentConfig& c, const std::string& v) {
         c.dynamics.cool_dy = ParseNumber<int>("environment.cool_dy", v);
       }},
      {"environment.warm_dx",
       [](ExperimentConfig& c, const std::string& v) {
         c.dynamics.warm_dx = ParseNumber<int>("environment.warm_dx", v);
       }},
      {"environment.warm_dy",
       [](ExperimentConfig& c, const std::string& v) {
         c.dynamics.warm_dy = ParseNumber<int>("environment.warm_dy", v);
       }},
      {"environment.eat_dx",
       [](ExperimentConfig& c, const std::string& v) {
         c.dynamics.eat_dx = ParseNumber<int>("environment.eat_dx", v);
       }},
      {"environment.play_dx",
       [](ExperimentConfig& c, const std::string& v) {
         c.dynamics.play_dx = ParseNumber<int>("environment.play_dx", v);
       }},
      {"environment.sleep_dx",
       [](ExperimentConfig& c, const std::string& v) {
         c.dynamics.sleep_dx = ParseNumber<int>("environment.sleep_dx", v);
       }},
      {"environment.low_temperature_max",
       [](ExperimentConfig& c, const std::string& v) {
         c.dynamics.low_temperature_max =
             ParseNumber<int>("environment.low_temperature_max", v);
       }},
      {"environment.high_temperature_min",
       [](ExperimentConfig& c, const std::string& v) {
         c.dynamics.high_temperature_min =
             ParseNumber<int>("environment.high_temperature_min", v);
       }},
      {"preference.center_x",
       [](ExperimentConfig& c, const std::string& v) {
         c.preference.center_x = ParseNumber<double>("preference.center_x", v);
       }},
      {"preference.center_y",
       [](ExperimentConfig& c, const std::string& v) {
         c.preference.center_y = ParseNumber<double>("preference.center_y", v);
       }},
      {"preference.sigma",
       [](ExperimentConfig& c, const std::string& v) {
         c.preference.sigma = ParseNumber<double>("preference.sigma", v);
       }},
      {"preference.floor",
       [](ExperimentConfig& c, const std::string& v) {
         c.preference.floor = ParseNumber<double>("preference.floor", v);
       }},
      {"preference.values",
       [](ExperimentConfig& c, const std::string& v) {
         const auto items = SplitList(v);
         if (items.empty()) {
           c.preference.explicit_values.reset();
           return;
         }
         std::vector<double> values;
         for (const auto& item : items) {
           values.push_back(ParseNumber<double>("preference.values", item));
         }
         c.preference.explicit_values = std::move(values);
       }},
      {"preference.normalization",
       [](ExperimentConfig& c, const std::string& v) {
         c.preference_normalization =
             ParseNormalization("preference.normalization", v);
       }},
      {"agent.dirichlet_prior",
       [](ExperimentConfig& c, const std::string& v) {
         c.dirichlet_prior = ParseNumber<double>("agent.dirichlet_prior", v);
       }},
      {"metrics.shuffle_permutations",
       [](ExperimentConfig& c, const std::string& v) {
         c.shuffle_permutations =
             ParseNumber<int>("metrics.shuffle_permutations", v);
       }},
      {"metrics.auc_first_iteration",
       [](ExperimentConfig& c, const std::string& v) {
         c.auc_first_iteration = ParseNumber<int>("metrics.auc_first_iteration", v);
       }},
      {"metrics.auc_last_iteration",
       [](ExperimentConfig& c, const std::string& v) {
         c.auc_last_iteration = ParseNumber<int>("metrics.auc_last_iteration", v);
       }},
      {"output.directory",
       [](ExperimentConfig& c, const std::string& v) {
         c.output_dir = boost::algorithm::trim_copy(v);
       }},
      {"output.dump_beliefs",
       [](ExperimentConfig& c, const std::string& v) {
         c.dump_beliefs = ParseBool("output.dump_beliefs", v);
       }},
  };
  return *setters;
}

}  // namespace

std::string_view CurrentSymbolName(CurrentSymbol mode) {
  return mode == CurrentSymbol::kChain ? "chain" : "fresh";
}

std::string_view RoundOrderName(RoundOrder order) {
  return order == RoundOrder::kInfantFirst ? "infant-first" : "parent-first";
}

std::string_view PreferenceNormalizationName(PreferenceNormalization mode) {
  return mode == PreferenceNormalization::kLinear ? "linear" : "softmax";
}

void Validate(const ExperimentConfig& c) {
  if (c.conditions.empty()) throw ConfigError("at least one condition is required");
  std::set<Condition> seen;
  for (Condition cond : c.conditions) {
    if (!seen.insert(cond).second) {
      throw ConfigError(fmt::format("condition {} listed twice", ConditionName(cond)));
    }
  }
  if (c.trials < 1) throw ConfigError("trials must be >= 1");
  if (c.iterations < 1) throw ConfigError("iterations must be >= 1");
  if (c.threads < 0) throw ConfigError("threads must be >= 0");
  if (!(c.dynamics.branch_probability >= 0.0 && c.dynamics.branch_probability <= 1.0)) {
    throw ConfigError("branch_probability must lie in [0, 1]");
  }
  if (!(c.preference.sigma > 0.0)) throw ConfigError("preference sigma must be > 0");
  if (!(c.preference.floor > 0.0)) throw ConfigError("preference floor must be > 0");
  if (c.preference.explicit_values) {
    const auto& v = *c.preference.explicit_values;
    if (v.size() != static_cast<std::size_t>(kNumStates)) {
      throw ConfigError(fmt::format("preference.values needs {} entries, got {}",
                                    kNumStates, v.size()));
    }
    for (double x : v) {
      if (!(x > 0.0)) throw ConfigError("preference.values must be strictly positive");
    }
  }
  if (!(c.dirichlet_prior > 0.0)) throw ConfigError("dirichlet_prior must be > 0");
  if (c.shuffle_permutations < 1) throw ConfigError("shuffle_permutations must be >= 1");
  if (c.auc_first_iteration < 1 || c.auc_first_iteration >= c.auc_last_iteration) {
    throw ConfigError("AUC window must satisfy 1 <= first < last");
  }
  if (c.output_dir.empty()) throw ConfigError("output directory must be non-empty");
}

ExperimentConfig ParseConfig(std::string_view text) {
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  ExperimentConfig config;
  const auto& setters = Setters();
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError(fmt::format("key '{}' must appear inside a section", section));
    }
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      auto it = setters.find(full);
      if (it == setters.end()) throw ConfigError("unknown config key '" + full + "'");
      it->second(config, value.data());
    }
  }
  Validate(config);
  return config;
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str());
}

std::string SerializeConfig(const ExperimentConfig& c) {
  std::vector<std::string_view> names;
  for (Condition cond : c.conditions) names.push_back(ConditionName(cond));
  std::string values;
  if (c.preference.explicit_values) {
    values = fmt::format("{}", fmt::join(*c.preference.explicit_values, ", "));
  }
  const auto& d = c.dynamics;
  const auto& p = c.preference;
  return fmt::format(
      "[experiment]\n"
      "conditions = {}\n"
      "trials = {}\n"
      "iterations = {}\n"
      "seed = {}\n"
      "round_order = {}\n"
      "current_symbol = {}\n"
      "threads = {}\n"
      "\n"
      "[environment]\n"
      "branch_probability = {}\n"
      "cool_dx = {}\n"
      "cool_dy = {}\n"
      "warm_dx = {}\n"
      "warm_dy = {}\n"
      "eat_dx = {}\n"
      "play_dx = {}\n"
      "sleep_dx = {}\n"
      "low_temperature_max = {}\n"
      "high_temperature_min = {}\n"
      "\n"
      "[preference]\n"
      "center_x = {}\n"
      "center_y = {}\n"
      "sigma = {}\n"
      "floor = {}\n"
      "values = {}\n"
      "normalization = {}\n"
      "\n"
      "[agent]\n"
      "dirichlet_prior = {}\n"
      "\n"
      "[metrics]\n"
      "shuffle_permutations = {}\n"
      "auc_first_iteration = {}\n"
      "auc_last_iteration = {}\n"
      "\n"
      "[output]\n"
      "directory = {}\n"
      "dump_beliefs = {}\n",
      fmt::join(names, ", "), c.trials, c.iterations, c.seed,
      RoundOrderName(c.round_order), CurrentSymbolName(c.current_symbol), c.threads, d.branch_probability, d.cool_dx,
      d.cool_dy, d.warm_dx, d.warm_dy, d.eat_dx, d.play_dx, d.sleep_dx,
      d.low_temperature_max, d.high_temperature_min, p.center_x, p.center_y,
      p.sigma, p.floor, values, PreferenceNormalizationName(c.preference_normalization),
      c.dirichlet_prior, c.shuffle_permutations, c.auc_first_iteration,
      c.auc_last_iteration, c.output_dir, c.dump_beliefs ? "true" : "false");
}

}  // namespace coreg
