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

#include "coreg/artifacts.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace coreg {
namespace {

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

template <typename T>
T ParseField(const std::string& text, int line_no) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ArtifactError(fmt::format("line {}: bad field '{}'", line_no, text));
  }
  return value;
}

bool ParseFlag(const std::string& text, int line_no) {
  if (text == "1") return true;
  if (text == "0") return false;
  throw ArtifactError(fmt::format("line {}: expected 0/1, got '{}'", line_no, text));
}

AgentKind ParseAgent(const std::string& text, int line_no) {
  if (text == "parent") return AgentKind::kParent;
  if (text == "infant") return AgentKind::kInfant;
  throw ArtifactError(fmt::format("line {}: unknown agent '{}'", line_no, text));
}

Action ParseActionName(const std::string& text, int line_no) {
  for (Action a : kAllActions) {
    if (ActionName(a) == text) return a;
  }
  throw ArtifactError(fmt::format("line {}: unknown action '{}'", line_no, text));
}

std::ofstream OpenForWrite(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArtifactError("cannot write " + path.string());
  return out;
}

std::ifstream OpenForRead(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArtifactError("cannot read " + path.string());
  return in;
}

}  // namespace

std::string FormatReal(double v) { return fmt::format("{:.9g}", v); }

std::string TrialFileStem(Condition condition, int trial) {
  return fmt::format("{}_trial{:02d}", ConditionName(condition), trial);
}

void WriteTrialCsv(const TrialLog& log, std::ostream& out) {
  out << kTrialCsvHeader << '\n';
  const std::string_view condition = ConditionName(log.condition);
  for (const RoundLog& r : log.rounds) {
    const DialogueOutcome& d = r.dialogue;
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                       condition, log.trial, r.iteration, r.round,
                       AgentKindName(d.speaker), d.proposed_w, d.listener_own_w,
                       d.accepted ? 1 : 0, FormatReal(d.acceptance_prob),
                       d.shared_w, ActionName(d.action), r.true_state.x,
                       r.true_state.y, r.rare_branch ? 1 : 0,
                       FormatReal(r.c_norm), FormatReal(r.jsd_z),
                       FormatReal(r.kld_A), FormatReal(r.kld_B_sleep));
  }
}

void WriteTrialCsv(const TrialLog& log, const std::filesystem::path& path) {
  std::ofstream out = OpenForWrite(path);
  WriteTrialCsv(log, out);
  if (!out) throw ArtifactError("failed writing " + path.string());
}

TrialCsv ReadTrialCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTrialCsvHeader) {
    throw ArtifactError("trial CSV header missing or unexpected");
  }
  TrialCsv out;
  int line_no = 1;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = SplitCsvLine(line);
    if (f.size() != 18) {
      throw ArtifactError(fmt::format("line {}: expected 18 fields, got {}",
                                      line_no, f.size()));
    }
    Condition condition;
    try {
      condition = ParseCondition(f[0]);
    } catch (const std::invalid_argument& e) {
      throw ArtifactError(fmt::format("line {}: {}", line_no, e.what()));
    }
    const int trial = ParseField<int>(f[1], line_no);
    if (first) {
      out.condition = condition;
      out.trial = trial;
      first = false;
    } else if (condition != out.condition || trial != out.trial) {
      throw ArtifactError(fmt::format("line {}: mixed trials in one file", line_no));
    }
    RoundLog r;
    r.iteration = ParseField<int>(f[2], line_no);
    r.round = ParseField<int>(f[3], line_no);
    r.dialogue.speaker = ParseAgent(f[4], line_no);
    r.dialogue.proposed_w = ParseField<int>(f[5], line_no);
    r.dialogue.listener_own_w = ParseField<int>(f[6], line_no);
    r.dialogue.accepted = ParseFlag(f[7], line_no);
    r.dialogue.acceptance_prob = ParseField<double>(f[8], line_no);
    r.dialogue.shared_w = ParseField<int>(f[9], line_no);
    r.dialogue.action = ParseActionName(f[10], line_no);
    try {
      r.true_state = VisceralState(ParseField<int>(f[11], line_no),
                                   ParseField<int>(f[12], line_no));
    } catch (const std::out_of_range&) {
      throw ArtifactError(fmt::format("line {}: state outside the grid", line_no));
    }
    r.rare_branch = ParseFlag(f[13], line_no);
    r.c_norm = ParseField<double>(f[14], line_no);
    r.jsd_z = ParseField<double>(f[15], line_no);
    r.kld_A = ParseField<double>(f[16], line_no);
    r.kld_B_sleep = ParseField<double>(f[17], line_no);
    out.rounds.push_back(r);
  }
  return out;
}

TrialCsv ReadTrialCsv(const std::filesystem::path& path) {
  std::ifstream in = OpenForRead(path);
  try {
    return ReadTrialCsv(in);
  } catch (const ArtifactError& e) {
    throw ArtifactError(path.string() + ": " + e.what());
  }
}

std::vector<IterationMetrics> IterationMetricsFromRounds(
    const std::vector<RoundLog>& rounds) {
  std::vector<IterationMetrics> out;
  for (const RoundLog& r : rounds) {
    if (out.empty() || out.back().iteration != r.iteration) {
      if (!out.empty() && r.iteration != out.back().iteration + 1) {
        throw ArtifactError(fmt::format("iteration {} follows {}", r.iteration,
                                        out.back().iteration));
      }
      out.push_back(IterationMetrics{r.iteration});
    }
    IterationMetrics& m = out.back();
    m.c_norm = r.c_norm;
    m.jsd_z = r.jsd_z;
    m.kld_A = r.kld_A;
    m.kld_B_sleep = r.kld_B_sleep;
    m.rare_branch = m.rare_branch || r.rare_branch;
  }
  return out;
}

void WriteBeliefDump(const TrialLog& log, std::ostream& out) {
  out << "iteration,round,agent";
  for (int z = 0; z < kNumStates; ++z) out << ",z" << z;
  out << '\n';
  auto write_row = [&out](const RoundLog& r, std::string_view agent,
                          const Categorical& q) {
    out << r.iteration << ',' << r.round << ',' << agent;
    for (int z = 0; z < q.size(); ++z) out << ',' << fmt::format("{:.17g}", q[z]);
    out << '\n';
  };
  for (std::size_t i = 0; i < log.rounds.size(); ++i) {
    write_row(log.rounds[i], "parent", log.parent_beliefs.at(i));
    write_row(log.rounds[i], "infant", log.infant_beliefs.at(i));
  }
}

void WriteBeliefDump(const TrialLog& log, const std::filesystem::path& path) {
  std::ofstream out = OpenForWrite(path);
  WriteBeliefDump(log, out);
  if (!out) throw ArtifactError("failed writing " + path.string());
}

std::vector<Categorical> BeliefDump::IterationBeliefs(AgentKind kind) const {
  const auto& per_round = kind == AgentKind::kParent ? parent : infant;
  std::vector<Categorical> out;
  for (std::size_t i = 0; i < per_round.size(); ++i) {
    const bool last_of_iteration =
        i + 1 == per_round.size() || round_of_iteration[i + 1] == 1;
    if (last_of_iteration) out.push_back(per_round[i]);
  }
  return out;
}

BeliefDump ReadBeliefDump(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("iteration,round,agent,", 0) != 0) {
    throw ArtifactError("belief dump header missing or unexpected");
  }
  BeliefDump out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = SplitCsvLine(line);
    if (f.size() != 3 + static_cast<std::size_t>(kNumStates)) {
      throw ArtifactError(fmt::format("line {}: expected {} fields", line_no,
                                      3 + kNumStates));
    }
    Eigen::VectorXd q(kNumStates);
    for (int z = 0; z < kNumStates; ++z) q[z] = ParseField<double>(f[3 + z], line_no);
    Categorical belief = [&] {
      try {
        return Categorical(q);
      } catch (const std::invalid_argument& e) {
        throw ArtifactError(fmt::format("line {}: {}", line_no, e.what()));
      }
    }();
    if (ParseAgent(f[2], line_no) == AgentKind::kParent) {
      out.parent.push_back(std::move(belief));
      out.round_of_iteration.push_back(ParseField<int>(f[1], line_no));
    } else {
      out.infant.push_back(std::move(belief));
    }
  }
  if (out.parent.size() != out.infant.size()) {
    throw ArtifactError("belief dump has unequal parent and infant rows");
  }
  return out;
}

BeliefDump ReadBeliefDump(const std::filesystem::path& path) {
  std::ifstream in = OpenForRead(path);
  try {
    return ReadBeliefDump(in);
  } catch (const ArtifactError& e) {
    throw ArtifactError(path.string() + ": " + e.what());
  }
}

void WriteTextFile(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out = OpenForWrite(path);
  out << contents;
  if (!out) throw ArtifactError("failed writing " + path.string());
}

}  // namespace coreg
