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

#include "coreg/plots.h"

#include <algorithm>
#include <string>

#include <fmt/format.h>

#include "coreg/artifacts.h"

namespace coreg {
namespace {

namespace fs = std::filesystem;

constexpr std::string_view kPreamble =
    "# Run from the plots/ directory of a coreg run.\n"
    "set datafile separator ','\n"
    "set terminal pngcairo size 800,500\n";

void RequireFile(const fs::path& path) {
  if (!fs::exists(path)) throw ArtifactError("missing artifact " + path.string());
}

const TrialEntry& RepresentativeTrial(const RunManifest& manifest) {
  if (manifest.trials.empty()) throw ArtifactError("manifest lists no trials");
  const Condition preferred =
      std::find(manifest.config.conditions.begin(), manifest.config.conditions.end(),
                Condition::kMhng) != manifest.config.conditions.end()
          ? Condition::kMhng
          : manifest.config.conditions.front();
  for (const TrialEntry& t : manifest.trials) {
    if (t.condition == preferred && t.trial == 0) return t;
  }
  throw ArtifactError("no trial 0 for the representative condition");
}

std::string CnormBars(const RunManifest& manifest) {
  std::string s(kPreamble);
  s += "set output 'cnorm_bars.png'\n"
       "set title 'Mean normalized preference by condition (error bars: std)'\n"
       "set style fill solid 0.6 border -1\n"
       "set boxwidth 0.6\n"
       "set yrange [0:1]\n"
       "set ylabel 'C_norm'\n"
       "unset key\n";
  s += fmt::format("set xrange [-0.5:{}]\n",
                   static_cast<double>(manifest.config.conditions.size()) - 0.5);
  s += "plot '../summary.csv' skip 1 using 0:3:4:xtic(1) with boxerrorbars\n";
  return s;
}

std::string KldCurves(const RunManifest& manifest) {
  std::string s(kPreamble);
  s += "set output 'kld_curves.png'\n"
       "set multiplot layout 1,2\n"
       "set xlabel 'iteration'\n"
       "set logscale y\n";
  auto panel = [&](std::string_view title, int column) {
    s += fmt::format("set title '{}'\n", title);
    s += "plot ";
    bool first = true;
    for (Condition c : manifest.config.conditions) {
      if (!first) s += ", \\\n     ";
      first = false;
      s += fmt::format(
          "'../curves.csv' skip 1 using 2:(strcol(1) eq '{0}' ? ${1} : 1/0) "
          "with lines title '{0}'",
          ConditionName(c), column);
    }
    s += "\n";
  };
  panel("KL(A_true || A_parent)", 5);
  panel("KL(B_true || B_infant), Sleep", 6);
  s += "unset multiplot\n";
  return s;
}

std::string JsdTrajectory(const RunManifest& manifest, const TrialEntry& trial,
                          const std::vector<IterationMetrics>& iterations) {
  std::string s(kPreamble);
  s += "set output 'jsd_trajectory.png'\n";
  s += fmt::format("set title 'Latent JSD, {} trial {} (arrows: rare transitions)'\n",
                   ConditionName(trial.condition), trial.trial);
  s += "set xlabel 'iteration'\nset ylabel 'JSD'\nunset key\n";
  s += fmt::format("set xrange [1:{}]\n", manifest.config.iterations);
  for (const IterationMetrics& m : iterations) {
    if (!m.rare_branch) continue;
    s += fmt::format(
        "set arrow from {0}, graph 1 to {0}, graph 0.92 lc rgb 'orange' "
        "head filled\n",
        m.iteration);
  }
  // Column 3 is the iteration, 4 the round and 16 jsd_z.
  s += fmt::format("plot '../{}' skip 1 using ($4 == 2 ? $3 : 1/0):16 with lines\n",
                   trial.csv);
  return s;
}

std::string AucBars(const RunManifest& manifest,
                    const std::vector<TrialAucRow>& rows) {
  std::string s(kPreamble);
  s += "set output 'auc_bars.png'\n";
  s += fmt::format("window_first = {}\nwindow_last = {}\n",
                   manifest.config.auc_first_iteration,
                   manifest.config.auc_last_iteration);
  s += "set title sprintf('JSD area, iterations %d-%d (error bars: std)', "
       "window_first, window_last)\n"
       "set style data histograms\n"
       "set style histogram errorbars gap 1 lw 1\n"
       "set style fill solid 0.6 border -1\n"
       "set datafile separator whitespace\n"
       "set ylabel 'AUC'\n";
  s += "$auc << EOD\n";
  for (Condition c : manifest.config.conditions) {
    std::vector<double> original, shuffled;
    for (const TrialAucRow& r : rows) {
      if (r.condition != c) continue;
      original.push_back(r.auc.original);
      shuffled.push_back(r.auc.shuffled);
    }
    if (original.empty()) continue;
    const MeanStd o = Summarize(original);
    const MeanStd sh = Summarize(shuffled);
    s += fmt::format("{} {} {} {} {}\n", ConditionName(c), FormatReal(o.mean),
                     FormatReal(o.std), FormatReal(sh.mean), FormatReal(sh.std));
  }
  s += "EOD\n";
  s += "plot $auc using 2:3:xtic(1) title 'original', \\\n"
       "     $auc using 4:5 title 'shuffled'\n";
  return s;
}

}  // namespace

std::vector<fs::path> EmitPlots(const RunManifest& manifest) {
  const fs::path& root = manifest.root;
  for (std::string_view f : {"summary.csv", "curves.csv", "auc.csv"}) {
    RequireFile(root / f);
  }
  const TrialEntry& representative = RepresentativeTrial(manifest);
  RequireFile(root / representative.csv);
  const auto iterations =
      IterationMetricsFromRounds(ReadTrialCsv(root / representative.csv).rounds);
  const auto auc_rows = ParseAucCsv(root / "auc.csv");

  const fs::path dir = root / "plots";
  const std::vector<std::pair<std::string, std::string>> scripts = {
      {"cnorm_bars.gp", CnormBars(manifest)},
      {"kld_curves.gp", KldCurves(manifest)},
      {"jsd_trajectory.gp", JsdTrajectory(manifest, representative, iterations)},
      {"auc_bars.gp", AucBars(manifest, auc_rows)},
  };
  std::vector<fs::path> written;
  for (const auto& [name, body] : scripts) {
    WriteTextFile(dir / name, body);
    written.push_back(dir / name);
  }
  return written;
}

}  // namespace coreg
