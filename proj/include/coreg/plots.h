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

// gnuplot scripts for a finished run. Scripts read the run's CSVs through
// relative paths, so run them from the plots/ directory:
//
//   cd <out>/plots && gnuplot cnorm_bars.gp

#ifndef COREG_PLOTS_H_
#define COREG_PLOTS_H_

#include <filesystem>
#include <vector>

#include "coreg/experiment.h"

namespace coreg {

// Writes plots/{cnorm_bars,kld_curves,jsd_trajectory,auc_bars}.gp and
// returns their paths. The trajectory plot uses trial 0 of the MHNG
// condition, or of the first configured condition when MHNG was not run.
// Throws ArtifactError if summary.csv, curves.csv, auc.csv or the
// representative trial CSV is missing.
std::vector<std::filesystem::path> EmitPlots(const RunManifest& manifest);

}  // namespace coreg

#endif  // COREG_PLOTS_H_
