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

// Command-line front end. Settings resolve as
//   built-in defaults < --config file < $COREG_OUT_DIR (output dir only)
//   < explicit flags.

#ifndef COREG_CLI_H_
#define COREG_CLI_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace coreg {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct CliEnvironment {
  std::optional<std::string> out_dir;

  static CliEnvironment FromProcess();
};

// `args` excludes the program name. Returns the process exit code.
int CliMain(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err, const CliEnvironment& env);

}  // namespace coreg

#endif  // COREG_CLI_H_
