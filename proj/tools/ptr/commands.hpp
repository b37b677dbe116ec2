// Copyright 2026 The ptr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Subcommands of the ptr tool. Each returns the process exit code.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <string>

namespace ptr::cli {

/// 0 success, 1 failed example check, 2 config/guard, 3 data error.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitConfig = 2,
  kExitData = 3,
};

struct SimulateArgs {
  std::string config;
  std::optional<std::string> output;
  std::optional<std::size_t> workers;
  bool allow_large = false;
};

struct AnalyzeArgs {
  std::string input;
  std::set<std::string> analyses;  // empty: config or all
  std::optional<double> tol;
  std::optional<std::string> config;
  std::optional<std::string> output;
  std::optional<std::string> csv;
  std::optional<std::size_t> workers;
  bool exhaustive = false;
  std::string metric = "relative_entropy";
  bool timing = true;
};

struct ExamplesArgs {
  std::string name;
  double theta = 0.0;  // b2: ω δt; 0 selects π/4
  double gamma_g = 1.0;
  double dt = 1.0;
  std::string system_state = "+";
  std::string env_state = "0";
  std::size_t trials = 20;
  std::uint64_t seed = 2024;
  std::optional<std::string> output;
};

int cmd_simulate(const SimulateArgs& args, std::ostream& out);
int cmd_analyze(const AnalyzeArgs& args, std::ostream& out);
int cmd_examples(const ExamplesArgs& args, std::ostream& out);

}  // namespace ptr::cli
