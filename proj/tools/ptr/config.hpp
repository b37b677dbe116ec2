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

// Run configuration for the ptr command-line tool.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "ptr/dilation.hpp"

namespace ptr::cli {

inline const std::set<std::string> kAnalyses = {"markov", "divisibility",
                                                "measure", "bonddim",
                                                "classical"};

struct Tolerances {
  double markov = 1e-8;
  double divisibility = 1e-8;
  double measure = 1e-8;
  double classical = 1e-9;
  double bond_cutoff = 1e-10;
};

struct RunConfig {
  std::string model;
  nlohmann::json params = nlohmann::json::object();
  std::vector<double> times;
  std::string basis = "ic-default";
  std::vector<std::string> analyses{kAnalyses.begin(), kAnalyses.end()};
  Tolerances tolerances;
  std::optional<std::filesystem::path> output_ptf;
  std::optional<std::filesystem::path> output_report;
  std::optional<std::filesystem::path> output_csv;
  std::size_t workers = 0;
  std::uint64_t seed = 12345;
  bool allow_large = false;
  /// FNV-1a 64 of the raw config bytes, hex encoded.
  std::string hash;
  std::filesystem::path base_dir;
};

/// 64-bit FNV-1a, lower-case hex.
std::string fnv1a_hex(const std::string& bytes);

/// Parses and validates a config; throws ConfigError on any problem.
RunConfig parse_config(const std::string& text,
                       const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Builds the system-environment model the config describes.
SEModel build_model(const RunConfig& config);

/// A qubit state from a name ("0", "+", "mixed", ...) or {"bloch":[x,y,z]}.
DensityMatrix parse_state(const nlohmann::json& node);

}  // namespace ptr::cli
