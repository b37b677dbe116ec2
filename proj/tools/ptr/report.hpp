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

// JSON serialization of analysis results.

#pragma once

#include "json.hpp"
#include "ptr/markovianity.hpp"

namespace ptr::cli {

nlohmann::json to_json(const MarkovReport& report);
nlohmann::json to_json(const DivisibilityReport& report);
nlohmann::json to_json(const MeasureReport& report);
nlohmann::json to_json(const ClassicalProcess& cp,
                       const ClassicalMarkovResult& check);

/// Non-finite values become null; JSON has no representation for them.
nlohmann::json number(double v);

}  // namespace ptr::cli
