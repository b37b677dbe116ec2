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

#pragma once

#include <cstddef>
#include <functional>

namespace ptr {

/// Worker count: PTR_WORKERS if set and positive, else `fallback`, else the
/// hardware concurrency.
std::size_t resolve_workers(std::size_t fallback = 0);

/// Runs body(i) for i in [0, count) on `workers` threads. Each index is
/// visited exactly once; callers write results into slot i, which keeps
/// outputs independent of the worker count. The first exception thrown by
/// any body is rethrown after all threads join.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace ptr
