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

// PTF1: a one-line JSON header terminated by '\n', followed by the matrix
// as little-endian float64 pairs (real, imaginary) in row-major order.
//
// Process tensors carry
//   {"format":"PTF1","kind":"process_tensor","system_dim":d,"k":K,
//    "times":[...],"leg_labels":[...],"leg_dims":[...],
//    "trace_convention":"tp_choi_trace_d"}
// and plain matrices (custom model unitaries, initial states) carry
//   {"format":"PTF1","kind":"matrix","rows":r,"cols":c}.

#pragma once

#include <filesystem>
#include <iosfwd>

#include "ptr/process_tensor.hpp"
#include "ptr/tensor.hpp"

namespace ptr::ptf1 {

void write(std::ostream& out, const ProcessTensor& pt);
void write(const std::filesystem::path& path, const ProcessTensor& pt);

/// Throws FormatError on a malformed header, truncated payload or
/// inconsistent dimensions.
ProcessTensor read(std::istream& in);
ProcessTensor read(const std::filesystem::path& path);

void write_matrix(std::ostream& out, const ComplexMatrix& m);
void write_matrix(const std::filesystem::path& path, const ComplexMatrix& m);
ComplexMatrix read_matrix(std::istream& in);
ComplexMatrix read_matrix(const std::filesystem::path& path);

}  // namespace ptr::ptf1
