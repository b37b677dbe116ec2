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

// Seeded random generators for states, channels and instruments.

#pragma once

#include <cstddef>
#include <random>

#include "ptr/quantum_ops.hpp"

namespace ptr::random {

using Rng = std::mt19937_64;

/// Entries i.i.d. standard complex normal.
ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
ComplexMatrix unitary(std::size_t dim, Rng& rng);

ComplexMatrix hermitian(std::size_t dim, Rng& rng);

/// Full-rank mixed state rho = G G† / tr(G G†).
DensityMatrix state(std::size_t dim, Rng& rng);

DensityMatrix pure_state(std::size_t dim, Rng& rng);

/// CPTP map with `kraus_rank` Kraus operators, from a random isometry.
QuantumMap cptp_map(std::size_t dim, std::size_t kraus_rank, Rng& rng);

/// Instrument with `outcomes` members, each of Kraus rank `kraus_rank`.
Instrument instrument(std::size_t dim, std::size_t outcomes,
                      std::size_t kraus_rank, Rng& rng);

/// Measure-and-reprepare instrument: random POVM with `outcomes` effects and
/// a random state re-prepared for each outcome.
Instrument measure_reprepare_instrument(std::size_t dim, std::size_t outcomes,
                                        Rng& rng);

}  // namespace ptr::random
