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

// Discrete-time process tensors.
//
// A process on K control slots at times t_0 < ... < t_{K-1}, with the final
// state read out at t_K, is stored as its generalized Choi matrix on 2K + 1
// legs, ordered
//
//     O_K, I_{K-1}, O_{K-1}, ..., I_1, O_1, I_0, O_0
//
// O_j is the system state handed to the control at t_j (O_K is the final
// state) and I_j is what the control at t_j hands back. Slot j occupies the
// adjacent pair (I_j, O_j), which matches the (output, input) order of a
// control's Choi matrix, and a Markov process is the contiguous product
//
//     Λ_{K:K-1} ⊗ ... ⊗ Λ_{1:0} ⊗ ρ_0.
//
// Contraction with controls A_j:
//     ρ[a,b] = Σ_XY Υ[(a,X),(b,Y)] (A_{K-1} ⊗ ... ⊗ A_0)[X,Y].
// Υ is stored unnormalized: tr Υ = d^K.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ptr/quantum_ops.hpp"
#include "ptr/tensor.hpp"

namespace ptr {

/// Conditionals whose probability falls below this are not divided out.
inline constexpr double kProbabilityFloor = 1e-10;

class ProcessTensor {
 public:
  /// `times` has K + 1 strictly increasing entries; choi is d^(2K+1) square.
  ProcessTensor(ComplexMatrix choi, std::size_t system_dim,
                std::vector<double> times);

  static LegShape canonical_legs(std::size_t system_dim, std::size_t steps);

  const ComplexMatrix& choi() const { return choi_; }
  const LegShape& legs() const { return legs_; }
  const std::vector<double>& times() const { return times_; }
  std::size_t system_dim() const { return dim_; }
  /// Number of control slots K.
  std::size_t steps() const { return times_.size() - 1; }

  /// Leg position of the final output (always 0), of I_j and of O_j.
  static std::size_t input_leg(std::size_t steps, std::size_t slot);
  static std::size_t output_leg(std::size_t steps, std::size_t slot);

 private:
  ComplexMatrix choi_;
  std::size_t dim_;
  std::vector<double> times_;
  LegShape legs_;
};

/// One control per slot, slot 0 first.
struct ControlSequence {
  std::vector<QuantumMap> slots;
  /// Slot holding the causal break under test, if any.
  std::optional<std::size_t> break_under_test;

  std::size_t size() const { return slots.size(); }
};

struct ConditioningRecord {
  std::size_t break_slot;
  std::size_t outcome;      // r
  std::size_t preparation;  // s
  ControlSequence past;
  /// Basis-element indices of `past` when it came from a basis sweep.
  std::vector<std::size_t> past_basis_indices;
};

struct ConditionalState {
  DensityMatrix state;  // normalized
  double probability;
  ConditioningRecord conditioning;
};

/// Σ_XY m[(a,X),(b,Y)] c[X,Y] over the trailing legs of total dimension
/// c.rows().
ComplexMatrix contract_trailing(const ComplexMatrix& m, const ComplexMatrix& c);

/// Contracts `count` adjacent legs starting at `first` with c.
ComplexMatrix contract_legs(const ComplexMatrix& m,
                            std::span<const std::size_t> dims,
                            std::size_t first, std::size_t count,
                            const ComplexMatrix& c);

/// Linear contraction with arbitrary maps (no positivity assumed).
ComplexMatrix contract_controls(const ProcessTensor& pt,
                                std::span<const QuantumMap> controls);

/// The subnormalized state at t_K produced by `controls`.
DensityMatrix apply(const ProcessTensor& pt, const ControlSequence& controls);

/// State at t_K after a causal break at slot k (outcome r of the break POVM,
/// then preparation s), conditioned on past controls on slots < k and with
/// `future` applied on slots k+1 .. K-1. Throws
/// UnresolvableConditionalError when the conditioning probability is below
/// kProbabilityFloor.
ConditionalState conditional_state(const ProcessTensor& pt,
                                   const CausalBreak& breaks, std::size_t k,
                                   std::size_t s, std::size_t r,
                                   const ControlSequence& past,
                                   const ControlSequence& future);

struct TomographyRecord {
  std::vector<std::size_t> basis_indices;  // slot 0 first
  ComplexMatrix output;
};

/// Reconstructs Υ from outputs of every basis-element sequence. PSD
/// violations down to -1e-8 are clipped; worse ones throw NotPsdError.
ProcessTensor from_tomography(std::span<const TomographyRecord> records,
                              const OperationBasis& basis,
                              std::vector<double> times);

/// Policy for slots before j when extracting Λ_{l:j}.
enum class Filler {
  identity,
  /// Discard the input and prepare the uniform mixture of the basis
  /// preparations.
  trash_and_prepare_average,
};

/// The map Λ_{l:j}: fresh informationally complete preparations at slot j,
/// `filler` on earlier slots, identity on slots strictly between j and l.
QuantumMap marginal_map(const ProcessTensor& pt, std::size_t j, std::size_t l,
                        Filler filler = Filler::identity);

/// Υ on a subset of the time grid (indices into times()); skipped slots
/// are contracted with the identity.
ProcessTensor restrict(const ProcessTensor& pt,
                       std::span<const std::size_t> time_indices);

}  // namespace ptr
