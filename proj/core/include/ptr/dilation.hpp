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

// System-environment models and the simulator that turns them into process
// tensors.
//
// Joint operators are ordered system ⊗ environment. A control at slot j is
// applied to the system factor at t_j, then the joint state evolves over
// [t_j, t_{j+1}]; the reduced state at t_K is the output.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ptr/process_tensor.hpp"
#include "ptr/quantum_ops.hpp"
#include "ptr/tensor.hpp"

namespace ptr {

/// A finite-dimensional quantum environment.
struct QuantumEnvironment {
  std::size_t env_dim = 1;
  /// Joint state at t_0 on system ⊗ environment; may be correlated.
  ComplexMatrix initial_joint;
  /// Joint unitary for interval `step` running from t0 to t1.
  std::function<ComplexMatrix(std::size_t step, double t0, double t1)>
      step_unitary;
};

/// How the classical-noise average is evaluated.
enum class NoiseAveraging {
  /// Exact: the state is tracked as a finite sum of Fourier modes in the
  /// noise variable, averaged with the Cauchy characteristic function.
  characteristic,
  /// Gauss-Legendre quadrature after the substitution x = γ tan(u).
  quadrature,
};

/// A classical random field x, Cauchy distributed with width γ, driving the
/// conditional unitary exp(-i x H t) with H = `generator`.
struct ClassicalNoiseEnvironment {
  ComplexMatrix generator;
  double cauchy_width = 1.0;
  NoiseAveraging averaging = NoiseAveraging::characteristic;
  /// Quadrature nodes x_k and probability weights (used in quadrature mode).
  std::vector<double> nodes;
  std::vector<double> weights;
  ComplexMatrix initial_system;
};

struct SEModel {
  std::string name;
  std::size_t system_dim = 2;
  std::variant<QuantumEnvironment, ClassicalNoiseEnvironment> env;

  bool is_classical() const {
    return std::holds_alternative<ClassicalNoiseEnvironment>(env);
  }
};

struct SimulationResult {
  DensityMatrix system;
  /// Final joint state (quantum environments only).
  std::optional<ComplexMatrix> joint;
  /// Joint state after every control and every evolution step, in order
  /// (quantum environments only, when requested).
  std::vector<ComplexMatrix> joint_history;
};

/// Runs one control sequence. `times` has K + 1 entries for K controls.
SimulationResult simulate_sequence(const SEModel& model,
                                   std::span<const double> times,
                                   std::span<const QuantumMap> controls,
                                   bool record_history = false);

SimulationResult simulate_sequence(const SEModel& model,
                                   std::span<const double> times,
                                   const ControlSequence& controls,
                                   bool record_history = false);

struct BuildOptions {
  std::size_t workers = 0;  // 0: PTR_WORKERS or hardware concurrency
  bool allow_large = false;
  std::size_t max_sequences = 65536;  // d = 2, K = 4
};

/// Sweeps every basis-element sequence through simulate_sequence and
/// reconstructs Υ. Throws GuardError when the sweep exceeds
/// options.max_sequences and allow_large is unset.
ProcessTensor build_process_tensor(const SEModel& model,
                                   std::vector<double> times,
                                   const OperationBasis& basis,
                                   const BuildOptions& options = {});

/// Pauli axis of the dephasing coupling.
enum class Axis { x, y, z };

Axis parse_axis(const std::string& name);

/// Dephasing by a Cauchy-distributed classical field, coupling (g/2) σ_axis.
/// The initial system state defaults to |+>.
SEModel model_b1(double cauchy_width, double coupling, Axis axis = Axis::z,
                 NoiseAveraging averaging = NoiseAveraging::characteristic,
                 std::size_t quadrature_nodes = 2001,
                 std::optional<ComplexMatrix> initial_system = std::nullopt);

/// Partial swap exp(i ω Δt SWAP) with a maximally mixed qubit environment.
/// The initial system state defaults to |0>.
SEModel model_b2(double swap_rate,
                 std::optional<ComplexMatrix> initial_system = std::nullopt);

/// Full SWAP at every step with initial state ρ_S ⊗ ρ_E.
SEModel model_b3(const DensityMatrix& system, const DensityMatrix& env);

/// One fresh environment register per interval, each dilating the given
/// map. Step j of a K-step grid uses maps[j].
SEModel model_markov(const std::vector<QuantumMap>& maps,
                     const DensityMatrix& initial);

/// A quantum environment supplied directly as time-independent step
/// unitaries (one per interval) and an initial joint state.
SEModel model_custom(std::size_t system_dim, std::size_t env_dim,
                     std::vector<ComplexMatrix> step_unitaries,
                     ComplexMatrix initial_joint);

/// Closed forms for the partial-swap model, with θ = ω Δt per interval.
namespace partial_swap {
/// The exchange operator on two qudits of dimension d.
ComplexMatrix swap(std::size_t dim);

/// cos θ 1 + i sin θ SWAP on two qudits of dimension d.
ComplexMatrix unitary(std::size_t dim, double theta);

/// Environment state after preparing `prepared` on the system, one
/// interval with a maximally mixed qubit environment, and the effect
/// `effect` on the system. Normalized; throws when the outcome has zero
/// probability.
ComplexMatrix conditional_environment(const ComplexMatrix& prepared,
                                      const ComplexMatrix& effect,
                                      double theta);

/// System state one interval after preparing `prepared` alongside the
/// environment state `env`.
ComplexMatrix output_after(const ComplexMatrix& prepared,
                           const ComplexMatrix& env, double theta);
}  // namespace partial_swap

}  // namespace ptr
