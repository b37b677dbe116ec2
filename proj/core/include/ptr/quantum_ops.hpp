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

// States, completely positive maps, instruments and operation bases.
//
// Choi convention: C = Σ_ij map(|i><j|) ⊗ |i><j|, output leg leftmost and
// unnormalized, so tr C = in_dim for a trace-preserving map. The action of a
// map is then map(X)[a,b] = Σ_xy C[(a,x),(b,y)] X[x,y].
//
// Superoperators act on row-major vectorized operators:
// vec(X)[i * d + j] = X[i,j], and vec(K X K†) = (K ⊗ conj(K)) vec(X).

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ptr/tensor.hpp"

namespace ptr {

/// Default CP/TP defect threshold.
inline constexpr double kMapTolerance = 1e-8;

/// Hermitian, positive semidefinite operator with trace at most one.
/// Subnormalized states represent outcomes of non-deterministic controls;
/// their trace is the realization probability.
class DensityMatrix {
 public:
  /// Validates Hermiticity, positivity and trace <= 1 (all to `tol`).
  explicit DensityMatrix(ComplexMatrix m, double tol = 1e-10);

  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix basis_state(std::size_t dim, std::size_t index);
  static DensityMatrix maximally_mixed(std::size_t dim);
  /// Qubit state with Bloch vector (x, y, z), |r| <= 1.
  static DensityMatrix from_bloch(double x, double y, double z);

  const ComplexMatrix& matrix() const { return m_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  double trace() const { return m_.trace().real(); }
  DensityMatrix normalized() const;

 private:
  ComplexMatrix m_;
};

/// Completely positive map between operator spaces, stored by its Choi
/// matrix. Kraus and superoperator forms are derived on demand.
class QuantumMap {
 public:
  QuantumMap(ComplexMatrix choi, std::size_t in_dim, std::size_t out_dim);

  static QuantumMap from_kraus(const std::vector<ComplexMatrix>& kraus);
  static QuantumMap from_superoperator(const ComplexMatrix& superop,
                                       std::size_t in_dim,
                                       std::size_t out_dim);
  static QuantumMap identity(std::size_t dim);
  static QuantumMap unitary(const ComplexMatrix& u);
  /// X ↦ tr(X) ρ: discard the input and prepare ρ.
  static QuantumMap prepare(const ComplexMatrix& rho, std::size_t in_dim);
  /// X ↦ tr(effect · X) ρ.
  static QuantumMap measure_prepare(const ComplexMatrix& effect,
                                    const ComplexMatrix& rho);
  /// X ↦ c X + (1 - c) tr(X) I/d.
  static QuantumMap depolarizing(std::size_t dim, double c);
  /// X ↦ X^T; positive but not completely positive.
  static QuantumMap transpose(std::size_t dim);

  std::size_t in_dim() const { return in_dim_; }
  std::size_t out_dim() const { return out_dim_; }
  const ComplexMatrix& choi() const { return choi_; }

  ComplexMatrix superoperator() const;
  /// Kraus operators from the Choi eigendecomposition (eigenvalues above
  /// kSupportCutoff).
  std::vector<ComplexMatrix> kraus() const;

  /// Applies the map to an arbitrary operator (no positivity required).
  ComplexMatrix operator()(const ComplexMatrix& x) const;

  QuantumMap operator+(const QuantumMap& other) const;
  QuantumMap scaled(double factor) const;

 private:
  ComplexMatrix choi_;
  std::size_t in_dim_;
  std::size_t out_dim_;
};

/// Outcome-resolved decomposition of a CPTP map.
struct Instrument {
  std::vector<QuantumMap> members;
  std::vector<std::string> labels;

  /// Validates that Σ members is trace preserving to `tol`.
  Instrument(std::vector<QuantumMap> members, std::vector<std::string> labels,
             double tol = 1e-10);

  std::size_t size() const { return members.size(); }
  std::size_t dim() const { return members.front().in_dim(); }
  QuantumMap average() const;

  /// Measure the effects of `povm`, re-prepare `preparations[r]` on outcome r.
  static Instrument measure_reprepare(
      const std::vector<ComplexMatrix>& povm,
      const std::vector<ComplexMatrix>& preparations);
  /// Computational-basis projective measurement, re-preparing |r>.
  static Instrument computational(std::size_t dim);
};

/// Measure-then-reprepare operations whose output is independent of their
/// input.
struct CausalBreak {
  std::vector<ComplexMatrix> povm;
  std::vector<ComplexMatrix> preparations;

  /// Validates Σ povm = I and normalized PSD preparations.
  CausalBreak(std::vector<ComplexMatrix> povm,
              std::vector<ComplexMatrix> preparations, double tol = 1e-10);

  std::size_t dim() const { return static_cast<std::size_t>(povm.front().rows()); }
  /// The rank-one map X ↦ tr(povm[r] X) preparations[s].
  QuantumMap realization(std::size_t r, std::size_t s) const;

  /// Informationally complete break: the frame effects rescaled into a POVM
  /// and the frame states as preparations.
  static CausalBreak ic_default(std::size_t dim);
};

/// d^4 linearly independent measure-and-prepare maps spanning all linear
/// maps on d x d operators, with the dual frame used to expand an arbitrary
/// operation in them.
class OperationBasis {
 public:
  OperationBasis(std::vector<QuantumMap> elements,
                 std::vector<ComplexMatrix> preparations,
                 std::vector<ComplexMatrix> effects);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<QuantumMap>& elements() const { return elements_; }
  /// dual(i) satisfies Σ_xy dual(i)[x,y] choi(j)[x,y] = δ_ij.
  const std::vector<ComplexMatrix>& dual_frame() const { return dual_; }
  const ComplexMatrix& gram() const { return gram_; }
  std::size_t gram_rank() const { return gram_rank_; }

  /// The d^2 frame states used as preparations / effects. Element
  /// p * d^2 + e is X ↦ tr(effects[e] X) preparations[p].
  const std::vector<ComplexMatrix>& preparations() const { return preps_; }
  const std::vector<ComplexMatrix>& effects() const { return effects_; }

  std::string id() const { return "ic-default"; }

 private:
  std::size_t dim_;
  std::vector<QuantumMap> elements_;
  std::vector<ComplexMatrix> preps_;
  std::vector<ComplexMatrix> effects_;
  std::vector<ComplexMatrix> dual_;
  ComplexMatrix gram_;
  std::size_t gram_rank_ = 0;
};

/// The d^2 frame states |j>, (|j>+|k>)/√2, (|j>+i|k>)/√2 (j < k), as
/// projectors. For d = 2 this is {|0>, |1>, |+>, |+i>}.
std::vector<ComplexMatrix> frame_states(std::size_t dim);

/// Bilinear dual of a spanning list of matrices: returns D with
/// Σ_xy D_i[x,y] M_j[x,y] = δ_ij on the span. Gram pseudo-inverse with
/// singular-value cutoff 1e-10.
std::vector<ComplexMatrix> bilinear_dual(const std::vector<ComplexMatrix>& ms,
                                         std::size_t* rank = nullptr);

ComplexMatrix choi_of(const QuantumMap& map);

DensityMatrix apply_map(const QuantumMap& map, const DensityMatrix& state);

/// later ∘ earlier
QuantumMap compose(const QuantumMap& later, const QuantumMap& earlier);

struct CptpCheck {
  bool cp;
  bool tp;
  double cp_defect;  // max(0, -min eig of Choi)
  double tp_defect;  // max-norm of tr_out(Choi) - I
};

CptpCheck is_cptp(const QuantumMap& map, double tol = kMapTolerance);

/// True when I - tr_out(Choi) is PSD to `tol`.
bool is_trace_non_increasing(const QuantumMap& map, double tol = kMapTolerance);

OperationBasis ic_basis(std::size_t dim);

/// Coefficients α with Σ α_i basis_i = op (Choi representation).
std::vector<cd> decompose_operation(const QuantumMap& op,
                                    const OperationBasis& basis);

/// Σ α_i choi(basis_i)
ComplexMatrix resum_operation(const std::vector<cd>& coefficients,
                              const OperationBasis& basis);

/// Uhlmann fidelity (tr sqrt(sqrt(a) b sqrt(a)))^2.
double fidelity(const ComplexMatrix& a, const ComplexMatrix& b);

/// -tr(ρ ln ρ), natural log.
double von_neumann_entropy(const ComplexMatrix& rho);

/// Pauli matrices and common qubit states.
namespace qubit {
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
/// "0", "1", "+", "-", "+i", "-i" or "mixed"; throws ConfigError otherwise.
DensityMatrix named_state(const std::string& name);
}  // namespace qubit

}  // namespace ptr
