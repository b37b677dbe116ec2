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

// Dense complex matrix primitives.
//
// Every operator in the library is a ComplexMatrix. Multi-partite operators
// carry a LegShape describing their tensor factors. The global convention is
// that the leftmost factor in a tensor product is the slowest-varying index,
// i.e. the row index of a (a ⊗ b) is i_a * dim(b) + i_b.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ptr {

using cd = std::complex<double>;
using ComplexMatrix =
    Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<cd, Eigen::Dynamic, 1>;
using RealVector = Eigen::VectorXd;

/// Tensor-factor layout of a square operator.
class LegShape {
 public:
  LegShape() = default;
  LegShape(std::vector<std::size_t> dims, std::vector<std::string> labels);

  /// Unlabelled shape; legs are named "0", "1", ...
  static LegShape unlabelled(std::vector<std::size_t> dims);

  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return dims_.size(); }
  std::size_t total_dim() const;

  /// Index of a leg by label; throws DimensionError when absent.
  std::size_t index_of(const std::string& label) const;

  /// Shape with the given legs removed (order of the rest preserved).
  LegShape without(std::span<const std::size_t> legs) const;
  /// Shape keeping only the given legs, in the order given.
  LegShape select(std::span<const std::size_t> legs) const;

  bool operator==(const LegShape&) const = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::string> labels_;
};

ComplexMatrix identity(std::size_t dim);

ComplexMatrix dagger(const ComplexMatrix& m);

/// Largest absolute entry.
double max_abs(const ComplexMatrix& m);

/// Throws NotHermitianError / DimensionError unless m is square and
/// Hermitian to `tol` in max-norm.
void require_hermitian(const ComplexMatrix& m, double tol = 1e-10);

/// (m + m†) / 2
ComplexMatrix hermitian_part(const ComplexMatrix& m);

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor_product(std::span<const ComplexMatrix> factors);

/// Trace over every leg not listed in `keep`. The kept legs appear in the
/// order they are listed.
ComplexMatrix partial_trace(const ComplexMatrix& m, const LegShape& shape,
                            std::span<const std::size_t> keep);

/// Reorders tensor factors: leg `perm[i]` of the input becomes leg i of the
/// output (on both row and column side).
ComplexMatrix permute_legs(const ComplexMatrix& m, const LegShape& shape,
                           std::span<const std::size_t> perm);

std::vector<std::size_t> inverse_permutation(
    std::span<const std::size_t> perm);

struct HermitianEigen {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // columns
};

/// Eigendecomposition of a Hermitian matrix. Inputs with asymmetry up to
/// 1e-10 are symmetrized first; larger asymmetry throws.
HermitianEigen hermitian_eig(const ComplexMatrix& m);

/// Eigenvalue cutoff used when projecting onto the support of an operator.
inline constexpr double kSupportCutoff = 1e-12;

/// log(m) on the support of a PSD matrix; eigenvalues at or below
/// kSupportCutoff map to 0. Throws NotPsdError for eigenvalues below -1e-10.
ComplexMatrix matrix_log_on_support(const ComplexMatrix& m);

/// Descending singular values.
RealVector singular_values(const ComplexMatrix& m);

/// Σ singular values of (a - b), i.e. tr|a - b|.
double trace_norm_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// tr|h| for a Hermitian h; closed form for 2x2 inputs.
double trace_norm_hermitian(const ComplexMatrix& h);

cd trace(const ComplexMatrix& m);

}  // namespace ptr
