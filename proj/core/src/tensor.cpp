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

#include "ptr/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "ptr/errors.hpp"

namespace ptr {

namespace {

std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) {
    strides[i - 1] = strides[i] * dims[i];
  }
  return strides;
}

// Flat offsets (in the full index space) of every multi-index over `legs`,
// enumerated with the first listed leg slowest-varying.
std::vector<std::size_t> offsets_over(const std::vector<std::size_t>& dims,
                                      const std::vector<std::size_t>& strides,
                                      std::span<const std::size_t> legs) {
  std::vector<std::size_t> offsets{0};
  for (std::size_t leg : legs) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * dims[leg]);
    for (std::size_t base : offsets) {
      for (std::size_t i = 0; i < dims[leg]; ++i) {
        next.push_back(base + i * strides[leg]);
      }
    }
    offsets = std::move(next);
  }
  return offsets;
}

void require_valid_legs(std::span<const std::size_t> legs, std::size_t count) {
  std::set<std::size_t> seen;
  for (std::size_t leg : legs) {
    if (leg >= count || !seen.insert(leg).second) {
      throw DimensionError("invalid or repeated leg index");
    }
  }
}

}  // namespace

LegShape::LegShape(std::vector<std::size_t> dims,
                   std::vector<std::string> labels)
    : dims_(std::move(dims)), labels_(std::move(labels)) {
  if (dims_.size() != labels_.size()) {
    throw DimensionError("LegShape: dims and labels differ in length");
  }
  if (std::any_of(dims_.begin(), dims_.end(),
                  [](std::size_t d) { return d == 0; })) {
    throw DimensionError("LegShape: zero leg dimension");
  }
  std::set<std::string> unique(labels_.begin(), labels_.end());
  if (unique.size() != labels_.size()) {
    throw DimensionError("LegShape: duplicate leg label");
  }
}

LegShape LegShape::unlabelled(std::vector<std::size_t> dims) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    labels.push_back(std::to_string(i));
  }
  return LegShape(std::move(dims), std::move(labels));
}

std::size_t LegShape::total_dim() const {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1},
                         std::multiplies<>());
}

std::size_t LegShape::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw DimensionError("no leg labelled " + label);
  return static_cast<std::size_t>(it - labels_.begin());
}

LegShape LegShape::without(std::span<const std::size_t> legs) const {
  std::vector<std::size_t> dims;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (std::find(legs.begin(), legs.end(), i) == legs.end()) {
      dims.push_back(dims_[i]);
      labels.push_back(labels_[i]);
    }
  }
  return LegShape(std::move(dims), std::move(labels));
}

LegShape LegShape::select(std::span<const std::size_t> legs) const {
  require_valid_legs(legs, dims_.size());
  std::vector<std::size_t> dims;
  std::vector<std::string> labels;
  for (std::size_t leg : legs) {
    dims.push_back(dims_[leg]);
    labels.push_back(labels_[leg]);
  }
  return LegShape(std::move(dims), std::move(labels));
}

ComplexMatrix identity(std::size_t dim) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(dim),
                                 static_cast<Eigen::Index>(dim));
}

ComplexMatrix dagger(const ComplexMatrix& m) { return m.adjoint(); }

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw DimensionError("matrix is not square");
  if (max_abs(m - m.adjoint()) > tol) {
    throw NotHermitianError("matrix is not Hermitian");
  }
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return (m + m.adjoint()) * 0.5;
}

cd trace(const ComplexMatrix& m) { return m.trace(); }

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix tensor_product(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) return identity(1);
  ComplexMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) {
    out = tensor_product(out, factors[i]);
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const LegShape& shape,
                            std::span<const std::size_t> keep) {
  if (m.rows() != m.cols() ||
      static_cast<std::size_t>(m.rows()) != shape.total_dim()) {
    throw DimensionError("partial_trace: shape inconsistent with matrix");
  }
  require_valid_legs(keep, shape.size());
  std::vector<std::size_t> traced;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (std::find(keep.begin(), keep.end(), i) == keep.end()) {
      traced.push_back(i);
    }
  }
  const auto strides = strides_of(shape.dims());
  const auto kept_off = offsets_over(shape.dims(), strides, keep);
  const auto traced_off = offsets_over(shape.dims(), strides, traced);
  const auto n = static_cast<Eigen::Index>(kept_off.size());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      cd sum = 0.0;
      for (std::size_t t : traced_off) {
        sum += m(static_cast<Eigen::Index>(kept_off[r] + t),
                 static_cast<Eigen::Index>(kept_off[c] + t));
      }
      out(r, c) = sum;
    }
  }
  return out;
}

std::vector<std::size_t> inverse_permutation(
    std::span<const std::size_t> perm) {
  require_valid_legs(perm, perm.size());
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
  return inv;
}

ComplexMatrix permute_legs(const ComplexMatrix& m, const LegShape& shape,
                           std::span<const std::size_t> perm) {
  if (m.rows() != m.cols() ||
      static_cast<std::size_t>(m.rows()) != shape.total_dim()) {
    throw DimensionError("permute_legs: shape inconsistent with matrix");
  }
  if (perm.size() != shape.size()) {
    throw DimensionError("permute_legs: permutation has wrong length");
  }
  require_valid_legs(perm, shape.size());
  // Output index, enumerated over output legs; offsets are input positions.
  const auto strides = strides_of(shape.dims());
  const auto source = offsets_over(shape.dims(), strides, perm);
  const auto n = static_cast<Eigen::Index>(source.size());
  ComplexMatrix out(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      out(r, c) = m(static_cast<Eigen::Index>(source[r]),
                    static_cast<Eigen::Index>(source[c]));
    }
  }
  return out;
}

HermitianEigen hermitian_eig(const ComplexMatrix& m) {
  require_hermitian(m, 1e-10);
  Eigen::MatrixXcd h = hermitian_part(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error("hermitian_eig: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix matrix_log_on_support(const ComplexMatrix& m) {
  const auto eig = hermitian_eig(m);
  if (eig.eigenvalues.size() > 0 && eig.eigenvalues.minCoeff() < -1e-10) {
    throw NotPsdError("matrix_log_on_support: negative eigenvalue");
  }
  Eigen::VectorXcd logs(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < logs.size(); ++i) {
    const double v = eig.eigenvalues(i);
    logs(i) = v > kSupportCutoff ? std::log(v) : 0.0;
  }
  return eig.eigenvectors * logs.asDiagonal() * eig.eigenvectors.adjoint();
}

RealVector singular_values(const ComplexMatrix& m) {
  Eigen::MatrixXcd a = m;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues();
}

double trace_norm_hermitian(const ComplexMatrix& h) {
  if (h.rows() == 2 && h.cols() == 2) {
    const double a = h(0, 0).real();
    const double c = h(1, 1).real();
    const double mean = 0.5 * (a + c);
    const double radius = std::hypot(0.5 * (a - c), std::abs(h(0, 1)));
    return std::abs(mean + radius) + std::abs(mean - radius);
  }
  const auto eig = hermitian_eig(h);
  return eig.eigenvalues.cwiseAbs().sum();
}

double trace_norm_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("trace_norm_distance: dimension mismatch");
  }
  const ComplexMatrix diff = a - b;
  if (diff.rows() == diff.cols() && max_abs(diff - diff.adjoint()) <= 1e-10) {
    return trace_norm_hermitian(hermitian_part(diff));
  }
  return singular_values(diff).sum();
}

}  // namespace ptr
