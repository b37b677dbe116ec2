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

#include "ptr/quantum_ops.hpp"

#include <algorithm>
#include <cmath>

#include "ptr/errors.hpp"

namespace ptr {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

// S[(a,b),(x,y)] = C[(a,x),(b,y)] and back; the reshuffle is an involution
// up to swapping the roles of the two shapes.
ComplexMatrix reshuffle(const ComplexMatrix& m, std::size_t out_dim,
                        std::size_t in_dim) {
  const std::size_t o = out_dim;
  const std::size_t n = in_dim;
  ComplexMatrix r(idx(o * o), idx(n * n));
  for (std::size_t a = 0; a < o; ++a) {
    for (std::size_t b = 0; b < o; ++b) {
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          r(idx(a * o + b), idx(x * n + y)) = m(idx(a * n + x), idx(b * n + y));
        }
      }
    }
  }
  return r;
}

ComplexMatrix unshuffle(const ComplexMatrix& s, std::size_t out_dim,
                        std::size_t in_dim) {
  const std::size_t o = out_dim;
  const std::size_t n = in_dim;
  ComplexMatrix c(idx(o * n), idx(o * n));
  for (std::size_t a = 0; a < o; ++a) {
    for (std::size_t b = 0; b < o; ++b) {
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          c(idx(a * n + x), idx(b * n + y)) = s(idx(a * o + b), idx(x * n + y));
        }
      }
    }
  }
  return c;
}

ComplexMatrix trace_out_output(const ComplexMatrix& choi, std::size_t out_dim,
                               std::size_t in_dim) {
  ComplexMatrix r = ComplexMatrix::Zero(idx(in_dim), idx(in_dim));
  for (std::size_t a = 0; a < out_dim; ++a) {
    r += choi.block(idx(a * in_dim), idx(a * in_dim), idx(in_dim), idx(in_dim));
  }
  return r;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  const auto eig = hermitian_eig(m);
  Eigen::VectorXcd roots(eig.eigenvalues.size());
  for (Index i = 0; i < roots.size(); ++i) {
    roots(i) = std::sqrt(std::max(0.0, eig.eigenvalues(i)));
  }
  return eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.adjoint();
}

}  // namespace

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(ComplexMatrix m, double tol) : m_(std::move(m)) {
  require_hermitian(m_, tol);
  m_ = hermitian_part(m_);
  const auto eig = hermitian_eig(m_);
  if (eig.eigenvalues.minCoeff() < -tol) {
    throw NotPsdError("DensityMatrix: negative eigenvalue");
  }
  if (trace() > 1.0 + tol) {
    throw DimensionError("DensityMatrix: trace exceeds one");
  }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const ComplexVector v = psi.normalized();
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::basis_state(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionError("basis_state: index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(idx(dim), idx(dim));
  m(idx(index), idx(index)) = 1.0;
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix(identity(dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::from_bloch(double x, double y, double z) {
  if (std::sqrt(x * x + y * y + z * z) > 1.0 + 1e-12) {
    throw ConfigError("Bloch vector longer than one");
  }
  ComplexMatrix m = 0.5 * (identity(2) + x * qubit::pauli_x() +
                           y * qubit::pauli_y() + z * qubit::pauli_z());
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::normalized() const {
  const double t = trace();
  if (t <= 0.0) throw UnresolvableConditionalError("zero-trace state");
  return DensityMatrix(m_ / t);
}

// ---------------------------------------------------------------------------
// QuantumMap

QuantumMap::QuantumMap(ComplexMatrix choi, std::size_t in_dim,
                       std::size_t out_dim)
    : choi_(std::move(choi)), in_dim_(in_dim), out_dim_(out_dim) {
  if (static_cast<std::size_t>(choi_.rows()) != in_dim * out_dim ||
      choi_.rows() != choi_.cols()) {
    throw DimensionError("QuantumMap: Choi matrix has wrong size");
  }
}

QuantumMap QuantumMap::from_kraus(const std::vector<ComplexMatrix>& kraus) {
  if (kraus.empty()) throw DimensionError("from_kraus: no operators");
  const auto out = static_cast<std::size_t>(kraus.front().rows());
  const auto in = static_cast<std::size_t>(kraus.front().cols());
  ComplexMatrix choi = ComplexMatrix::Zero(idx(out * in), idx(out * in));
  for (const auto& k : kraus) {
    if (static_cast<std::size_t>(k.rows()) != out ||
        static_cast<std::size_t>(k.cols()) != in) {
      throw DimensionError("from_kraus: inconsistent operator shapes");
    }
    const ComplexVector v =
        Eigen::Map<const ComplexVector>(k.data(), k.size());
    choi += v * v.adjoint();
  }
  return QuantumMap(std::move(choi), in, out);
}

QuantumMap QuantumMap::from_superoperator(const ComplexMatrix& superop,
                                          std::size_t in_dim,
                                          std::size_t out_dim) {
  if (static_cast<std::size_t>(superop.rows()) != out_dim * out_dim ||
      static_cast<std::size_t>(superop.cols()) != in_dim * in_dim) {
    throw DimensionError("from_superoperator: wrong shape");
  }
  return QuantumMap(unshuffle(superop, out_dim, in_dim), in_dim, out_dim);
}

QuantumMap QuantumMap::identity(std::size_t dim) {
  return from_kraus({ptr::identity(dim)});
}

QuantumMap QuantumMap::unitary(const ComplexMatrix& u) { return from_kraus({u}); }

QuantumMap QuantumMap::prepare(const ComplexMatrix& rho, std::size_t in_dim) {
  return QuantumMap(tensor_product(rho, ptr::identity(in_dim)), in_dim,
                    static_cast<std::size_t>(rho.rows()));
}

QuantumMap QuantumMap::measure_prepare(const ComplexMatrix& effect,
                                       const ComplexMatrix& rho) {
  return QuantumMap(tensor_product(rho, effect.transpose()),
                    static_cast<std::size_t>(effect.rows()),
                    static_cast<std::size_t>(rho.rows()));
}

QuantumMap QuantumMap::depolarizing(std::size_t dim, double c) {
  const double d = static_cast<double>(dim);
  ComplexMatrix choi = c * identity(dim).choi() +
                       (1.0 - c) / d * ptr::identity(dim * dim);
  return QuantumMap(std::move(choi), dim, dim);
}

QuantumMap QuantumMap::transpose(std::size_t dim) {
  ComplexMatrix choi = ComplexMatrix::Zero(idx(dim * dim), idx(dim * dim));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      choi(idx(j * dim + i), idx(i * dim + j)) = 1.0;
    }
  }
  return QuantumMap(std::move(choi), dim, dim);
}

ComplexMatrix QuantumMap::superoperator() const {
  return reshuffle(choi_, out_dim_, in_dim_);
}

std::vector<ComplexMatrix> QuantumMap::kraus() const {
  const auto eig = hermitian_eig(choi_);
  std::vector<ComplexMatrix> ops;
  for (Index i = eig.eigenvalues.size(); i-- > 0;) {
    const double lambda = eig.eigenvalues(i);
    if (lambda <= kSupportCutoff) continue;
    ComplexVector v = std::sqrt(lambda) * eig.eigenvectors.col(i);
    ops.emplace_back(Eigen::Map<ComplexMatrix>(v.data(), idx(out_dim_),
                                               idx(in_dim_)));
  }
  return ops;
}

ComplexMatrix QuantumMap::operator()(const ComplexMatrix& x) const {
  if (static_cast<std::size_t>(x.rows()) != in_dim_ || x.rows() != x.cols()) {
    throw DimensionError("QuantumMap: input dimension mismatch");
  }
  ComplexMatrix out(idx(out_dim_), idx(out_dim_));
  for (std::size_t a = 0; a < out_dim_; ++a) {
    for (std::size_t b = 0; b < out_dim_; ++b) {
      out(idx(a), idx(b)) =
          choi_.block(idx(a * in_dim_), idx(b * in_dim_), idx(in_dim_),
                      idx(in_dim_))
              .cwiseProduct(x)
              .sum();
    }
  }
  return out;
}

QuantumMap QuantumMap::operator+(const QuantumMap& other) const {
  if (in_dim_ != other.in_dim_ || out_dim_ != other.out_dim_) {
    throw DimensionError("QuantumMap: cannot add maps of different shape");
  }
  return QuantumMap(choi_ + other.choi_, in_dim_, out_dim_);
}

QuantumMap QuantumMap::scaled(double factor) const {
  return QuantumMap(choi_ * factor, in_dim_, out_dim_);
}

// ---------------------------------------------------------------------------
// Instrument / CausalBreak

Instrument::Instrument(std::vector<QuantumMap> members_in,
                       std::vector<std::string> labels_in, double tol)
    : members(std::move(members_in)), labels(std::move(labels_in)) {
  if (members.empty()) throw DimensionError("Instrument: no members");
  if (labels.empty()) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      labels.push_back(std::to_string(i));
    }
  }
  if (labels.size() != members.size()) {
    throw DimensionError("Instrument: label count mismatch");
  }
  const auto check = is_cptp(average(), tol);
  if (!check.tp) {
    throw DimensionError("Instrument: members do not sum to a TP map");
  }
}

QuantumMap Instrument::average() const {
  QuantumMap sum = members.front();
  for (std::size_t i = 1; i < members.size(); ++i) sum = sum + members[i];
  return sum;
}

Instrument Instrument::measure_reprepare(
    const std::vector<ComplexMatrix>& povm,
    const std::vector<ComplexMatrix>& preparations) {
  if (povm.size() != preparations.size()) {
    throw DimensionError("measure_reprepare: one preparation per outcome");
  }
  std::vector<QuantumMap> members;
  for (std::size_t r = 0; r < povm.size(); ++r) {
    members.push_back(QuantumMap::measure_prepare(povm[r], preparations[r]));
  }
  return Instrument(std::move(members), {});
}

Instrument Instrument::computational(std::size_t dim) {
  std::vector<ComplexMatrix> povm;
  for (std::size_t r = 0; r < dim; ++r) {
    povm.push_back(DensityMatrix::basis_state(dim, r).matrix());
  }
  return measure_reprepare(povm, povm);
}

CausalBreak::CausalBreak(std::vector<ComplexMatrix> povm_in,
                         std::vector<ComplexMatrix> preparations_in,
                         double tol)
    : povm(std::move(povm_in)), preparations(std::move(preparations_in)) {
  if (povm.empty() || preparations.empty()) {
    throw DimensionError("CausalBreak: empty POVM or preparation set");
  }
  const auto d = povm.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& e : povm) {
    if (e.rows() != d || e.cols() != d) {
      throw DimensionError("CausalBreak: inconsistent effect dimensions");
    }
    if (hermitian_eig(e).eigenvalues.minCoeff() < -tol) {
      throw NotPsdError("CausalBreak: effect is not PSD");
    }
    sum += e;
  }
  if (max_abs(sum - ptr::identity(static_cast<std::size_t>(d))) > tol) {
    throw DimensionError("CausalBreak: effects do not sum to identity");
  }
  for (const auto& p : preparations) {
    if (p.rows() != d) throw DimensionError("CausalBreak: preparation dim");
    DensityMatrix checked(p, tol);
    if (std::abs(checked.trace() - 1.0) > tol) {
      throw DimensionError("CausalBreak: preparation not normalized");
    }
  }
}

QuantumMap CausalBreak::realization(std::size_t r, std::size_t s) const {
  return QuantumMap::measure_prepare(povm.at(r), preparations.at(s));
}

CausalBreak CausalBreak::ic_default(std::size_t dim) {
  const auto frame = frame_states(dim);
  ComplexMatrix total = ComplexMatrix::Zero(idx(dim), idx(dim));
  for (const auto& f : frame) total += f;
  const ComplexMatrix root = psd_sqrt(total);
  const ComplexMatrix inv_root = root.inverse();
  std::vector<ComplexMatrix> povm;
  for (const auto& f : frame) {
    povm.push_back(hermitian_part(inv_root * f * inv_root));
  }
  return CausalBreak(std::move(povm), frame);
}

// ---------------------------------------------------------------------------
// Operation basis

std::vector<ComplexMatrix> frame_states(std::size_t dim) {
  if (dim < 2) throw DimensionError("frame_states: dimension must be >= 2");
  std::vector<ComplexVector> kets;
  for (std::size_t j = 0; j < dim; ++j) {
    ComplexVector v = ComplexVector::Zero(idx(dim));
    v(idx(j)) = 1.0;
    kets.push_back(v);
  }
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t k = j + 1; k < dim; ++k) {
      ComplexVector plus = ComplexVector::Zero(idx(dim));
      plus(idx(j)) = s;
      plus(idx(k)) = s;
      ComplexVector plus_i = ComplexVector::Zero(idx(dim));
      plus_i(idx(j)) = s;
      plus_i(idx(k)) = cd(0.0, s);
      kets.push_back(plus);
      kets.push_back(plus_i);
    }
  }
  std::vector<ComplexMatrix> states;
  for (const auto& v : kets) states.emplace_back(v * v.adjoint());
  return states;
}

std::vector<ComplexMatrix> bilinear_dual(const std::vector<ComplexMatrix>& ms,
                                         std::size_t* rank) {
  const auto n = idx(ms.size());
  ComplexMatrix gram(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      gram(i, j) = ms[static_cast<std::size_t>(i)]
                       .conjugate()
                       .cwiseProduct(ms[static_cast<std::size_t>(j)])
                       .sum();
    }
  }
  const auto eig = hermitian_eig(gram);
  const double top = eig.eigenvalues.cwiseAbs().maxCoeff();
  Eigen::VectorXcd inv(n);
  std::size_t r = 0;
  for (Index i = 0; i < n; ++i) {
    const double v = eig.eigenvalues(i);
    if (v > 1e-10 * top) {
      inv(i) = 1.0 / v;
      ++r;
    } else {
      inv(i) = 0.0;
    }
  }
  if (rank != nullptr) *rank = r;
  const ComplexMatrix pinv =
      eig.eigenvectors * inv.asDiagonal() * eig.eigenvectors.adjoint();
  std::vector<ComplexMatrix> dual;
  for (Index i = 0; i < n; ++i) {
    ComplexMatrix f = ComplexMatrix::Zero(ms.front().rows(), ms.front().cols());
    for (Index j = 0; j < n; ++j) {
      f += pinv(j, i) * ms[static_cast<std::size_t>(j)];
    }
    dual.emplace_back(f.conjugate());
  }
  return dual;
}

OperationBasis::OperationBasis(std::vector<QuantumMap> elements,
                               std::vector<ComplexMatrix> preparations,
                               std::vector<ComplexMatrix> effects)
    : dim_(elements.front().in_dim()),
      elements_(std::move(elements)),
      preps_(std::move(preparations)),
      effects_(std::move(effects)) {
  std::vector<ComplexMatrix> chois;
  for (const auto& e : elements_) chois.push_back(e.choi());
  dual_ = bilinear_dual(chois, &gram_rank_);
  const auto n = idx(chois.size());
  gram_ = ComplexMatrix(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      gram_(i, j) = chois[static_cast<std::size_t>(i)]
                        .conjugate()
                        .cwiseProduct(chois[static_cast<std::size_t>(j)])
                        .sum();
    }
  }
  const std::size_t full = dim_ * dim_ * dim_ * dim_;
  if (gram_rank_ != full) {
    throw RankDeficientError("OperationBasis: Gram matrix is singular");
  }
}

OperationBasis ic_basis(std::size_t dim) {
  const auto frame = frame_states(dim);
  std::vector<QuantumMap> elements;
  for (const auto& prep : frame) {
    for (const auto& effect : frame) {
      elements.push_back(QuantumMap::measure_prepare(effect, prep));
    }
  }
  return OperationBasis(std::move(elements), frame, frame);
}

std::vector<cd> decompose_operation(const QuantumMap& op,
                                    const OperationBasis& basis) {
  if (op.in_dim() != basis.dim() || op.out_dim() != basis.dim()) {
    throw DimensionError("decompose_operation: dimension mismatch");
  }
  std::vector<cd> alpha;
  alpha.reserve(basis.size());
  for (const auto& d : basis.dual_frame()) {
    alpha.push_back(d.cwiseProduct(op.choi()).sum());
  }
  return alpha;
}

ComplexMatrix resum_operation(const std::vector<cd>& coefficients,
                              const OperationBasis& basis) {
  if (coefficients.size() != basis.size()) {
    throw DimensionError("resum_operation: coefficient count mismatch");
  }
  ComplexMatrix sum = ComplexMatrix::Zero(basis.elements().front().choi().rows(),
                                          basis.elements().front().choi().cols());
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    sum += coefficients[i] * basis.elements()[i].choi();
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Free functions

ComplexMatrix choi_of(const QuantumMap& map) { return map.choi(); }

DensityMatrix apply_map(const QuantumMap& map, const DensityMatrix& state) {
  if (map.in_dim() != state.dim()) {
    throw DimensionError("apply_map: dimension mismatch");
  }
  return DensityMatrix(map(state.matrix()));
}

QuantumMap compose(const QuantumMap& later, const QuantumMap& earlier) {
  if (earlier.out_dim() != later.in_dim()) {
    throw DimensionError("compose: dimension mismatch");
  }
  return QuantumMap::from_superoperator(
      later.superoperator() * earlier.superoperator(), earlier.in_dim(),
      later.out_dim());
}

CptpCheck is_cptp(const QuantumMap& map, double tol) {
  const auto eig = hermitian_eig(map.choi());
  const double cp_defect = std::max(0.0, -eig.eigenvalues.minCoeff());
  const ComplexMatrix reduced =
      trace_out_output(map.choi(), map.out_dim(), map.in_dim());
  const double tp_defect = max_abs(reduced - ptr::identity(map.in_dim()));
  return {cp_defect <= tol, tp_defect <= tol, cp_defect, tp_defect};
}

bool is_trace_non_increasing(const QuantumMap& map, double tol) {
  const ComplexMatrix reduced =
      trace_out_output(map.choi(), map.out_dim(), map.in_dim());
  return hermitian_eig(ptr::identity(map.in_dim()) - reduced)
             .eigenvalues.minCoeff() >= -tol;
}

double fidelity(const ComplexMatrix& a, const ComplexMatrix& b) {
  const ComplexMatrix root = psd_sqrt(a);
  const auto eig = hermitian_eig(hermitian_part(root * b * root));
  double sum = 0.0;
  for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
    sum += std::sqrt(std::max(0.0, eig.eigenvalues(i)));
  }
  return sum * sum;
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  const auto eig = hermitian_eig(rho);
  double s = 0.0;
  for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double v = eig.eigenvalues(i);
    if (v > kSupportCutoff) s -= v * std::log(v);
  }
  return s;
}

namespace qubit {

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, cd(0.0, -1.0), cd(0.0, 1.0), 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

DensityMatrix named_state(const std::string& name) {
  if (name == "0") return DensityMatrix::from_bloch(0, 0, 1);
  if (name == "1") return DensityMatrix::from_bloch(0, 0, -1);
  if (name == "+") return DensityMatrix::from_bloch(1, 0, 0);
  if (name == "-") return DensityMatrix::from_bloch(-1, 0, 0);
  if (name == "+i") return DensityMatrix::from_bloch(0, 1, 0);
  if (name == "-i") return DensityMatrix::from_bloch(0, -1, 0);
  if (name == "mixed") return DensityMatrix::maximally_mixed(2);
  throw ConfigError("unknown qubit state name: " + name);
}

}  // namespace qubit

}  // namespace ptr
