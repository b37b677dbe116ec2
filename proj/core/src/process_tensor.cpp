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

#include "ptr/process_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "ptr/errors.hpp"

namespace ptr {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

// Removes the final time: tr over O_K and I_{K-1}, divided by d. Causality
// makes the result the process tensor on t_0 .. t_{K-1}.
ComplexMatrix drop_final_time(const ComplexMatrix& choi, std::size_t d) {
  const std::size_t rest = static_cast<std::size_t>(choi.rows()) / (d * d);
  ComplexMatrix out = ComplexMatrix::Zero(idx(rest), idx(rest));
  for (std::size_t k = 0; k < d * d; ++k) {
    out += choi.block(idx(k * rest), idx(k * rest), idx(rest), idx(rest));
  }
  return out / static_cast<double>(d);
}

}  // namespace

// ---------------------------------------------------------------------------
// ProcessTensor

ProcessTensor::ProcessTensor(ComplexMatrix choi, std::size_t system_dim,
                             std::vector<double> times)
    : choi_(std::move(choi)), dim_(system_dim), times_(std::move(times)) {
  if (times_.empty()) throw DimensionError("ProcessTensor: empty time grid");
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1])) {
      throw DimensionError("ProcessTensor: times must strictly increase");
    }
  }
  legs_ = canonical_legs(dim_, steps());
  if (choi_.rows() != choi_.cols() ||
      static_cast<std::size_t>(choi_.rows()) != legs_.total_dim()) {
    throw DimensionError("ProcessTensor: Choi matrix does not match legs");
  }
}

LegShape ProcessTensor::canonical_legs(std::size_t system_dim,
                                       std::size_t steps) {
  std::vector<std::size_t> dims(2 * steps + 1, system_dim);
  std::vector<std::string> labels{"O" + std::to_string(steps)};
  for (std::size_t j = steps; j-- > 0;) {
    labels.push_back("I" + std::to_string(j));
    labels.push_back("O" + std::to_string(j));
  }
  return LegShape(std::move(dims), std::move(labels));
}

std::size_t ProcessTensor::input_leg(std::size_t steps, std::size_t slot) {
  return 1 + 2 * (steps - 1 - slot);
}

std::size_t ProcessTensor::output_leg(std::size_t steps, std::size_t slot) {
  return 2 + 2 * (steps - 1 - slot);
}

// ---------------------------------------------------------------------------
// Contractions

ComplexMatrix contract_trailing(const ComplexMatrix& m,
                                const ComplexMatrix& c) {
  const Index n = c.rows();
  if (c.cols() != n || n == 0 || m.rows() % n != 0 || m.rows() != m.cols()) {
    throw DimensionError("contract_trailing: incompatible dimensions");
  }
  const Index outer = m.rows() / n;
  ComplexMatrix out(outer, outer);
  for (Index a = 0; a < outer; ++a) {
    for (Index b = 0; b < outer; ++b) {
      out(a, b) = m.block(a * n, b * n, n, n).cwiseProduct(c).sum();
    }
  }
  return out;
}

ComplexMatrix contract_legs(const ComplexMatrix& m,
                            std::span<const std::size_t> dims,
                            std::size_t first, std::size_t count,
                            const ComplexMatrix& c) {
  if (first + count > dims.size()) {
    throw DimensionError("contract_legs: leg range out of bounds");
  }
  auto prod = [&](std::size_t lo, std::size_t hi) {
    return std::accumulate(dims.begin() + static_cast<std::ptrdiff_t>(lo),
                           dims.begin() + static_cast<std::ptrdiff_t>(hi),
                           std::size_t{1}, std::multiplies<>());
  };
  const std::size_t before = prod(0, first);
  const std::size_t n = prod(first, first + count);
  const std::size_t after = prod(first + count, dims.size());
  if (static_cast<std::size_t>(c.rows()) != n || c.cols() != c.rows() ||
      static_cast<std::size_t>(m.rows()) != before * n * after) {
    throw DimensionError("contract_legs: incompatible dimensions");
  }
  const std::size_t outer = before * after;
  ComplexMatrix out = ComplexMatrix::Zero(idx(outer), idx(outer));
  for (std::size_t a = 0; a < before; ++a) {
    for (std::size_t a2 = 0; a2 < before; ++a2) {
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          const cd w = c(idx(x), idx(y));
          if (w == cd(0.0)) continue;
          const Index row = idx((a * n + x) * after);
          const Index col = idx((a2 * n + y) * after);
          out.block(idx(a * after), idx(a2 * after), idx(after), idx(after)) +=
              w * m.block(row, col, idx(after), idx(after));
        }
      }
    }
  }
  return out;
}

ComplexMatrix contract_controls(const ProcessTensor& pt,
                                std::span<const QuantumMap> controls) {
  if (controls.size() != pt.steps()) {
    throw DimensionError("apply: expected " + std::to_string(pt.steps()) +
                         " controls, got " + std::to_string(controls.size()));
  }
  ComplexMatrix cur = pt.choi();
  for (const auto& control : controls) {
    if (control.in_dim() != pt.system_dim() ||
        control.out_dim() != pt.system_dim()) {
      throw DimensionError("apply: control dimension mismatch");
    }
    cur = contract_trailing(cur, control.choi());
  }
  return cur;
}

DensityMatrix apply(const ProcessTensor& pt, const ControlSequence& controls) {
  return DensityMatrix(hermitian_part(contract_controls(pt, controls.slots)),
                       1e-9);
}

ConditionalState conditional_state(const ProcessTensor& pt,
                                   const CausalBreak& breaks, std::size_t k,
                                   std::size_t s, std::size_t r,
                                   const ControlSequence& past,
                                   const ControlSequence& future) {
  const std::size_t steps = pt.steps();
  if (k >= steps) throw DimensionError("conditional_state: break slot range");
  if (past.size() != k || future.size() != steps - k - 1) {
    throw DimensionError("conditional_state: past/future slot counts");
  }
  if (breaks.dim() != pt.system_dim() || r >= breaks.povm.size() ||
      s >= breaks.preparations.size()) {
    throw DimensionError("conditional_state: invalid break realization");
  }
  ComplexMatrix cur = pt.choi();
  for (const auto& control : past.slots) {
    cur = contract_trailing(cur, control.choi());
  }
  // Measurement on O_k, then preparation into I_k.
  cur = contract_trailing(cur, breaks.povm[r].transpose());
  cur = contract_trailing(cur, breaks.preparations[s]);
  for (const auto& control : future.slots) {
    cur = contract_trailing(cur, control.choi());
  }
  const ComplexMatrix sub = hermitian_part(cur);
  const double p = sub.trace().real();
  if (!(p > kProbabilityFloor)) {
    throw UnresolvableConditionalError(
        "conditional_state: outcome probability below floor");
  }
  return {DensityMatrix(sub / p, 1e-9), p,
          ConditioningRecord{k, r, s, past, {}}};
}

// ---------------------------------------------------------------------------
// Tomography

ProcessTensor from_tomography(std::span<const TomographyRecord> records,
                              const OperationBasis& basis,
                              std::vector<double> times) {
  if (times.empty()) throw DimensionError("from_tomography: empty grid");
  const std::size_t steps = times.size() - 1;
  const std::size_t d = basis.dim();
  const std::size_t nb = basis.size();
  const std::size_t sequences = ipow(nb, steps);
  if (records.size() != sequences) {
    throw RankDeficientError("from_tomography: expected " +
                             std::to_string(sequences) + " records, got " +
                             std::to_string(records.size()));
  }
  // data[(a*d + b) * sequences + μ], μ = Σ_j μ_j nb^j (slot 0 fastest).
  std::vector<cd> data(d * d * sequences, cd(0.0));
  std::vector<bool> seen(sequences, false);
  for (const auto& rec : records) {
    if (rec.basis_indices.size() != steps) {
      throw DimensionError("from_tomography: record slot count mismatch");
    }
    if (static_cast<std::size_t>(rec.output.rows()) != d ||
        rec.output.cols() != rec.output.rows()) {
      throw DimensionError("from_tomography: record output dimension");
    }
    std::size_t mu = 0;
    for (std::size_t j = steps; j-- > 0;) {
      if (rec.basis_indices[j] >= nb) {
        throw DimensionError("from_tomography: basis index out of range");
      }
      mu = mu * nb + rec.basis_indices[j];
    }
    if (seen[mu]) throw RankDeficientError("from_tomography: duplicate record");
    seen[mu] = true;
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        data[(a * d + b) * sequences + mu] = rec.output(idx(a), idx(b));
      }
    }
  }

  // Per-slot dual-frame contraction: replace basis index μ_j by the Choi
  // entry index p_j of the dual element (both range over nb = d^4 values).
  Eigen::MatrixXcd w(idx(nb), idx(nb));
  for (std::size_t mu = 0; mu < nb; ++mu) {
    const ComplexMatrix& dual = basis.dual_frame()[mu];
    for (std::size_t p = 0; p < nb; ++p) {
      w(idx(p), idx(mu)) = dual.data()[p];
    }
  }
  std::vector<cd> buffer(nb);
  for (std::size_t j = 0; j < steps; ++j) {
    const std::size_t stride = ipow(nb, j);
    const std::size_t blocks = d * d * sequences / (stride * nb);
    for (std::size_t blk = 0; blk < blocks; ++blk) {
      for (std::size_t inner = 0; inner < stride; ++inner) {
        const std::size_t base = blk * stride * nb + inner;
        Eigen::Map<Eigen::VectorXcd> in(buffer.data(), idx(nb));
        for (std::size_t mu = 0; mu < nb; ++mu) {
          in(idx(mu)) = data[base + mu * stride];
        }
        const Eigen::VectorXcd out = w * in;
        for (std::size_t p = 0; p < nb; ++p) {
          data[base + p * stride] = out(idx(p));
        }
      }
    }
  }

  // Assemble Υ[(a, x_{K-1}..x_0), (b, y_{K-1}..y_0)] with p_j = x_j d^2 + y_j.
  const std::size_t pair = d * d;
  const std::size_t n = ipow(pair, steps);
  const std::size_t dim = d * n;
  ComplexMatrix choi(idx(dim), idx(dim));
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      for (std::size_t seq = 0; seq < sequences; ++seq) {
        std::size_t rest = seq;
        std::size_t x = 0;
        std::size_t y = 0;
        std::size_t scale = 1;
        for (std::size_t j = 0; j < steps; ++j) {
          const std::size_t p = rest % nb;
          rest /= nb;
          x += (p / pair) * scale;
          y += (p % pair) * scale;
          scale *= pair;
        }
        choi(idx(a * n + x), idx(b * n + y)) =
            data[(a * d + b) * sequences + seq];
      }
    }
  }

  choi = hermitian_part(choi);
  const auto eig = hermitian_eig(choi);
  const double min_eig = eig.eigenvalues.minCoeff();
  if (min_eig < -1e-8) {
    throw NotPsdError("from_tomography: reconstructed tensor not PSD (min eig " +
                      std::to_string(min_eig) + ")");
  }
  if (min_eig < 0.0) {
    Eigen::VectorXcd clipped(eig.eigenvalues.size());
    for (Index i = 0; i < clipped.size(); ++i) {
      clipped(i) = std::max(0.0, eig.eigenvalues(i));
    }
    choi = hermitian_part(eig.eigenvectors * clipped.asDiagonal() *
                          eig.eigenvectors.adjoint());
  }
  return ProcessTensor(std::move(choi), d, std::move(times));
}

// ---------------------------------------------------------------------------
// Restriction and marginal maps

ProcessTensor restrict(const ProcessTensor& pt,
                       std::span<const std::size_t> time_indices) {
  if (time_indices.empty()) throw DimensionError("restrict: empty subset");
  for (std::size_t i = 0; i < time_indices.size(); ++i) {
    if (time_indices[i] > pt.steps() ||
        (i > 0 && time_indices[i] <= time_indices[i - 1])) {
      throw DimensionError("restrict: subset must be increasing and in range");
    }
  }
  const std::size_t d = pt.system_dim();
  ComplexMatrix cur = pt.choi();
  std::vector<double> times = pt.times();
  std::size_t steps = pt.steps();
  while (steps > time_indices.back()) {
    cur = drop_final_time(cur, d);
    times.pop_back();
    --steps;
  }
  const ComplexMatrix id_choi = QuantumMap::identity(d).choi();
  for (std::size_t j = steps; j-- > 0;) {
    if (std::binary_search(time_indices.begin(), time_indices.end(), j)) {
      continue;
    }
    const std::vector<std::size_t> dims(2 * steps + 1, d);
    cur = contract_legs(cur, dims, ProcessTensor::input_leg(steps, j), 2,
                        id_choi);
    times.erase(times.begin() + static_cast<std::ptrdiff_t>(j));
    --steps;
  }
  return ProcessTensor(std::move(cur), d, std::move(times));
}

QuantumMap marginal_map(const ProcessTensor& pt, std::size_t j, std::size_t l,
                        Filler filler) {
  if (!(j < l && l <= pt.steps())) {
    throw DimensionError("marginal_map: need 0 <= j < l <= K");
  }
  const std::size_t d = pt.system_dim();
  std::vector<std::size_t> keep(j + 1);
  std::iota(keep.begin(), keep.end(), std::size_t{0});
  keep.push_back(l);
  const ProcessTensor sub = restrict(pt, keep);

  const auto frame = frame_states(d);
  QuantumMap fill = QuantumMap::identity(d);
  if (filler == Filler::trash_and_prepare_average) {
    ComplexMatrix mean = ComplexMatrix::Zero(idx(d), idx(d));
    for (const auto& f : frame) mean += f;
    fill = QuantumMap::prepare(mean / static_cast<double>(frame.size()), d);
  }
  ComplexMatrix cur = sub.choi();
  for (std::size_t slot = 0; slot < j; ++slot) {
    cur = contract_trailing(cur, fill.choi());
  }
  // cur is on (O_l, I_j, O_j). Prepare each frame state at slot j.
  const auto duals = bilinear_dual(frame);
  ComplexMatrix choi = ComplexMatrix::Zero(idx(d * d), idx(d * d));
  for (std::size_t v = 0; v < frame.size(); ++v) {
    const ComplexMatrix out =
        contract_trailing(cur, QuantumMap::prepare(frame[v], d).choi());
    choi += tensor_product(out, duals[v]);
  }
  return QuantumMap(hermitian_part(choi), d, d);
}

}  // namespace ptr
