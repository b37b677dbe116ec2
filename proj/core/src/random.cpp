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

#include "ptr/random.hpp"

#include <cmath>

namespace ptr::random {

namespace {

using Index = Eigen::Index;

// Random isometry V : C^dim -> C^(dim * blocks), columns orthonormal.
ComplexMatrix isometry(std::size_t dim, std::size_t blocks, Rng& rng) {
  const ComplexMatrix g = ginibre(dim * blocks, dim, rng);
  const Eigen::MatrixXcd dense = g;
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(dense);
  Eigen::MatrixXcd q = qr.householderQ() *
                       Eigen::MatrixXcd::Identity(g.rows(), g.cols());
  return q;
}

}  // namespace

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
  ComplexMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = cd(re, im);
    }
  }
  return m;
}

ComplexMatrix unitary(std::size_t dim, Rng& rng) {
  const Eigen::MatrixXcd g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < q.cols(); ++j) {
    const cd diag = r(j, j);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(j) *= diag / mag;
  }
  return q;
}

ComplexMatrix hermitian(std::size_t dim, Rng& rng) {
  const ComplexMatrix g = ginibre(dim, dim, rng);
  return hermitian_part(g);
}

DensityMatrix state(std::size_t dim, Rng& rng) {
  const ComplexMatrix g = ginibre(dim, dim, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix(hermitian_part(rho));
}

DensityMatrix pure_state(std::size_t dim, Rng& rng) {
  const ComplexMatrix g = ginibre(dim, 1, rng);
  return DensityMatrix::pure(g.col(0));
}

QuantumMap cptp_map(std::size_t dim, std::size_t kraus_rank, Rng& rng) {
  const ComplexMatrix v = isometry(dim, kraus_rank, rng);
  std::vector<ComplexMatrix> kraus;
  for (std::size_t k = 0; k < kraus_rank; ++k) {
    kraus.emplace_back(v.block(static_cast<Index>(k * dim), 0,
                               static_cast<Index>(dim),
                               static_cast<Index>(dim)));
  }
  return QuantumMap::from_kraus(kraus);
}

Instrument instrument(std::size_t dim, std::size_t outcomes,
                      std::size_t kraus_rank, Rng& rng) {
  const ComplexMatrix v = isometry(dim, outcomes * kraus_rank, rng);
  std::vector<QuantumMap> members;
  for (std::size_t r = 0; r < outcomes; ++r) {
    std::vector<ComplexMatrix> kraus;
    for (std::size_t k = 0; k < kraus_rank; ++k) {
      kraus.emplace_back(v.block(static_cast<Index>((r * kraus_rank + k) * dim),
                                 0, static_cast<Index>(dim),
                                 static_cast<Index>(dim)));
    }
    members.push_back(QuantumMap::from_kraus(kraus));
  }
  return Instrument(std::move(members), {});
}

Instrument measure_reprepare_instrument(std::size_t dim, std::size_t outcomes,
                                        Rng& rng) {
  const ComplexMatrix v = isometry(dim, outcomes, rng);
  std::vector<ComplexMatrix> povm;
  std::vector<ComplexMatrix> preps;
  for (std::size_t r = 0; r < outcomes; ++r) {
    const ComplexMatrix k = v.block(static_cast<Index>(r * dim), 0,
                                    static_cast<Index>(dim),
                                    static_cast<Index>(dim));
    povm.emplace_back(hermitian_part(k.adjoint() * k));
    preps.push_back(state(dim, rng).matrix());
  }
  return Instrument::measure_reprepare(povm, preps);
}

}  // namespace ptr::random
