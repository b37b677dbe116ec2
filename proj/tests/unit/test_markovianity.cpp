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

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <limits>
#include <numbers>

#include "oracles.hpp"
#include "ptr/dilation.hpp"
#include "ptr/errors.hpp"
#include "ptr/markovianity.hpp"
#include "ptr/random.hpp"

namespace ptr {
namespace {

constexpr double kTol = 1e-8;

std::vector<double> grid(std::size_t steps) {
  std::vector<double> t;
  for (std::size_t i = 0; i <= steps; ++i) t.push_back(static_cast<double>(i));
  return t;
}

ProcessTensor random_markov(std::size_t steps, random::Rng& rng,
                            std::size_t rank = 2) {
  std::vector<QuantumMap> maps;
  for (std::size_t j = 0; j < steps; ++j)
    maps.push_back(random::cptp_map(2, rank, rng));
  return ProcessTensor(oracle::markov_product(maps, random::state(2, rng).matrix()),
                       2, grid(steps));
}

const OperationBasis& basis() {
  static const OperationBasis b = ic_basis(2);
  return b;
}

const CausalBreak& breaks() {
  static const CausalBreak b = CausalBreak::ic_default(2);
  return b;
}

ProcessTensor swap_tensor(const DensityMatrix& s, const DensityMatrix& e) {
  return build_process_tensor(model_b3(s, e), grid(2), basis());
}

// Relative entropy through Eigen's general matrix logarithm, for full-rank
// arguments.
double relative_entropy_oracle(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  const Eigen::MatrixXcd lr = Eigen::MatrixXcd(rho).log();
  const Eigen::MatrixXcd ls = Eigen::MatrixXcd(sigma).log();
  return (rho * (lr - ls)).trace().real();
}

TEST(MarkovTest, SoundOnRandomMarkovTensors) {
  random::Rng rng(61);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t k = 1 + trial % 3;
    const auto pt = random_markov(k, rng, k == 3 ? 2 : 1 + trial % 4);
    const auto report = markov_test(pt, basis(), breaks());
    EXPECT_TRUE(report.is_markov) << "trial " << trial;
    EXPECT_EQ(report.status, MarkovStatus::markov);
    EXPECT_LE(report.max_deviation, kTol);
    EXPECT_FALSE(report.witness.has_value());
  }
}

TEST(MarkovTest, SoundOnSimulatedMarkovModel) {
  random::Rng rng(62);
  std::vector<QuantumMap> maps{random::cptp_map(2, 2, rng),
                               random::cptp_map(2, 3, rng)};
  const auto pt = build_process_tensor(model_markov(maps, random::state(2, rng)),
                                       grid(2), basis());
  MarkovOptions opt;
  opt.exhaustive = true;
  const auto report = markov_test(pt, basis(), breaks(), opt);
  EXPECT_TRUE(report.is_markov);
  EXPECT_EQ(report.breaks_tested.size(), 3u);
  EXPECT_TRUE(report.exhaustive);
  EXPECT_GT(report.conditionals_evaluated, 0u);
}

TEST(MarkovTest, SwapModelWitnessIsReproducible) {
  const auto pt = swap_tensor(qubit::named_state("+"), qubit::named_state("0"));
  const auto report = markov_test(pt, basis(), breaks());
  ASSERT_FALSE(report.is_markov);
  EXPECT_EQ(report.status, MarkovStatus::non_markov);
  EXPECT_GT(report.max_deviation, 10 * kTol);
  ASSERT_TRUE(report.witness.has_value());
  const auto& w = *report.witness;
  EXPECT_EQ(w.first.break_slot, w.second.break_slot);
  EXPECT_EQ(w.first.preparation, w.second.preparation);
  EXPECT_NEAR(w.distance, report.max_deviation, 1e-14);
  // Recompute both conditionals through the independent code path.
  std::vector<std::size_t> sub;
  for (std::size_t i = 0; i <= w.first.break_slot; ++i) sub.push_back(i);
  sub.push_back(w.final_time);
  const auto restricted = restrict(pt, sub);
  const ControlSequence none{{}, std::nullopt};
  const auto a = conditional_state(restricted, breaks(), w.first.break_slot,
                                   w.first.preparation, w.first.outcome,
                                   w.first.past, none);
  const auto b = conditional_state(restricted, breaks(), w.second.break_slot,
                                   w.second.preparation, w.second.outcome,
                                   w.second.past, none);
  EXPECT_NEAR(oracle::trace_norm(a.state.matrix(), b.state.matrix()), w.distance,
              1e-10);
}

TEST(MarkovTest, PartialSwapAndDephasingCarryMemory) {
  const auto b2 = build_process_tensor(model_b2(std::numbers::pi / 4), grid(2),
                                       basis());
  const auto r2 = markov_test(b2, basis(), breaks());
  EXPECT_FALSE(r2.is_markov);
  EXPECT_GT(r2.max_deviation, 10 * kTol);
  const auto b1 = build_process_tensor(model_b1(1.0, 1.0), grid(2), basis());
  const auto r1 = markov_test(b1, basis(), breaks());
  EXPECT_FALSE(r1.is_markov);
  EXPECT_GT(r1.max_deviation, 0.1);
  // The status flag tracks the tolerance.
  MarkovOptions loose;
  loose.tolerance = 10.0;
  const auto relaxed = markov_test(b1, basis(), breaks(), loose);
  EXPECT_TRUE(relaxed.is_markov);
  EXPECT_FALSE(relaxed.witness.has_value());
}

TEST(MarkovTest, InitialCorrelationsAreCaught) {
  // Correlated initial state, trivial dynamics: only the slot-0 break sees it.
  const ComplexMatrix bell = [] {
    ComplexVector v = ComplexVector::Zero(4);
    v(0) = v(3) = 1.0 / std::sqrt(2.0);
    return ComplexMatrix(v * v.adjoint());
  }();
  const ComplexMatrix swap = partial_swap::swap(2);
  const auto pt = build_process_tensor(model_custom(2, 2, {swap}, bell), grid(1),
                                       basis());
  const auto report = markov_test(pt, basis(), breaks());
  EXPECT_FALSE(report.is_markov);
  EXPECT_EQ(report.witness->first.break_slot, 0u);
}

TEST(Divisibility, DephasingIsDivisibleYetNonMarkovian) {
  const auto pt = build_process_tensor(model_b1(1.0, 1.0), grid(2), basis());
  const auto div = divisibility_test(pt);
  EXPECT_LE(div.max_defect, 1e-6);
  EXPECT_TRUE(div.divisible);
  EXPECT_TRUE(div.all_cptp);
  EXPECT_EQ(div.triples.size(), 1u);
  EXPECT_EQ(div.maps.size(), 3u);
}

TEST(Divisibility, PartialSwapIsNotDivisible) {
  const auto pt = build_process_tensor(model_b2(std::numbers::pi / 4), grid(2),
                                       basis());
  const auto div = divisibility_test(pt);
  EXPECT_GT(div.max_defect, 0.1);
  EXPECT_FALSE(div.divisible);
  for (const auto& t : div.triples) EXPECT_GE(t.defect, 0.0);
}

TEST(Divisibility, MarkovImpliesDivisible) {
  random::Rng rng(63);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pt = random_markov(2 + trial % 2, rng);
    if (!markov_test(pt, basis(), breaks()).is_markov) continue;
    for (auto filler : {Filler::identity, Filler::trash_and_prepare_average}) {
      const auto div = divisibility_test(pt, kTol, filler);
      EXPECT_LE(div.max_defect, 10 * kTol);
      EXPECT_TRUE(div.all_cptp);
    }
  }
}

TEST(ClosestMarkov, PreservesBlockMarginalsAndIsIdempotent) {
  const auto pt = build_process_tensor(model_b2(0.9), grid(2), basis());
  const auto closest = closest_markov(pt);
  const std::vector<std::size_t> dims(5, 2);
  for (const auto& block : std::vector<std::vector<std::size_t>>{{0, 1}, {2, 3}, {4}}) {
    EXPECT_LT(max_abs(oracle::partial_trace(closest.choi(), dims, block) -
                      oracle::partial_trace(pt.choi(), dims, block)),
              1e-10);
  }
  EXPECT_NEAR(closest.choi().trace().real(), 4.0, 1e-10);
  EXPECT_LT(max_abs(closest_markov(closest).choi() - closest.choi()), 1e-10);
  random::Rng rng(64);
  const auto markov = random_markov(2, rng);
  EXPECT_LT(max_abs(closest_markov(markov).choi() - markov.choi()), 1e-10);
}

TEST(Measure, SwapModelCarriesTwoLogTwo) {
  const auto pt = swap_tensor(qubit::named_state("+"), qubit::named_state("0"));
  const auto report = non_markovianity(pt);
  EXPECT_NEAR(report.n_value, 2.0 * std::log(2.0), 1e-9);
  EXPECT_FALSE(report.upper_bound);
  EXPECT_EQ(report.bond_dims, (std::vector<std::size_t>{1, 4}));
  const auto td = non_markovianity(pt, Metric::trace_distance);
  EXPECT_TRUE(td.upper_bound);
  EXPECT_GT(td.n_value, 0.0);
  EXPECT_LE(td.n_value, 1.0);
}

TEST(Measure, RelativeEntropyAgreesWithMatrixLogOracle) {
  random::Rng rng(65);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = random::state(4, rng).matrix();
    const auto sigma = random::state(4, rng).matrix();
    EXPECT_NEAR(relative_entropy(rho, sigma), relative_entropy_oracle(rho, sigma),
                1e-10);
    EXPECT_GE(relative_entropy(rho, sigma), 0.0);
  }
  const ComplexMatrix zero = DensityMatrix::basis_state(2, 0).matrix();
  const ComplexMatrix one = DensityMatrix::basis_state(2, 1).matrix();
  EXPECT_EQ(relative_entropy(zero, one), std::numeric_limits<double>::infinity());
  EXPECT_NEAR(relative_entropy(zero, identity(2) / 2.0), std::log(2.0), 1e-14);
  EXPECT_EQ(relative_entropy(zero, zero), 0.0);
}

TEST(Measure, ZeroOnMarkovAndPositiveOnMemory) {
  random::Rng rng(66);
  for (int trial = 0; trial < 10; ++trial) {
    const auto pt = random_markov(1 + trial % 3, rng);
    const auto report = non_markovianity(pt);
    EXPECT_LE(report.n_value, 1e-8);
    EXPECT_GE(report.n_value, -1e-10);
    for (auto b : report.bond_dims) EXPECT_EQ(b, 1u);
  }
  const auto b1 = build_process_tensor(model_b1(1.0, 1.0), grid(2), basis());
  EXPECT_GT(non_markovianity(b1).n_value, 1e-3);
}

TEST(Measure, MarginalProductBeatsPerturbedProducts) {
  // Falsification probe for the minimizer: random CPTP-preserving
  // perturbations of each block never lower the relative entropy.
  random::Rng rng(67);
  const auto pt = build_process_tensor(model_b2(0.9), grid(2), basis());
  const double n = non_markovianity(pt).n_value;
  const ComplexMatrix rho = pt.choi() / 4.0;
  const auto closest = closest_markov(pt);
  const std::vector<std::size_t> dims(5, 2);
  const ComplexMatrix m1 = oracle::partial_trace(closest.choi(), dims, {0, 1}) / 4.0;
  const ComplexMatrix m0 = oracle::partial_trace(closest.choi(), dims, {2, 3}) / 4.0;
  const ComplexMatrix r0 = oracle::partial_trace(closest.choi(), dims, {4}) / 4.0;
  std::uniform_real_distribution<double> eps(0.0, 0.3);
  for (int trial = 0; trial < 200; ++trial) {
    const double e = eps(rng);
    auto mix_choi = [&](const ComplexMatrix& m) {
      return ComplexMatrix((1 - e) * m + e * random::cptp_map(2, 2, rng).choi() / 2.0);
    };
    const ComplexMatrix sigma = oracle::kron_all(
        {mix_choi(m1), mix_choi(m0),
         ComplexMatrix((1 - e) * r0 + e * random::state(2, rng).matrix())});
    EXPECT_GE(relative_entropy(rho, sigma), n - 1e-10);
  }
}

TEST(Measure, MonotoneUnderLocalChannels) {
  random::Rng rng(68);
  std::vector<ProcessTensor> corpus;
  corpus.push_back(swap_tensor(qubit::named_state("+"), qubit::named_state("0")));
  corpus.push_back(build_process_tensor(model_b2(0.9), grid(2), basis()));
  corpus.push_back(build_process_tensor(model_b1(1.0, 1.0), grid(2), basis()));
  std::uniform_int_distribution<std::size_t> leg(0, 4);
  for (const auto& pt : corpus) {
    const double n = non_markovianity(pt).n_value;
    for (int trial = 0; trial < 20; ++trial) {
      const auto ch = random::cptp_map(2, 1 + trial % 4, rng);
      const ProcessTensor mapped(oracle::apply_on_leg(pt.choi(), 5, leg(rng), ch), 2,
                                 pt.times());
      EXPECT_LE(non_markovianity(mapped).n_value, n + 1e-9);
    }
  }
}

TEST(Measure, ConfusionProbability) {
  EXPECT_EQ(confusion_probability(0.7, 3.0), std::exp(-3.0 * 0.7));
  EXPECT_EQ(confusion_probability(0.0, 10.0), 1.0);
  EXPECT_EQ(confusion_probability(std::numeric_limits<double>::infinity(), 2.0), 0.0);
  EXPECT_THROW(confusion_probability(0.5, -1.0), DimensionError);
  EXPECT_EQ(parse_metric("trace_distance"), Metric::trace_distance);
  EXPECT_EQ(to_string(Metric::relative_entropy), "relative_entropy");
  EXPECT_THROW(parse_metric("bures"), ConfigError);
}

TEST(BondDimension, AgreesWithRealignmentOracle) {
  random::Rng rng(69);
  std::vector<ProcessTensor> corpus;
  corpus.push_back(swap_tensor(random::state(2, rng), random::state(2, rng)));
  corpus.push_back(build_process_tensor(model_b2(0.9), grid(2), basis()));
  corpus.push_back(build_process_tensor(model_b1(1.0, 1.0), grid(2), basis()));
  corpus.push_back(random_markov(2, rng));
  for (const auto& pt : corpus) {
    const auto dims = bond_dimension(pt);
    ASSERT_EQ(dims.size(), 2u);
    EXPECT_EQ(dims[0], oracle::realigned_rank(pt.choi(), 2, 5, 1));
    EXPECT_EQ(dims[1], oracle::realigned_rank(pt.choi(), 2, 5, 3));
    // Raising the cutoff can only drop singular values.
    const auto coarse = bond_dimension(pt, 1e-2);
    for (std::size_t i = 0; i < dims.size(); ++i) {
      EXPECT_LE(coarse[i], dims[i]);
      EXPECT_GE(coarse[i], 1u);
    }
  }
}

TEST(Classical, SwapModelMatchesHandEnumeration) {
  const auto pt = swap_tensor(qubit::named_state("+"), qubit::named_state("0"));
  const auto comp = Instrument::computational(2);
  const auto cp = classical_process(pt, {comp, comp, comp});
  ASSERT_EQ(cp.table.size(), 8u);
  for (std::size_t r0 = 0; r0 < 2; ++r0)
    for (std::size_t r1 = 0; r1 < 2; ++r1)
      for (std::size_t r2 = 0; r2 < 2; ++r2)
        EXPECT_NEAR(cp.probability({r0, r1, r2}),
                    0.5 * (r1 == 0) * (r2 == r0), 1e-12);
  EXPECT_NEAR(cp.total(), 1.0, 1e-12);
  const auto check = classical_markov_check(cp);
  EXPECT_FALSE(check.is_markov);
  EXPECT_NEAR(check.max_violation, 0.5, 1e-12);
}

TEST(Classical, TableMatchesDirectSimulation) {
  random::Rng rng(70);
  const auto model = model_b2(0.7);
  const auto pt = build_process_tensor(model, grid(2), basis());
  const auto i0 = random::instrument(2, 2, 2, rng);
  const auto i1 = random::instrument(2, 3, 1, rng);
  const auto cp = classical_process(pt, {i0, i1});
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      const auto out = simulate_sequence(model, grid(2),
                                         std::vector{i0.members[a], i1.members[b]});
      EXPECT_NEAR(cp.probability({a, b}), out.system.trace(), 1e-10);
      EXPECT_GE(cp.probability({a, b}), 0.0);
    }
  }
  EXPECT_NEAR(cp.total(), 1.0, 1e-9);
  EXPECT_THROW(classical_process(pt, {i0}), DimensionError);
}

TEST(Classical, MarkovTensorsGiveMarkovStatistics) {
  random::Rng rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pt = random_markov(2, rng);
    std::vector<Instrument> inst;
    for (int j = 0; j < 3; ++j)
      inst.push_back(random::measure_reprepare_instrument(2, 2 + trial % 2, rng));
    const auto check = classical_markov_check(classical_process(pt, inst));
    EXPECT_TRUE(check.is_markov);
    EXPECT_LE(check.max_violation, 1e-9);
  }
}

TEST(Classical, HandBuiltChains) {
  ClassicalProcess coin{{0, 1, 2}, {2, 2, 2}, std::vector<double>(8, 0.125)};
  EXPECT_TRUE(classical_markov_check(coin).is_markov);
  ClassicalProcess copy{{0, 1, 2}, {2, 2, 2}, std::vector<double>(8, 0.0)};
  copy.table[0] = copy.table[7] = 0.5;
  EXPECT_TRUE(classical_markov_check(copy).is_markov);
  // r2 = r0 with a fair, independent r1.
  ClassicalProcess parity{{0, 1, 2}, {2, 2, 2}, std::vector<double>(8, 0.0)};
  for (std::size_t r0 = 0; r0 < 2; ++r0)
    for (std::size_t r1 = 0; r1 < 2; ++r1) parity.table[r0 * 4 + r1 * 2 + r0] = 0.25;
  const auto p = classical_markov_check(parity);
  EXPECT_FALSE(p.is_markov);
  EXPECT_NEAR(p.max_violation, 0.5, 1e-12);

  ClassicalProcess marginal{{0, 2}, {2, 2}, {0.5, 0.0, 0.0, 0.5}};
  EXPECT_TRUE(classical_markov_check({copy, marginal}).kolmogorov_ok);
  ClassicalProcess wrong{{0, 2}, {2, 2}, {0.25, 0.25, 0.25, 0.25}};
  EXPECT_FALSE(classical_markov_check({copy, wrong}).kolmogorov_ok);
}

}  // namespace
}  // namespace ptr
