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

// Memory diagnostics on process tensors: the operational Markov test,
// divisibility, the distance to the nearest product process, bond
// dimensions and classical multi-time statistics.

#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptr/process_tensor.hpp"
#include "ptr/quantum_ops.hpp"

namespace ptr {

enum class MarkovStatus { markov, non_markov, inconclusive };

std::string to_string(MarkovStatus status);

/// Two conditionings that share a preparation but lead to different states
/// at the same later time.
struct MarkovWitness {
  std::size_t final_time;  // index l into the time grid
  ConditioningRecord first;
  ConditioningRecord second;
  double distance;
};

struct MarkovReport {
  bool is_markov = true;
  MarkovStatus status = MarkovStatus::markov;
  /// Largest trace-norm distance tr|ρ - σ| between conditional states that
  /// share a preparation.
  double max_deviation = 0.0;
  std::optional<MarkovWitness> witness;
  double tolerance = 0.0;
  /// (k, l) pairs examined, in scan order.
  std::vector<std::pair<std::size_t, std::size_t>> breaks_tested;
  std::size_t conditionals_evaluated = 0;
  std::size_t conditionals_skipped = 0;
  bool exhaustive = false;
};

struct MarkovOptions {
  double tolerance = 1e-8;
  /// Scan every (k, l) even after a deviation above tolerance is found.
  bool exhaustive = false;
  std::size_t workers = 0;
};

/// For each break slot k (latest first) and each later time l, enumerates
/// every basis-element sequence on slots < k and every break outcome, and
/// compares the conditional states at t_l across conditionings for each
/// preparation. Slot 0 is included so that initial correlations are caught.
MarkovReport markov_test(const ProcessTensor& pt, const OperationBasis& basis,
                         const CausalBreak& breaks,
                         const MarkovOptions& options = {});

struct DivisibilityTriple {
  std::size_t j;
  std::size_t k;
  std::size_t l;
  double defect;  // max-norm of S_{l:j} - S_{l:k} S_{k:j}
};

struct MarginalMapCheck {
  std::size_t j;
  std::size_t l;
  CptpCheck check;
};

struct DivisibilityReport {
  double max_defect = 0.0;
  bool divisible = true;
  bool all_cptp = true;
  std::vector<DivisibilityTriple> triples;
  std::vector<MarginalMapCheck> maps;
  double tolerance = 0.0;
};

DivisibilityReport divisibility_test(const ProcessTensor& pt,
                                     double tolerance = 1e-8,
                                     Filler filler = Filler::identity);

/// Product of the marginals on (O_{j+1}, I_j) for every slot and on O_0,
/// scaled to the trace convention of pt.
ProcessTensor closest_markov(const ProcessTensor& pt);

enum class Metric { relative_entropy, trace_distance };

std::string to_string(Metric metric);
Metric parse_metric(const std::string& name);

struct MeasureReport {
  Metric metric = Metric::relative_entropy;
  /// In nats for relative entropy; +inf on a support violation.
  double n_value = 0.0;
  /// True when n_value only bounds the minimum from above.
  bool upper_bound = false;
  ProcessTensor closest;
  std::vector<std::size_t> bond_dims;

  double confusion(double n) const { return std::exp(-n * n_value); }
};

MeasureReport non_markovianity(const ProcessTensor& pt,
                               Metric metric = Metric::relative_entropy);

/// D(ρ||σ) = tr ρ (log ρ - log σ) for unit-trace PSD arguments.
double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// exp(-n N); requires n >= 0 and N >= 0.
double confusion_probability(double n_value, double n);

/// Operator-Schmidt rank of Υ across each cut between the chronological
/// blocks (O_0)(I_0 O_1)...(I_{K-1} O_K). Returns K entries.
std::vector<std::size_t> bond_dimension(const ProcessTensor& pt,
                                        double cutoff = 1e-10);

/// Joint outcome distribution of fixed instruments.
struct ClassicalProcess {
  std::vector<double> times;
  std::vector<std::size_t> alphabet;  // outcomes per recorded step
  /// Flattened table, r_0 slowest.
  std::vector<double> table;

  double probability(const std::vector<std::size_t>& outcomes) const;
  double total() const;
};

/// Joint distribution from one instrument per slot, optionally followed by
/// a final instrument whose outcome probabilities read out the state at t_K.
ClassicalProcess classical_process(const ProcessTensor& pt,
                                   const std::vector<Instrument>& instruments);

struct ClassicalMarkovResult {
  bool is_markov = true;
  double max_violation = 0.0;
  bool kolmogorov_ok = true;
};

/// Checks P(r_j | r_{j-1}, ..., r_0) = P(r_j | r_{j-1}) wherever the
/// conditioning history has probability above kProbabilityFloor.
ClassicalMarkovResult classical_markov_check(const ClassicalProcess& cp,
                                             double tolerance = 1e-9);

/// As above for the first table; additionally checks that each table
/// marginalizes onto every other table of the family whose times form a
/// subset of its own.
ClassicalMarkovResult classical_markov_check(
    const std::vector<ClassicalProcess>& family, double tolerance = 1e-9);

}  // namespace ptr
