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

#include "ptr/markovianity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "ptr/errors.hpp"
#include "ptr/parallel.hpp"

namespace ptr {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

// Conditional states for one past sequence: probability per outcome r and
// normalized states per (r, s).
struct PastResult {
  std::vector<double> probability;
  std::vector<std::vector<ComplexMatrix>> states;
};

struct Candidate {
  std::size_t past;
  std::size_t outcome;
};

}  // namespace

std::string to_string(MarkovStatus status) {
  switch (status) {
    case MarkovStatus::markov:
      return "markov";
    case MarkovStatus::non_markov:
      return "non_markov";
    case MarkovStatus::inconclusive:
      break;
  }
  return "inconclusive";
}

// ---------------------------------------------------------------------------
// Operational Markov test

MarkovReport markov_test(const ProcessTensor& pt, const OperationBasis& basis,
                         const CausalBreak& breaks,
                         const MarkovOptions& options) {
  const std::size_t steps = pt.steps();
  const std::size_t d = pt.system_dim();
  if (basis.dim() != d || breaks.dim() != d) {
    throw DimensionError("markov_test: basis or break dimension mismatch");
  }
  const std::size_t nb = basis.size();
  const std::size_t outcomes = breaks.povm.size();
  const std::size_t preps = breaks.preparations.size();
  std::vector<ComplexMatrix> effects_t;
  for (const auto& e : breaks.povm) effects_t.emplace_back(e.transpose());
  const std::size_t workers = resolve_workers(options.workers);

  MarkovReport report;
  report.tolerance = options.tolerance;
  report.exhaustive = options.exhaustive;
  bool inconclusive = false;

  for (std::size_t k = steps; k-- > 0;) {
    for (std::size_t l = k + 1; l <= steps; ++l) {
      std::vector<std::size_t> keep(k + 1);
      std::iota(keep.begin(), keep.end(), std::size_t{0});
      keep.push_back(l);
      const ProcessTensor sub = restrict(pt, keep);
      const std::size_t pasts = ipow(nb, k);

      std::vector<PastResult> results(pasts);
      parallel_for(pasts, workers, [&](std::size_t mu) {
        ComplexMatrix cur = sub.choi();
        std::size_t rest = mu;
        for (std::size_t slot = 0; slot < k; ++slot) {
          cur = contract_trailing(cur, basis.elements()[rest % nb].choi());
          rest /= nb;
        }
        PastResult& out = results[mu];
        out.probability.resize(outcomes);
        out.states.resize(outcomes);
        for (std::size_t r = 0; r < outcomes; ++r) {
          const ComplexMatrix branch = contract_trailing(cur, effects_t[r]);
          double p = 0.0;
          for (std::size_t s = 0; s < preps; ++s) {
            ComplexMatrix sigma =
                hermitian_part(contract_trailing(branch, breaks.preparations[s]));
            const double ps = sigma.trace().real();
            p = std::max(p, ps);
            out.states[r].push_back(ps > kProbabilityFloor ? sigma / ps
                                                           : sigma);
          }
          out.probability[r] = p;
        }
      });

      std::vector<Candidate> resolved;
      for (std::size_t mu = 0; mu < pasts; ++mu) {
        for (std::size_t r = 0; r < outcomes; ++r) {
          if (results[mu].probability[r] > kProbabilityFloor) {
            resolved.push_back({mu, r});
          } else {
            ++report.conditionals_skipped;
          }
        }
      }
      report.breaks_tested.emplace_back(k, l);
      if (resolved.empty()) {
        inconclusive = true;
        continue;
      }
      report.conditionals_evaluated += resolved.size() * preps;

      for (std::size_t s = 0; s < preps; ++s) {
        for (std::size_t a = 0; a < resolved.size(); ++a) {
          const ComplexMatrix& sa =
              results[resolved[a].past].states[resolved[a].outcome][s];
          for (std::size_t b = a + 1; b < resolved.size(); ++b) {
            const ComplexMatrix& sb =
                results[resolved[b].past].states[resolved[b].outcome][s];
            const double dist = trace_norm_distance(sa, sb);
            if (dist > report.max_deviation) {
              report.max_deviation = dist;
              auto record = [&](const Candidate& c) {
                ConditioningRecord rec{k, c.outcome, s, {}, {}};
                std::size_t rest = c.past;
                for (std::size_t slot = 0; slot < k; ++slot) {
                  rec.past_basis_indices.push_back(rest % nb);
                  rec.past.slots.push_back(basis.elements()[rest % nb]);
                  rest /= nb;
                }
                rec.past.break_under_test = k;
                return rec;
              };
              report.witness =
                  MarkovWitness{l, record(resolved[a]), record(resolved[b]),
                                dist};
            }
          }
        }
      }
      if (report.max_deviation > options.tolerance && !options.exhaustive) {
        break;
      }
    }
    if (report.max_deviation > options.tolerance && !options.exhaustive) break;
  }

  if (report.max_deviation > options.tolerance) {
    report.is_markov = false;
    report.status = MarkovStatus::non_markov;
  } else {
    report.is_markov = true;
    report.witness.reset();
    report.status =
        inconclusive ? MarkovStatus::inconclusive : MarkovStatus::markov;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Divisibility

DivisibilityReport divisibility_test(const ProcessTensor& pt, double tolerance,
                                     Filler filler) {
  const std::size_t steps = pt.steps();
  DivisibilityReport report;
  report.tolerance = tolerance;
  std::map<std::pair<std::size_t, std::size_t>, ComplexMatrix> superops;
  for (std::size_t j = 0; j < steps; ++j) {
    for (std::size_t l = j + 1; l <= steps; ++l) {
      const QuantumMap map = marginal_map(pt, j, l, filler);
      const CptpCheck check = is_cptp(map, std::max(tolerance, kMapTolerance));
      report.all_cptp = report.all_cptp && check.cp && check.tp;
      report.maps.push_back({j, l, check});
      superops.emplace(std::make_pair(j, l), map.superoperator());
    }
  }
  for (std::size_t j = 0; j < steps; ++j) {
    for (std::size_t k = j + 1; k < steps; ++k) {
      for (std::size_t l = k + 1; l <= steps; ++l) {
        const ComplexMatrix composed =
            superops.at({k, l}) * superops.at({j, k});
        const double defect = max_abs(superops.at({j, l}) - composed);
        report.triples.push_back({j, k, l, defect});
        report.max_defect = std::max(report.max_defect, defect);
      }
    }
  }
  report.divisible = report.max_defect <= tolerance;
  return report;
}

// ---------------------------------------------------------------------------
// Closest product process and measures

ProcessTensor closest_markov(const ProcessTensor& pt) {
  const std::size_t steps = pt.steps();
  const auto d = static_cast<double>(pt.system_dim());
  const double total = pt.choi().trace().real();
  if (!(total > 0.0)) throw NotPsdError("closest_markov: nonpositive trace");
  std::vector<ComplexMatrix> factors;
  for (std::size_t j = steps; j-- > 0;) {
    const std::size_t out_leg = 2 * (steps - 1 - j);
    const std::size_t keep[] = {out_leg, out_leg + 1};
    ComplexMatrix block = partial_trace(pt.choi(), pt.legs(), keep);
    block *= d / block.trace().real();
    factors.push_back(std::move(block));
  }
  const std::size_t first[] = {2 * steps};
  ComplexMatrix rho0 = partial_trace(pt.choi(), pt.legs(), first);
  rho0 /= rho0.trace().real();
  factors.push_back(std::move(rho0));
  ComplexMatrix product = hermitian_part(tensor_product(factors));
  product *= total / product.trace().real();
  return ProcessTensor(std::move(product), pt.system_dim(), pt.times());
}

std::string to_string(Metric metric) {
  return metric == Metric::relative_entropy ? "relative_entropy"
                                            : "trace_distance";
}

Metric parse_metric(const std::string& name) {
  if (name == "relative_entropy") return Metric::relative_entropy;
  if (name == "trace_distance") return Metric::trace_distance;
  throw ConfigError("unknown metric '" + name + "'");
}

double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  const HermitianEigen er = hermitian_eig(rho);
  const HermitianEigen es = hermitian_eig(sigma);
  double entropy_term = 0.0;
  for (Index i = 0; i < er.eigenvalues.size(); ++i) {
    const double l = er.eigenvalues(i);
    if (l > kSupportCutoff) entropy_term += l * std::log(l);
  }
  double cross = 0.0;
  for (Index j = 0; j < es.eigenvalues.size(); ++j) {
    const ComplexVector w = es.eigenvectors.col(j);
    const double weight = (w.adjoint() * rho * w)(0, 0).real();
    const double mu = es.eigenvalues(j);
    if (mu > kSupportCutoff) {
      cross += weight * std::log(mu);
    } else if (weight > 1e-10) {
      return std::numeric_limits<double>::infinity();
    }
  }
  const double value = entropy_term - cross;
  return (value < 0.0 && value >= -1e-10) ? 0.0 : value;
}

double confusion_probability(double n_value, double n) {
  if (n < 0.0 || n_value < 0.0) {
    throw DimensionError("confusion_probability: arguments must be >= 0");
  }
  if (n == 0.0) return 1.0;
  return std::exp(-n * n_value);
}

MeasureReport non_markovianity(const ProcessTensor& pt, Metric metric) {
  const HermitianEigen eig = hermitian_eig(pt.choi());
  if (eig.eigenvalues.minCoeff() < -1e-8) {
    throw NotPsdError("non_markovianity: process tensor is not PSD");
  }
  ProcessTensor product = closest_markov(pt);
  const ComplexMatrix rho = pt.choi() / pt.choi().trace().real();
  const ComplexMatrix sigma = product.choi() / product.choi().trace().real();
  MeasureReport report{metric, 0.0, false, product, bond_dimension(pt)};
  if (metric == Metric::relative_entropy) {
    report.n_value = relative_entropy(rho, sigma);
  } else {
    report.n_value = 0.5 * trace_norm_distance(rho, sigma);
    report.upper_bound = true;
  }
  if (report.n_value < 0.0 && report.n_value >= -1e-10) report.n_value = 0.0;
  return report;
}

std::vector<std::size_t> bond_dimension(const ProcessTensor& pt,
                                        double cutoff) {
  const std::size_t steps = pt.steps();
  const std::size_t d = pt.system_dim();
  std::vector<std::size_t> perm{2 * steps};
  for (std::size_t j = 0; j < steps; ++j) {
    perm.push_back(1 + 2 * (steps - 1 - j));
    perm.push_back(2 * (steps - 1 - j));
  }
  const ComplexMatrix chrono = permute_legs(pt.choi(), pt.legs(), perm);
  const std::size_t total = static_cast<std::size_t>(chrono.rows());
  std::vector<std::size_t> dims;
  for (std::size_t c = 1; c <= steps; ++c) {
    const std::size_t left = ipow(d, 2 * c - 1);
    const std::size_t right = total / left;
    ComplexMatrix reshaped(idx(left * left), idx(right * right));
    for (std::size_t a = 0; a < left; ++a) {
      for (std::size_t a2 = 0; a2 < left; ++a2) {
        for (std::size_t b = 0; b < right; ++b) {
          for (std::size_t b2 = 0; b2 < right; ++b2) {
            reshaped(idx(a * left + a2), idx(b * right + b2)) =
                chrono(idx(a * right + b), idx(a2 * right + b2));
          }
        }
      }
    }
    const RealVector sv = singular_values(reshaped);
    const double largest = sv.size() > 0 ? sv(0) : 0.0;
    std::size_t rank = 0;
    for (Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > cutoff * largest) ++rank;
    }
    dims.push_back(std::max<std::size_t>(rank, 1));
  }
  return dims;
}

// ---------------------------------------------------------------------------
// Classical statistics

double ClassicalProcess::probability(
    const std::vector<std::size_t>& outcomes) const {
  if (outcomes.size() != alphabet.size()) {
    throw DimensionError("ClassicalProcess: outcome tuple length");
  }
  std::size_t flat = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i] >= alphabet[i]) {
      throw DimensionError("ClassicalProcess: outcome out of range");
    }
    flat = flat * alphabet[i] + outcomes[i];
  }
  return table[flat];
}

double ClassicalProcess::total() const {
  return std::accumulate(table.begin(), table.end(), 0.0);
}

ClassicalProcess classical_process(const ProcessTensor& pt,
                                   const std::vector<Instrument>& instruments) {
  const std::size_t steps = pt.steps();
  const std::size_t d = pt.system_dim();
  if (instruments.size() != steps && instruments.size() != steps + 1) {
    throw DimensionError("classical_process: need K or K + 1 instruments");
  }
  for (const auto& inst : instruments) {
    if (inst.dim() != d) {
      throw DimensionError("classical_process: instrument dimension mismatch");
    }
  }
  const bool final_readout = instruments.size() == steps + 1;
  ClassicalProcess cp;
  cp.times.assign(pt.times().begin(),
                  pt.times().begin() +
                      static_cast<std::ptrdiff_t>(instruments.size()));
  std::size_t size = 1;
  for (const auto& inst : instruments) {
    cp.alphabet.push_back(inst.size());
    size *= inst.size();
  }
  cp.table.assign(size, 0.0);

  auto recurse = [&](auto&& self, const ComplexMatrix& cur, std::size_t slot,
                     std::size_t prefix) -> void {
    if (slot == steps) {
      if (final_readout) {
        const Instrument& last = instruments.back();
        for (std::size_t r = 0; r < last.size(); ++r) {
          cp.table[prefix * last.size() + r] =
              last.members[r](cur).trace().real();
        }
      } else {
        cp.table[prefix] = cur.trace().real();
      }
      return;
    }
    const Instrument& inst = instruments[slot];
    for (std::size_t r = 0; r < inst.size(); ++r) {
      self(self, contract_trailing(cur, inst.members[r].choi()), slot + 1,
           prefix * inst.size() + r);
    }
  };
  recurse(recurse, pt.choi(), 0, 0);
  return cp;
}

ClassicalMarkovResult classical_markov_check(const ClassicalProcess& cp,
                                             double tolerance) {
  ClassicalMarkovResult result;
  const std::size_t n = cp.alphabet.size();
  if (n < 3) return result;
  // prefix[j]: marginal over r_0..r_j, flattened with r_0 slowest.
  std::vector<std::vector<double>> prefix(n);
  prefix[n - 1] = cp.table;
  for (std::size_t j = n - 1; j-- > 0;) {
    const std::size_t a = cp.alphabet[j + 1];
    prefix[j].assign(prefix[j + 1].size() / a, 0.0);
    for (std::size_t i = 0; i < prefix[j + 1].size(); ++i) {
      prefix[j][i / a] += prefix[j + 1][i];
    }
  }
  for (std::size_t j = 2; j < n; ++j) {
    const std::size_t aj = cp.alphabet[j];
    const std::size_t ap = cp.alphabet[j - 1];
    // Pair marginal P(r_{j-1}, r_j).
    std::vector<double> pair(ap * aj, 0.0);
    for (std::size_t i = 0; i < prefix[j].size(); ++i) {
      pair[i % (ap * aj)] += prefix[j][i];
    }
    std::vector<double> single(ap, 0.0);
    for (std::size_t i = 0; i < pair.size(); ++i) single[i / aj] += pair[i];

    for (std::size_t h = 0; h < prefix[j - 1].size(); ++h) {
      const double ph = prefix[j - 1][h];
      if (!(ph > kProbabilityFloor)) continue;
      const std::size_t last = h % ap;
      if (!(single[last] > kProbabilityFloor)) continue;
      for (std::size_t r = 0; r < aj; ++r) {
        const double full = prefix[j][h * aj + r] / ph;
        const double reduced = pair[last * aj + r] / single[last];
        result.max_violation =
            std::max(result.max_violation, std::abs(full - reduced));
      }
    }
  }
  result.is_markov = result.max_violation <= tolerance;
  return result;
}

ClassicalMarkovResult classical_markov_check(
    const std::vector<ClassicalProcess>& family, double tolerance) {
  if (family.empty()) {
    throw DimensionError("classical_markov_check: empty family");
  }
  ClassicalMarkovResult result = classical_markov_check(family.front(),
                                                        tolerance);
  for (const auto& big : family) {
    for (const auto& small : family) {
      if (&big == &small || small.times.size() >= big.times.size()) continue;
      // Map each time of `small` to its position in `big`.
      std::vector<std::size_t> pos;
      for (double t : small.times) {
        const auto it = std::find(big.times.begin(), big.times.end(), t);
        if (it == big.times.end()) break;
        pos.push_back(static_cast<std::size_t>(it - big.times.begin()));
      }
      if (pos.size() != small.times.size()) continue;
      bool alphabets_match = true;
      for (std::size_t i = 0; i < pos.size(); ++i) {
        alphabets_match =
            alphabets_match && big.alphabet[pos[i]] == small.alphabet[i];
      }
      if (!alphabets_match) {
        result.kolmogorov_ok = false;
        continue;
      }
      std::vector<double> marginal(small.table.size(), 0.0);
      std::vector<std::size_t> digits(big.alphabet.size());
      for (std::size_t flat = 0; flat < big.table.size(); ++flat) {
        std::size_t rest = flat;
        for (std::size_t i = big.alphabet.size(); i-- > 0;) {
          digits[i] = rest % big.alphabet[i];
          rest /= big.alphabet[i];
        }
        std::size_t target = 0;
        for (std::size_t i = 0; i < pos.size(); ++i) {
          target = target * small.alphabet[i] + digits[pos[i]];
        }
        marginal[target] += big.table[flat];
      }
      for (std::size_t i = 0; i < marginal.size(); ++i) {
        if (std::abs(marginal[i] - small.table[i]) > tolerance) {
          result.kolmogorov_ok = false;
        }
      }
    }
  }
  return result;
}

}  // namespace ptr
