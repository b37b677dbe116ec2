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

#include "ptr/dilation.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>

#include "ptr/errors.hpp"
#include "ptr/parallel.hpp"

namespace ptr {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

constexpr double kUnitaryTolerance = 1e-12;
constexpr double kFrequencyMerge = 1e-12;

void require_unitary(const ComplexMatrix& u, const std::string& what) {
  if (u.rows() != u.cols()) throw DimensionError(what + ": not square");
  const double defect = max_abs(u * u.adjoint() - identity(u.rows()));
  if (defect > kUnitaryTolerance * std::max<double>(1.0, u.rows())) {
    throw DimensionError(what + ": not unitary (defect " +
                         std::to_string(defect) + ")");
  }
}

// Applies a system control (given by its Choi matrix) to the system factor
// of a joint operator on system ⊗ environment.
ComplexMatrix apply_on_system(const QuantumMap& control,
                              const ComplexMatrix& joint, std::size_t env) {
  const std::size_t d = control.in_dim();
  const std::size_t out_d = control.out_dim();
  ComplexMatrix out(idx(out_d * env), idx(out_d * env));
  ComplexMatrix block(idx(d), idx(d));
  for (std::size_t e = 0; e < env; ++e) {
    for (std::size_t f = 0; f < env; ++f) {
      for (std::size_t x = 0; x < d; ++x) {
        for (std::size_t y = 0; y < d; ++y) {
          block(idx(x), idx(y)) = joint(idx(x * env + e), idx(y * env + f));
        }
      }
      const ComplexMatrix mapped = control(block);
      for (std::size_t a = 0; a < out_d; ++a) {
        for (std::size_t b = 0; b < out_d; ++b) {
          out(idx(a * env + e), idx(b * env + f)) = mapped(idx(a), idx(b));
        }
      }
    }
  }
  return out;
}

ComplexMatrix reduce_to_system(const ComplexMatrix& joint, std::size_t d,
                               std::size_t env) {
  ComplexMatrix out = ComplexMatrix::Zero(idx(d), idx(d));
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      cd sum = 0.0;
      for (std::size_t e = 0; e < env; ++e) {
        sum += joint(idx(a * env + e), idx(b * env + e));
      }
      out(idx(a), idx(b)) = sum;
    }
  }
  return out;
}

void check_controls(const SEModel& model, std::span<const double> times,
                    std::span<const QuantumMap> controls) {
  if (times.size() != controls.size() + 1) {
    throw DimensionError("simulate_sequence: need K + 1 times for K controls");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw DimensionError("simulate_sequence: times must strictly increase");
    }
  }
  for (const auto& c : controls) {
    if (c.in_dim() != model.system_dim || c.out_dim() != model.system_dim) {
      throw DimensionError("simulate_sequence: control dimension mismatch");
    }
  }
}

SimulationResult simulate_quantum(const SEModel& model,
                                  const QuantumEnvironment& env,
                                  std::span<const double> times,
                                  std::span<const QuantumMap> controls,
                                  bool record) {
  const std::size_t d = model.system_dim;
  ComplexMatrix joint = env.initial_joint;
  std::vector<ComplexMatrix> history;
  for (std::size_t j = 0; j < controls.size(); ++j) {
    joint = apply_on_system(controls[j], joint, env.env_dim);
    if (record) history.push_back(joint);
    const ComplexMatrix u = env.step_unitary(j, times[j], times[j + 1]);
    if (static_cast<std::size_t>(u.rows()) != d * env.env_dim) {
      throw DimensionError("simulate_sequence: step unitary dimension");
    }
    joint = u * joint * u.adjoint();
    if (record) history.push_back(joint);
  }
  ComplexMatrix system = hermitian_part(reduce_to_system(joint, d, env.env_dim));
  return {DensityMatrix(std::move(system), 1e-9), std::move(joint),
          std::move(history)};
}

// State as Σ_ω M_ω e^{iωx}, sorted by ω.
using Modes = std::vector<std::pair<double, ComplexMatrix>>;

Modes merge_modes(Modes modes) {
  std::sort(modes.begin(), modes.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Modes out;
  for (auto& [w, m] : modes) {
    if (!out.empty() && std::abs(out.back().first - w) <= kFrequencyMerge) {
      out.back().second += m;
    } else {
      out.emplace_back(w, std::move(m));
    }
  }
  return out;
}

SimulationResult simulate_classical(const SEModel& model,
                                    const ClassicalNoiseEnvironment& env,
                                    std::span<const double> times,
                                    std::span<const QuantumMap> controls) {
  const std::size_t d = model.system_dim;
  const HermitianEigen eig = hermitian_eig(env.generator);
  std::vector<ComplexMatrix> projectors;
  for (std::size_t i = 0; i < d; ++i) {
    const ComplexVector v = eig.eigenvectors.col(idx(i));
    projectors.emplace_back(v * v.adjoint());
  }

  if (env.averaging == NoiseAveraging::characteristic) {
    Modes modes{{0.0, env.initial_system}};
    for (std::size_t j = 0; j < controls.size(); ++j) {
      for (auto& mode : modes) mode.second = controls[j](mode.second);
      const double dt = times[j + 1] - times[j];
      Modes next;
      next.reserve(modes.size() * d * d);
      for (const auto& [w, m] : modes) {
        for (std::size_t a = 0; a < d; ++a) {
          for (std::size_t b = 0; b < d; ++b) {
            ComplexMatrix piece = projectors[a] * m * projectors[b];
            if (max_abs(piece) == 0.0) continue;
            const double shift =
                (eig.eigenvalues(idx(a)) - eig.eigenvalues(idx(b))) * dt;
            next.emplace_back(w - shift, std::move(piece));
          }
        }
      }
      modes = merge_modes(std::move(next));
    }
    ComplexMatrix avg = ComplexMatrix::Zero(idx(d), idx(d));
    for (const auto& [w, m] : modes) {
      avg += std::exp(-env.cauchy_width * std::abs(w)) * m;
    }
    return {DensityMatrix(hermitian_part(avg), 1e-9), std::nullopt, {}};
  }

  ComplexMatrix avg = ComplexMatrix::Zero(idx(d), idx(d));
  for (std::size_t n = 0; n < env.nodes.size(); ++n) {
    const double x = env.nodes[n];
    ComplexMatrix rho = env.initial_system;
    for (std::size_t j = 0; j < controls.size(); ++j) {
      rho = controls[j](rho);
      const double dt = times[j + 1] - times[j];
      ComplexMatrix u = ComplexMatrix::Zero(idx(d), idx(d));
      for (std::size_t a = 0; a < d; ++a) {
        u += std::exp(cd(0.0, -x * eig.eigenvalues(idx(a)) * dt)) *
             projectors[a];
      }
      rho = u * rho * u.adjoint();
    }
    avg += env.weights[n] * rho;
  }
  return {DensityMatrix(hermitian_part(avg), 1e-9), std::nullopt, {}};
}

ComplexMatrix pauli(Axis axis) {
  switch (axis) {
    case Axis::x:
      return qubit::pauli_x();
    case Axis::y:
      return qubit::pauli_y();
    case Axis::z:
      break;
  }
  return qubit::pauli_z();
}

// Unitary on system ⊗ register whose column (s, 0) is Σ_k K_k|s> ⊗ |k>.
ComplexMatrix stinespring_unitary(const std::vector<ComplexMatrix>& kraus,
                                  std::size_t d) {
  const std::size_t r = kraus.size();
  const std::size_t n = d * r;
  Eigen::MatrixXcd v(idx(n), idx(d));
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t k = 0; k < r; ++k) {
      for (std::size_t s = 0; s < d; ++s) {
        v(idx(a * r + k), idx(s)) = kraus[k](idx(a), idx(s));
      }
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(v);
  const Eigen::MatrixXcd q = qr.householderQ();
  ComplexMatrix u(idx(n), idx(n));
  std::size_t spare = d;
  for (std::size_t col = 0; col < n; ++col) {
    if (col % r == 0) {
      u.col(idx(col)) = v.col(idx(col / r));
    } else {
      u.col(idx(col)) = q.col(idx(spare++));
    }
  }
  return u;
}

// Embeds a unitary on system ⊗ register `which` into system ⊗ all registers.
ComplexMatrix embed_register_unitary(const ComplexMatrix& local,
                                     std::size_t d,
                                     const std::vector<std::size_t>& regs,
                                     std::size_t which) {
  const std::size_t env =
      std::accumulate(regs.begin(), regs.end(), std::size_t{1},
                      std::multiplies<>());
  std::size_t stride = 1;
  for (std::size_t i = which + 1; i < regs.size(); ++i) stride *= regs[i];
  const std::size_t r = regs[which];
  ComplexMatrix full = ComplexMatrix::Zero(idx(d * env), idx(d * env));
  for (std::size_t e = 0; e < env; ++e) {
    const std::size_t digit = (e / stride) % r;
    const std::size_t base = e - digit * stride;
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        for (std::size_t k = 0; k < r; ++k) {
          full(idx(a * env + e), idx(b * env + base + k * stride)) =
              local(idx(a * r + digit), idx(b * r + k));
        }
      }
    }
  }
  return full;
}

}  // namespace

// ---------------------------------------------------------------------------

SimulationResult simulate_sequence(const SEModel& model,
                                   std::span<const double> times,
                                   std::span<const QuantumMap> controls,
                                   bool record_history) {
  check_controls(model, times, controls);
  if (const auto* q = std::get_if<QuantumEnvironment>(&model.env)) {
    return simulate_quantum(model, *q, times, controls, record_history);
  }
  return simulate_classical(model, std::get<ClassicalNoiseEnvironment>(model.env),
                            times, controls);
}

SimulationResult simulate_sequence(const SEModel& model,
                                   std::span<const double> times,
                                   const ControlSequence& controls,
                                   bool record_history) {
  return simulate_sequence(model, times, std::span(controls.slots),
                           record_history);
}

ProcessTensor build_process_tensor(const SEModel& model,
                                   std::vector<double> times,
                                   const OperationBasis& basis,
                                   const BuildOptions& options) {
  if (times.size() < 2) {
    throw DimensionError("build_process_tensor: need at least one step");
  }
  if (basis.dim() != model.system_dim) {
    throw DimensionError("build_process_tensor: basis dimension mismatch");
  }
  const std::size_t steps = times.size() - 1;
  const std::size_t nb = basis.size();
  std::size_t sequences = 1;
  for (std::size_t j = 0; j < steps; ++j) {
    if (sequences > options.max_sequences / nb && !options.allow_large) {
      throw GuardError("build_process_tensor: sweep of " +
                       std::to_string(nb) + "^" + std::to_string(steps) +
                       " sequences exceeds the guard of " +
                       std::to_string(options.max_sequences) +
                       " (use allow_large to override)");
    }
    sequences *= nb;
  }
  if (sequences > options.max_sequences && !options.allow_large) {
    throw GuardError("build_process_tensor: sweep exceeds guard");
  }

  std::vector<TomographyRecord> records(sequences);
  parallel_for(sequences, resolve_workers(options.workers), [&](std::size_t n) {
    std::vector<std::size_t> indices(steps);
    std::vector<QuantumMap> controls;
    controls.reserve(steps);
    std::size_t rest = n;
    for (std::size_t j = 0; j < steps; ++j) {
      indices[j] = rest % nb;
      rest /= nb;
      controls.push_back(basis.elements()[indices[j]]);
    }
    const auto result = simulate_sequence(model, times, controls);
    records[n] = TomographyRecord{std::move(indices), result.system.matrix()};
  });
  return from_tomography(records, basis, std::move(times));
}

Axis parse_axis(const std::string& name) {
  if (name == "x") return Axis::x;
  if (name == "y") return Axis::y;
  if (name == "z") return Axis::z;
  throw ConfigError("unknown dephasing axis '" + name + "'");
}

SEModel model_b1(double cauchy_width, double coupling, Axis axis,
                 NoiseAveraging averaging, std::size_t quadrature_nodes,
                 std::optional<ComplexMatrix> initial_system) {
  if (!(cauchy_width > 0.0) || !std::isfinite(cauchy_width)) {
    throw ConfigError("model_b1: Cauchy width must be positive");
  }
  if (coupling == 0.0 || !std::isfinite(coupling)) {
    throw ConfigError("model_b1: coupling must be nonzero");
  }
  ClassicalNoiseEnvironment env;
  env.generator = 0.5 * coupling * pauli(axis);
  env.cauchy_width = cauchy_width;
  env.averaging = averaging;
  env.initial_system = initial_system
                           ? DensityMatrix(*initial_system).matrix()
                           : qubit::named_state("+").matrix();
  if (averaging == NoiseAveraging::quadrature) {
    if (quadrature_nodes == 0) {
      throw ConfigError("model_b1: quadrature needs at least one node");
    }
    gsl_integration_glfixed_table* table =
        gsl_integration_glfixed_table_alloc(quadrature_nodes);
    if (table == nullptr) throw ConfigError("model_b1: quadrature allocation");
    const double half_pi = std::numbers::pi / 2.0;
    for (std::size_t i = 0; i < quadrature_nodes; ++i) {
      double u = 0.0;
      double w = 0.0;
      gsl_integration_glfixed_point(-half_pi, half_pi, i, &u, &w, table);
      env.nodes.push_back(cauchy_width * std::tan(u));
      env.weights.push_back(w / std::numbers::pi);
    }
    gsl_integration_glfixed_table_free(table);
  }
  return SEModel{"b1", 2, std::move(env)};
}

SEModel model_b2(double swap_rate, std::optional<ComplexMatrix> initial_system) {
  if (!(swap_rate > 0.0) || !std::isfinite(swap_rate)) {
    throw ConfigError("model_b2: swap rate must be positive");
  }
  const ComplexMatrix rho_s = initial_system
                                  ? DensityMatrix(*initial_system).matrix()
                                  : qubit::named_state("0").matrix();
  QuantumEnvironment env;
  env.env_dim = 2;
  env.initial_joint =
      tensor_product(rho_s, DensityMatrix::maximally_mixed(2).matrix());
  env.step_unitary = [swap_rate](std::size_t, double t0, double t1) {
    return partial_swap::unitary(2, swap_rate * (t1 - t0));
  };
  return SEModel{"b2", 2, std::move(env)};
}

SEModel model_b3(const DensityMatrix& system, const DensityMatrix& env_state) {
  if (system.dim() != env_state.dim()) {
    throw DimensionError("model_b3: system and environment dimensions differ");
  }
  const std::size_t d = system.dim();
  QuantumEnvironment env;
  env.env_dim = d;
  env.initial_joint = tensor_product(system.matrix(), env_state.matrix());
  const ComplexMatrix swap = partial_swap::swap(d);
  env.step_unitary = [swap](std::size_t, double, double) { return swap; };
  return SEModel{"b3", d, std::move(env)};
}

SEModel model_markov(const std::vector<QuantumMap>& maps,
                     const DensityMatrix& initial) {
  if (maps.empty()) throw ConfigError("model_markov: need at least one map");
  const std::size_t d = initial.dim();
  std::vector<ComplexMatrix> locals;
  std::vector<std::size_t> regs;
  for (const auto& map : maps) {
    if (map.in_dim() != d || map.out_dim() != d) {
      throw DimensionError("model_markov: map dimension mismatch");
    }
    const CptpCheck check = is_cptp(map);
    if (!check.cp || !check.tp) {
      throw NotPsdError("model_markov: maps must be CPTP");
    }
    auto kraus = map.kraus();
    if (kraus.empty()) kraus.push_back(ComplexMatrix::Zero(idx(d), idx(d)));
    regs.push_back(kraus.size());
    locals.push_back(stinespring_unitary(kraus, d));
  }
  std::vector<ComplexMatrix> steps;
  for (std::size_t j = 0; j < maps.size(); ++j) {
    steps.push_back(embed_register_unitary(locals[j], d, regs, j));
  }
  const std::size_t env_dim = std::accumulate(
      regs.begin(), regs.end(), std::size_t{1}, std::multiplies<>());
  QuantumEnvironment env;
  env.env_dim = env_dim;
  env.initial_joint = tensor_product(initial.matrix(),
                                     DensityMatrix::basis_state(env_dim, 0).matrix());
  env.step_unitary = [steps = std::move(steps)](std::size_t step, double,
                                                double) -> ComplexMatrix {
    if (step >= steps.size()) {
      throw DimensionError("model_markov: grid has more steps than maps");
    }
    return steps[step];
  };
  return SEModel{"markov", d, std::move(env)};
}

SEModel model_custom(std::size_t system_dim, std::size_t env_dim,
                     std::vector<ComplexMatrix> step_unitaries,
                     ComplexMatrix initial_joint) {
  const std::size_t n = system_dim * env_dim;
  if (step_unitaries.empty()) {
    throw ConfigError("model_custom: need at least one step unitary");
  }
  for (const auto& u : step_unitaries) {
    if (static_cast<std::size_t>(u.rows()) != n) {
      throw DimensionError("model_custom: unitary dimension mismatch");
    }
    require_unitary(u, "model_custom");
  }
  if (static_cast<std::size_t>(initial_joint.rows()) != n) {
    throw DimensionError("model_custom: initial state dimension mismatch");
  }
  QuantumEnvironment env;
  env.env_dim = env_dim;
  env.initial_joint = DensityMatrix(std::move(initial_joint)).matrix();
  env.step_unitary = [us = std::move(step_unitaries)](
                         std::size_t step, double, double) -> ComplexMatrix {
    if (step >= us.size()) {
      throw DimensionError("model_custom: grid has more steps than unitaries");
    }
    return us[step];
  };
  return SEModel{"custom", system_dim, std::move(env)};
}

namespace partial_swap {

ComplexMatrix swap(std::size_t dim) {
  const std::size_t n = dim * dim;
  ComplexMatrix out = ComplexMatrix::Zero(idx(n), idx(n));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      out(idx(i * dim + j), idx(j * dim + i)) = 1.0;
    }
  }
  return out;
}

ComplexMatrix unitary(std::size_t dim, double theta) {
  return std::cos(theta) * identity(dim * dim) +
         cd(0.0, std::sin(theta)) * swap(dim);
}

ComplexMatrix conditional_environment(const ComplexMatrix& prepared,
                                      const ComplexMatrix& effect,
                                      double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const auto d = static_cast<double>(prepared.rows());
  const cd overlap = (prepared * effect).trace();
  const cd effect_trace = effect.trace();
  const ComplexMatrix unnormalized =
      c * c * overlap * identity(prepared.rows()) +
      s * s * effect_trace * prepared +
      cd(0.0, c * s) * (prepared * effect - effect * prepared);
  const double norm = (c * c * overlap * d + s * s * effect_trace).real();
  if (!(norm > kProbabilityFloor)) {
    throw UnresolvableConditionalError(
        "conditional_environment: outcome has zero probability");
  }
  return unnormalized / norm;
}

ComplexMatrix output_after(const ComplexMatrix& prepared,
                           const ComplexMatrix& env, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return c * c * prepared + s * s * env +
         cd(0.0, c * s) * (env * prepared - prepared * env);
}

}  // namespace partial_swap

}  // namespace ptr
