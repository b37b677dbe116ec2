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

#include <iostream>
#include <numbers>

#include "CLI11.hpp"
#include "commands.hpp"
#include "ptr/errors.hpp"

int main(int argc, char** argv) {
  using namespace ptr::cli;
  CLI::App app{"ptr: process tensors, memory tests and non-Markovianity"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand(
      "simulate", "Build a process tensor from a model config and write PTF1");
  simulate->add_option("config", sim.config, "Model config (JSON)")->required();
  simulate->add_option("-o,--output", sim.output, "Output PTF1 path");
  simulate->add_option("--workers", sim.workers, "Worker threads");
  simulate->add_flag("--allow-large", sim.allow_large,
                     "Lift the tomography sweep-size guard");

  AnalyzeArgs ana;
  bool markov = false, divisibility = false, measure = false, bonddim = false,
       classical = false, no_timing = false;
  auto* analyze =
      app.add_subcommand("analyze", "Run memory analyses on a PTF1 file");
  analyze->add_option("file", ana.input, "PTF1 process tensor")->required();
  analyze->add_flag("--markov", markov, "Operational Markov test");
  analyze->add_flag("--divisibility", divisibility, "Divisibility test");
  analyze->add_flag("--measure", measure, "Non-Markovianity measure");
  analyze->add_flag("--bonddim", bonddim, "Bond dimensions across time cuts");
  analyze->add_flag("--classical", classical,
                    "Classical statistics of computational instruments");
  analyze->add_option("--tol", ana.tol, "Tolerance for every analysis");
  analyze->add_option("--config", ana.config,
                      "Config supplying analyses and tolerances");
  analyze->add_option("-o,--output", ana.output, "Report JSON path");
  analyze->add_option("--csv", ana.csv, "Coherence/echo CSV path");
  analyze->add_option("--workers", ana.workers, "Worker threads");
  analyze->add_flag("--exhaustive", ana.exhaustive,
                    "Scan every break position even after a witness");
  analyze->add_option("--metric", ana.metric,
                      "relative_entropy (default) or trace_distance");
  analyze->add_flag("--no-timing", no_timing,
                    "Omit wall time so reports are byte-reproducible");

  ExamplesArgs ex;
  auto* examples = app.add_subcommand(
      "examples", "Reproduce the dephasing, partial-swap and swap examples");
  examples->add_option("name", ex.name, "b1, b2 or b3")->required();
  examples->add_option("--theta", ex.theta, "b2: ω δt (default π/4)");
  examples->add_option("--gamma-g", ex.gamma_g, "b1: γ g (default 1)");
  examples->add_option("--dt", ex.dt, "b1: interval length (default 1)");
  examples->add_option("--system", ex.system_state, "b3: system state");
  examples->add_option("--env", ex.env_state, "b3: environment state");
  examples->add_option("--trials", ex.trials, "b3: random intermediate maps");
  examples->add_option("--seed", ex.seed, "b3: random seed");
  examples->add_option("-o,--output", ex.output, "Bundle JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim, std::cout);
    if (analyze->parsed()) {
      if (markov) ana.analyses.insert("markov");
      if (divisibility) ana.analyses.insert("divisibility");
      if (measure) ana.analyses.insert("measure");
      if (bonddim) ana.analyses.insert("bonddim");
      if (classical) ana.analyses.insert("classical");
      ana.timing = !no_timing;
      return cmd_analyze(ana, std::cout);
    }
    return cmd_examples(ex, std::cout);
  } catch (const ptr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ptr::GuardError& e) {
    std::cerr << "guard: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ptr::Error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
}
