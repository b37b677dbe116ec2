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

#include "report.hpp"

#include <cmath>

namespace ptr::cli {

namespace {

using json = nlohmann::json;

json to_json(const ConditioningRecord& rec) {
  return {{"break_slot", rec.break_slot},
          {"outcome", rec.outcome},
          {"preparation", rec.preparation},
          {"past_basis_indices", rec.past_basis_indices}};
}

}  // namespace

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json to_json(const MarkovReport& report) {
  json breaks = json::array();
  for (const auto& [k, l] : report.breaks_tested) breaks.push_back({k, l});
  json out = {{"is_markov", report.is_markov},
              {"status", to_string(report.status)},
              {"max_deviation", number(report.max_deviation)},
              {"deviation_statistic", "trace_norm"},
              {"tolerance", report.tolerance},
              {"breaks_tested", breaks},
              {"conditionals_evaluated", report.conditionals_evaluated},
              {"conditionals_skipped", report.conditionals_skipped},
              {"exhaustive", report.exhaustive},
              {"witness", nullptr}};
  if (report.witness) {
    out["witness"] = {{"final_time", report.witness->final_time},
                      {"first", to_json(report.witness->first)},
                      {"second", to_json(report.witness->second)},
                      {"distance", number(report.witness->distance)}};
  }
  return out;
}

json to_json(const DivisibilityReport& report) {
  json triples = json::array();
  for (const auto& t : report.triples) {
    triples.push_back(
        {{"j", t.j}, {"k", t.k}, {"l", t.l}, {"defect", number(t.defect)}});
  }
  json maps = json::array();
  for (const auto& m : report.maps) {
    maps.push_back({{"j", m.j},
                    {"l", m.l},
                    {"cp", m.check.cp},
                    {"tp", m.check.tp},
                    {"cp_defect", number(m.check.cp_defect)},
                    {"tp_defect", number(m.check.tp_defect)}});
  }
  return {{"max_defect", number(report.max_defect)},
          {"divisible", report.divisible},
          {"all_cptp", report.all_cptp},
          {"tolerance", report.tolerance},
          {"triples", triples},
          {"maps", maps}};
}

json to_json(const MeasureReport& report) {
  json confusion = json::array();
  for (int n : {1, 10, 100}) {
    confusion.push_back(
        {{"n", n}, {"probability", number(report.confusion(n))}});
  }
  return {{"metric", to_string(report.metric)},
          {"n_value", number(report.n_value)},
          {"infinite", std::isinf(report.n_value)},
          {"units", report.metric == Metric::relative_entropy ? "nats" : "none"},
          {"upper_bound", report.upper_bound},
          {"confusion", confusion},
          {"bond_dims", report.bond_dims}};
}

json to_json(const ClassicalProcess& cp, const ClassicalMarkovResult& check) {
  return {{"times", cp.times},
          {"alphabet", cp.alphabet},
          {"table", cp.table},
          {"total", cp.total()},
          {"is_markov", check.is_markov},
          {"max_violation", number(check.max_violation)},
          {"kolmogorov_ok", check.kolmogorov_ok}};
}

}  // namespace ptr::cli
