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

#include "config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "ptr/errors.hpp"
#include "ptr/ptf1.hpp"
#include "ptr/random.hpp"

namespace ptr::cli {

namespace {

using json = nlohmann::json;

template <class T>
T get_or(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config: field '") + key +
                      "' has the wrong type");
  }
}

std::vector<double> parse_times(const json& root) {
  std::vector<double> times;
  if (root.contains("times")) {
    times = get_or<std::vector<double>>(root, "times", {});
  } else if (root.contains("dt") || root.contains("steps")) {
    const double dt = get_or<double>(root, "dt", 1.0);
    const auto steps = get_or<std::size_t>(root, "steps", 2);
    if (!(dt > 0.0)) throw ConfigError("config: dt must be positive");
    for (std::size_t j = 0; j <= steps; ++j) times.push_back(dt * j);
  } else {
    times = {0.0, 1.0, 2.0};
  }
  if (times.size() < 2) {
    throw ConfigError("config: need at least two times (one step)");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw ConfigError("config: times must strictly increase");
    }
  }
  return times;
}

QuantumMap parse_channel(const json& node, random::Rng& rng) {
  const std::string type = get_or<std::string>(node, "type", "");
  if (type == "identity") return QuantumMap::identity(2);
  if (type == "depolarizing") {
    return QuantumMap::depolarizing(2, get_or<double>(node, "c", 0.5));
  }
  if (type == "amplitude_damping") {
    const double g = get_or<double>(node, "gamma", 0.5);
    if (g < 0.0 || g > 1.0) {
      throw ConfigError("config: amplitude damping gamma outside [0, 1]");
    }
    ComplexMatrix k0 = ComplexMatrix::Zero(2, 2);
    ComplexMatrix k1 = ComplexMatrix::Zero(2, 2);
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1.0 - g);
    k1(0, 1) = std::sqrt(g);
    return QuantumMap::from_kraus({k0, k1});
  }
  if (type == "unitary") {
    const Axis axis = parse_axis(get_or<std::string>(node, "axis", "x"));
    const double angle = get_or<double>(node, "angle", 0.0);
    const ComplexMatrix p = axis == Axis::x   ? qubit::pauli_x()
                            : axis == Axis::y ? qubit::pauli_y()
                                              : qubit::pauli_z();
    return QuantumMap::unitary(std::cos(angle / 2.0) * identity(2) -
                               cd(0.0, std::sin(angle / 2.0)) * p);
  }
  if (type == "random") {
    const auto rank = get_or<std::size_t>(node, "kraus_rank", 2);
    if (rank == 0 || rank > 4) {
      throw ConfigError("config: random channel kraus_rank must be 1..4");
    }
    return random::cptp_map(2, rank, rng);
  }
  throw ConfigError("config: unknown channel type '" + type + "'");
}

ComplexMatrix load_matrix(const json& node, const std::filesystem::path& base) {
  if (!node.is_string()) {
    throw ConfigError("config: matrix entries must be PTF1 file paths");
  }
  std::filesystem::path p = node.get<std::string>();
  if (p.is_relative()) p = base / p;
  try {
    return ptf1::read_matrix(p);
  } catch (const FormatError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

DensityMatrix parse_state(const json& node) {
  if (node.is_string()) return qubit::named_state(node.get<std::string>());
  if (node.is_object() && node.contains("bloch")) {
    const auto v = get_or<std::vector<double>>(node, "bloch", {});
    if (v.size() != 3) throw ConfigError("config: bloch vector needs 3 entries");
    try {
      return DensityMatrix::from_bloch(v[0], v[1], v[2]);
    } catch (const Error& e) {
      throw ConfigError(std::string("config: invalid bloch vector: ") +
                        e.what());
    }
  }
  throw ConfigError("config: state must be a name or {\"bloch\": [x, y, z]}");
}

RunConfig parse_config(const std::string& text,
                       const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config: top level must be an object");
  RunConfig cfg;
  cfg.hash = fnv1a_hex(text);
  cfg.base_dir = base_dir;
  cfg.model = get_or<std::string>(root, "model", "");
  static const std::set<std::string> models = {"b1", "b2", "b3", "markov",
                                               "custom"};
  if (!models.contains(cfg.model)) {
    throw ConfigError("config: model must be one of b1, b2, b3, markov, custom");
  }
  if (root.contains("params")) {
    if (!root["params"].is_object()) {
      throw ConfigError("config: params must be an object");
    }
    cfg.params = root["params"];
  }
  cfg.times = parse_times(root);
  cfg.basis = get_or<std::string>(root, "basis", "ic-default");
  if (cfg.basis != "ic-default") {
    throw ConfigError("config: only the ic-default basis is available");
  }
  if (root.contains("analyses")) {
    cfg.analyses = get_or<std::vector<std::string>>(root, "analyses", {});
    if (cfg.analyses.empty()) throw ConfigError("config: analyses is empty");
    for (const auto& a : cfg.analyses) {
      if (!kAnalyses.contains(a)) {
        throw ConfigError("config: unknown analysis '" + a + "'");
      }
    }
  }
  if (root.contains("tolerances")) {
    const json& t = root["tolerances"];
    if (!t.is_object()) throw ConfigError("config: tolerances must be an object");
    cfg.tolerances.markov = get_or<double>(t, "markov", cfg.tolerances.markov);
    cfg.tolerances.divisibility =
        get_or<double>(t, "divisibility", cfg.tolerances.divisibility);
    cfg.tolerances.measure =
        get_or<double>(t, "measure", cfg.tolerances.measure);
    cfg.tolerances.classical =
        get_or<double>(t, "classical", cfg.tolerances.classical);
    cfg.tolerances.bond_cutoff =
        get_or<double>(t, "bond_cutoff", cfg.tolerances.bond_cutoff);
  }
  if (root.contains("output")) {
    const json& o = root["output"];
    if (!o.is_object()) throw ConfigError("config: output must be an object");
    if (o.contains("ptf")) cfg.output_ptf = get_or<std::string>(o, "ptf", "");
    if (o.contains("report")) {
      cfg.output_report = get_or<std::string>(o, "report", "");
    }
    if (o.contains("csv")) cfg.output_csv = get_or<std::string>(o, "csv", "");
  }
  const long workers = get_or<long>(root, "workers", 0);
  if (workers < 0) throw ConfigError("config: workers must be >= 0");
  cfg.workers = static_cast<std::size_t>(workers);
  cfg.seed = get_or<std::uint64_t>(root, "seed", cfg.seed);
  cfg.allow_large = get_or<bool>(root, "allow_large", false);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

SEModel build_model(const RunConfig& config) {
  const json& p = config.params;
  const auto initial = [&](const char* fallback) {
    return parse_state(p.contains("initial_state") ? p["initial_state"]
                                                   : json(fallback));
  };
  if (config.model == "b1") {
    const std::string averaging =
        get_or<std::string>(p, "averaging", "characteristic");
    if (averaging != "characteristic" && averaging != "quadrature") {
      throw ConfigError("config: averaging must be characteristic or quadrature");
    }
    return model_b1(get_or<double>(p, "gamma", 1.0), get_or<double>(p, "g", 1.0),
                    parse_axis(get_or<std::string>(p, "axis", "z")),
                    averaging == "quadrature" ? NoiseAveraging::quadrature
                                              : NoiseAveraging::characteristic,
                    get_or<std::size_t>(p, "nodes", 2001),
                    initial("+").matrix());
  }
  if (config.model == "b2") {
    return model_b2(get_or<double>(p, "omega", 1.0), initial("0").matrix());
  }
  if (config.model == "b3") {
    return model_b3(
        parse_state(p.contains("system_state") ? p["system_state"] : json("+")),
        parse_state(p.contains("env_state") ? p["env_state"] : json("0")));
  }
  if (config.model == "markov") {
    random::Rng rng(config.seed);
    const std::size_t steps = config.times.size() - 1;
    std::vector<QuantumMap> maps;
    if (p.contains("maps")) {
      if (!p["maps"].is_array() || p["maps"].size() != steps) {
        throw ConfigError("config: markov maps must list one channel per step");
      }
      for (const auto& node : p["maps"]) maps.push_back(parse_channel(node, rng));
    } else {
      const json node = {{"type", "random"},
                         {"kraus_rank", get_or<std::size_t>(p, "kraus_rank", 2)}};
      for (std::size_t j = 0; j < steps; ++j) {
        maps.push_back(parse_channel(node, rng));
      }
    }
    return model_markov(maps, initial("0"));
  }
  // custom
  const auto sys = get_or<std::size_t>(p, "system_dim", 2);
  const auto env = get_or<std::size_t>(p, "env_dim", 2);
  if (!p.contains("unitaries") || !p["unitaries"].is_array()) {
    throw ConfigError("config: custom model needs a unitaries array");
  }
  std::vector<ComplexMatrix> us;
  for (const auto& u : p["unitaries"]) us.push_back(load_matrix(u, config.base_dir));
  if (!p.contains("initial_joint")) {
    throw ConfigError("config: custom model needs initial_joint");
  }
  try {
    return model_custom(sys, env, std::move(us),
                        load_matrix(p["initial_joint"], config.base_dir));
  } catch (const DimensionError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const NotPsdError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const NotHermitianError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

}  // namespace ptr::cli
