// Copyright 2026 The lzsme Authors
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
#include <set>
#include <sstream>

#include "lzsme/errors.hpp"

namespace lzsme::app {

using nlohmann::json;

namespace {

const json& require_type(const json& v, const std::string& key, bool ok,
                         const char* expected) {
  if (!ok) throw ConfigError(key, std::string("expected ") + expected);
  return v;
}

double read_real(const json& v, const std::string& key) {
  require_type(v, key, v.is_number(), "a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(key, "must be finite");
  return x;
}

std::uint64_t read_unsigned(const json& v, const std::string& key) {
  require_type(v, key, v.is_number_unsigned(), "a non-negative integer");
  return v.get<std::uint64_t>();
}

bool read_bool(const json& v, const std::string& key) {
  require_type(v, key, v.is_boolean(), "true or false");
  return v.get<bool>();
}

std::string read_string(const json& v, const std::string& key) {
  require_type(v, key, v.is_string(), "a string");
  return v.get<std::string>();
}

std::vector<double> read_reals(const json& v, const std::string& key) {
  require_type(v, key, v.is_array(), "an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(read_real(v[i], key + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Stepper read_stepper(const json& v, const std::string& key) {
  const std::string name = read_string(v, key);
  const auto s = parse_stepper(name);
  if (!s) {
    throw ConfigError(key, "unknown stepper '" + name +
                               "' (expected milstein or euler_maruyama)");
  }
  return *s;
}

struct Field {
  const char* key;
  void (*read)(RunConfig&, const json&, const std::string&);
  json (*write)(const RunConfig&);
};

const std::vector<Field>& schema() {
  static const std::vector<Field> fields = {
      {"omega", [](RunConfig& c, const json& v, const std::string& k) { c.sweep.omega = read_real(v, k); },
       [](const RunConfig& c) { return json(c.sweep.omega); }},
      {"alpha", [](RunConfig& c, const json& v, const std::string& k) { c.sweep.alpha = read_real(v, k); },
       [](const RunConfig& c) { return json(c.sweep.alpha); }},
      {"gamma_decay", [](RunConfig& c, const json& v, const std::string& k) { c.sweep.gamma_decay = read_real(v, k); },
       [](const RunConfig& c) { return json(c.sweep.gamma_decay); }},
      {"phi", [](RunConfig& c, const json& v, const std::string& k) { c.sweep.phi = read_real(v, k); },
       [](const RunConfig& c) { return json(c.sweep.phi); }},
      {"eta", [](RunConfig& c, const json& v, const std::string& k) { c.sweep.eta = read_real(v, k); },
       [](const RunConfig& c) { return json(c.sweep.eta); }},
      {"t_initial", [](RunConfig& c, const json& v, const std::string& k) { c.sweep.t_initial = read_real(v, k); },
       [](const RunConfig& c) { return json(c.sweep.t_initial); }},
      {"t_final", [](RunConfig& c, const json& v, const std::string& k) { c.sweep.t_final = read_real(v, k); },
       [](const RunConfig& c) { return json(c.sweep.t_final); }},
      {"dt", [](RunConfig& c, const json& v, const std::string& k) { c.numerics.dt = read_real(v, k); },
       [](const RunConfig& c) { return json(c.numerics.dt); }},
      {"stepper", [](RunConfig& c, const json& v, const std::string& k) { c.numerics.stepper = read_stepper(v, k); },
       [](const RunConfig& c) { return json(std::string(to_string(c.numerics.stepper))); }},
      {"renormalize", [](RunConfig& c, const json& v, const std::string& k) { c.numerics.renormalize_each_step = read_bool(v, k); },
       [](const RunConfig& c) { return json(c.numerics.renormalize_each_step); }},
      {"decimation", [](RunConfig& c, const json& v, const std::string& k) { c.numerics.decimation = read_unsigned(v, k); },
       [](const RunConfig& c) { return json(c.numerics.decimation); }},
      {"n_traj", [](RunConfig& c, const json& v, const std::string& k) { c.ensemble.n_traj = read_unsigned(v, k); },
       [](const RunConfig& c) { return json(c.ensemble.n_traj); }},
      {"master_seed", [](RunConfig& c, const json& v, const std::string& k) { c.ensemble.master_seed = read_unsigned(v, k); },
       [](const RunConfig& c) { return json(c.ensemble.master_seed); }},
      {"thresholds", [](RunConfig& c, const json& v, const std::string& k) { c.ensemble.thresholds = read_reals(v, k); },
       [](const RunConfig& c) { return json(c.ensemble.thresholds); }},
      {"histogram_bins", [](RunConfig& c, const json& v, const std::string& k) { c.ensemble.histogram_bins = read_unsigned(v, k); },
       [](const RunConfig& c) { return json(c.ensemble.histogram_bins); }},
      {"histogram_times", [](RunConfig& c, const json& v, const std::string& k) { c.ensemble.histogram_times = read_reals(v, k); },
       [](const RunConfig& c) { return json(c.ensemble.histogram_times); }},
      {"store_trajectories", [](RunConfig& c, const json& v, const std::string& k) { c.ensemble.store_trajectories = read_bool(v, k); },
       [](const RunConfig& c) { return json(c.ensemble.store_trajectories); }},
      {"dt_fine", [](RunConfig& c, const json& v, const std::string& k) { c.convergence.dt_fine = read_real(v, k); },
       [](const RunConfig& c) { return json(c.convergence.dt_fine); }},
      {"factors",
       [](RunConfig& c, const json& v, const std::string& k) {
         require_type(v, k, v.is_array(), "an array of integers");
         c.convergence.factors.clear();
         for (std::size_t i = 0; i < v.size(); ++i) {
           c.convergence.factors.push_back(read_unsigned(v[i], k + "[" + std::to_string(i) + "]"));
         }
       },
       [](const RunConfig& c) { return json(c.convergence.factors); }},
      {"n_paths", [](RunConfig& c, const json& v, const std::string& k) { c.convergence.n_paths = read_unsigned(v, k); },
       [](const RunConfig& c) { return json(c.convergence.n_paths); }},
      {"steppers",
       [](RunConfig& c, const json& v, const std::string& k) {
         require_type(v, k, v.is_array(), "an array of stepper names");
         c.convergence.steppers.clear();
         for (std::size_t i = 0; i < v.size(); ++i) {
           c.convergence.steppers.push_back(read_stepper(v[i], k + "[" + std::to_string(i) + "]"));
         }
       },
       [](const RunConfig& c) {
         json out = json::array();
         for (const Stepper s : c.convergence.steppers) out.push_back(std::string(to_string(s)));
         return out;
       }},
      {"output_dir", [](RunConfig& c, const json& v, const std::string& k) { c.output_dir = read_string(v, k); },
       [](const RunConfig& c) { return json(c.output_dir); }},
  };
  return fields;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const Field& f : schema()) out.emplace_back(f.key);
    return out;
  }();
  return keys;
}

void RunConfig::validate() const {
  sweep.validate();
  numerics.validate(sweep);
  ensemble.validate(sweep, numerics);
  if (!(convergence.dt_fine > 0.0)) {
    throw ConfigError("dt_fine", "must be positive");
  }
  if (convergence.factors.empty()) {
    throw ConfigError("factors", "needs at least one coarsening factor");
  }
  for (std::size_t i = 0; i < convergence.factors.size(); ++i) {
    if (convergence.factors[i] == 0) {
      throw ConfigError("factors[" + std::to_string(i) + "]", "must be positive");
    }
  }
  if (convergence.n_paths == 0) throw ConfigError("n_paths", "must be positive");
  if (output_dir.empty()) throw ConfigError("output_dir", "must not be empty");
}

RunConfig parse_config_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("$", "top level must be a JSON object");
  std::set<std::string> known;
  for (const Field& f : schema()) known.insert(f.key);
  for (const auto& [key, value] : doc.items()) {
    if (!known.contains(key)) throw ConfigError(key, "unknown key");
  }
  RunConfig c;
  for (const Field& f : schema()) {
    const auto it = doc.find(f.key);
    if (it == doc.end()) {
      c.defaults_applied.emplace_back(f.key);
    } else {
      f.read(c, *it, f.key);
    }
  }
  c.validate();
  return c;
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", std::string("malformed JSON: ") + e.what());
  }
  return parse_config_json(doc);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("$", "cannot open config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(std::string_view(text.str()));
}

json serialize(const RunConfig& c) {
  json out = json::object();
  for (const Field& f : schema()) out[f.key] = f.write(c);
  return out;
}

}  // namespace lzsme::app
