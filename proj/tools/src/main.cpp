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

// lzsme: command-line driver for monitored Landau-Zener sweeps.
//
//   lzsme trajectory    --config PATH [--out DIR] [--seed N] [--index N]
//   lzsme unconditional --config PATH [--out DIR]
//   lzsme unitary       --config PATH [--out DIR]
//   lzsme ensemble      --config PATH [--out DIR] [--seed N] [--threads N]
//   lzsme converge      --config PATH [--out DIR] [--seed N]
//
// Exit status: 0 success, 1 configuration error, 2 numerical failure.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "config.hpp"
#include "lzsme/ensemble.hpp"
#include "lzsme/errors.hpp"
#include "lzsme/sde.hpp"
#include "lzsme/trajectory.hpp"
#include "output.hpp"

namespace {

using lzsme::app::RunConfig;
using nlohmann::json;

constexpr int kConfigFailure = 1;
constexpr int kNumericalFailure = 2;

struct Options {
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::uint64_t index = 0;
};

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string zero_padded(std::uint64_t index) {
  std::string s = std::to_string(index);
  return std::string(s.size() < 6 ? 6 - s.size() : 0, '0') + s;
}

class Run {
 public:
  Run(std::string subcommand, const Options& opts)
      : subcommand_(std::move(subcommand)),
        started_(std::chrono::steady_clock::now()) {
    config_ = lzsme::app::load_config(opts.config_path);
    if (opts.out_dir) config_.output_dir = *opts.out_dir;
    if (opts.seed) config_.ensemble.master_seed = *opts.seed;
    config_.validate();
  }

  const RunConfig& config() const { return config_; }
  std::filesystem::path dir() const { return config_.output_dir; }
  json manifest() const { return lzsme::app::manifest_core(config_, subcommand_); }

  void write(const std::string& name, const std::string& text) const {
    lzsme::app::write_file(dir(), name, text);
  }

  /// manifest.json with the non-reproducible fields added.
  void finish(json extra = json::object()) const {
    json m = manifest();
    m["config"]["output_dir"] = config_.output_dir;
    m["created_utc"] = utc_timestamp();
    m["wall_time_s"] = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - started_)
                           .count();
    for (auto& [k, v] : extra.items()) m[k] = v;
    write("manifest.json", m.dump(2) + "\n");
  }

 private:
  std::string subcommand_;
  std::chrono::steady_clock::time_point started_;
  RunConfig config_;
};

json dwell_json(const std::vector<lzsme::DwellEntry>& dwell) {
  json out = json::object();
  for (const auto& d : dwell) {
    char key[32];
    std::snprintf(key, sizeof key, "%.10g", d.threshold);
    out[key] = d.time;
  }
  return out;
}

void cmd_trajectory(const Options& opts) {
  const Run run("trajectory", opts);
  const RunConfig& c = run.config();
  const lzsme::TrajectoryRecord rec = lzsme::simulate_conditional(
      c.sweep, c.numerics, c.ensemble.master_seed, opts.index,
      c.ensemble.thresholds);
  std::ostringstream csv;
  lzsme::app::write_trajectory_csv(csv, rec);
  const std::string name = "trajectory_" + zero_padded(opts.index) + ".csv";
  run.write(name, csv.str());
  run.finish({{"index", opts.index},
              {"data", name},
              {"max_excitation", rec.max_excitation},
              {"terminal_pe", rec.terminal_pe},
              {"min_purity", rec.min_purity},
              {"dwell_time", dwell_json(rec.dwell)}});
}

void cmd_reference(const Options& opts, bool unitary) {
  const std::string name = unitary ? "unitary" : "unconditional";
  const Run run(name, opts);
  const RunConfig& c = run.config();
  const lzsme::ReferenceRecord rec =
      unitary ? lzsme::solve_unitary(c.sweep, c.numerics)
              : lzsme::solve_unconditional(c.sweep, c.numerics);
  std::ostringstream csv;
  lzsme::app::write_reference_csv(csv, rec);
  run.write(name + ".csv", csv.str());
  run.finish({{"data", name + ".csv"},
              {"max_excitation", rec.max_excitation},
              {"terminal_pe", rec.terminal_pe}});
}

void cmd_ensemble(const Options& opts) {
  const Run run("ensemble", opts);
  const RunConfig& c = run.config();
  lzsme::RunOptions ro;
  ro.threads = opts.threads;
  if (c.ensemble.store_trajectories) {
    const std::filesystem::path traj_dir = run.dir() / "trajectories";
    ro.on_trajectory = [traj_dir](const lzsme::TrajectoryRecord& rec) {
      std::ostringstream csv;
      lzsme::app::write_trajectory_csv(csv, rec);
      lzsme::app::write_file(traj_dir,
                             "trajectory_" + zero_padded(rec.index) + ".csv",
                             csv.str());
    };
  }
  const lzsme::EnsembleStats stats =
      lzsme::run_ensemble(c.sweep, c.numerics, c.ensemble, ro);
  run.write("stats.json",
            lzsme::app::stats_json(stats, run.manifest()).dump(2) + "\n");
  std::ostringstream csv;
  lzsme::app::write_summaries_csv(csv, stats);
  run.write("summaries.csv", csv.str());
  run.finish({{"threads", opts.threads},
              {"data", json::array({"stats.json", "summaries.csv"})}});
}

void cmd_converge(const Options& opts) {
  const Run run("converge", opts);
  const RunConfig& c = run.config();
  std::vector<lzsme::app::ConvergenceSeries> series;
  for (const lzsme::Stepper s : c.convergence.steppers) {
    lzsme::app::ConvergenceSeries cs{s, {}, 0.0};
    cs.points = lzsme::strong_error(c.sweep, c.convergence.dt_fine,
                                    c.convergence.factors, c.convergence.n_paths,
                                    c.ensemble.master_seed, s);
    cs.slope = lzsme::loglog_slope(cs.points);
    std::cout << lzsme::to_string(s) << " slope " << cs.slope << '\n';
    series.push_back(std::move(cs));
  }
  std::ostringstream csv;
  lzsme::app::write_convergence_csv(csv, series);
  run.write("convergence.csv", csv.str());
  run.write("convergence.json",
            lzsme::app::convergence_json(series, run.manifest()).dump(2) + "\n");
  run.finish({{"data", json::array({"convergence.csv", "convergence.json"})}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monitored Landau-Zener sweeps: trajectories, references, "
               "ensembles and convergence studies"};
  app.require_subcommand(1);
  Options opts;

  auto add_common = [&opts](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "JSON run configuration")
        ->required();
    sub->add_option("--out", opts.out_dir, "output directory (overrides output_dir)");
  };
  auto add_seed = [&opts](CLI::App* sub) {
    sub->add_option("--seed", opts.seed, "master seed (overrides master_seed)");
  };

  CLI::App* traj = app.add_subcommand("trajectory", "one monitored trajectory");
  add_common(traj);
  add_seed(traj);
  traj->add_option("--index", opts.index, "trajectory index within the seed stream");
  CLI::App* uncond =
      app.add_subcommand("unconditional", "master-equation reference solution");
  add_common(uncond);
  CLI::App* unitary = app.add_subcommand("unitary", "closed-system sweep");
  add_common(unitary);
  CLI::App* ens = app.add_subcommand("ensemble", "ensemble statistics");
  add_common(ens);
  add_seed(ens);
  ens->add_option("--threads", opts.threads, "worker threads, 0 = all cores");
  CLI::App* conv = app.add_subcommand("converge", "strong-convergence study");
  add_common(conv);
  add_seed(conv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigFailure;
  }

  try {
    if (*traj) cmd_trajectory(opts);
    if (*uncond) cmd_reference(opts, false);
    if (*unitary) cmd_reference(opts, true);
    if (*ens) cmd_ensemble(opts);
    if (*conv) cmd_converge(opts);
  } catch (const lzsme::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigFailure;
  } catch (const lzsme::Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return 0;
}
