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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "config.hpp"
#include "lzsme/errors.hpp"
#include "output.hpp"

using namespace lzsme;
using lzsme::app::parse_config;
using lzsme::app::RunConfig;
namespace fs = std::filesystem;

namespace {

std::string key_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.key_path();
  }
  return "<accepted>";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(LZSME_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("lzsme_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Config, EmptyObjectGivesDefaults) {
  const RunConfig c = parse_config(std::string_view("{}"));
  EXPECT_EQ(c.numerics.dt, 4e-5);
  EXPECT_EQ(c.sweep.t_initial, -1.0);
  EXPECT_EQ(c.sweep.t_final, 1.0);
  EXPECT_EQ(c.ensemble.histogram_bins, 25u);
  EXPECT_EQ(c.sweep.phi, 0.0);
  EXPECT_EQ(c.sweep.eta, 1.0);
  EXPECT_EQ(c.sweep.gamma_decay, 1.0);
  EXPECT_EQ(c.defaults_applied, lzsme::app::config_keys());
}

TEST(Config, ErrorsCarryKeyPaths) {
  EXPECT_EQ(key_of(R"({"eta": 1.5})"), "eta");
  EXPECT_EQ(key_of(R"({"etta": 0.5})"), "etta");
  EXPECT_EQ(key_of(R"({"thresholds": [0.1, 0.5, "x"]})"), "thresholds[2]");
  EXPECT_EQ(key_of(R"({"thresholds": [0.5, 0.1]})"), "thresholds[1]");
  EXPECT_EQ(key_of(R"({"n_traj": -3})"), "n_traj");
  EXPECT_EQ(key_of(R"({"stepper": "heun"})"), "stepper");
  EXPECT_EQ(key_of(R"({"dt": 3e-5})"), "dt");
  EXPECT_EQ(key_of(R"({"factors": [10, 0]})"), "factors[1]");
  EXPECT_EQ(key_of(R"({"omega": 100,)"), "$");
  EXPECT_EQ(key_of(R"([1, 2])"), "$");
  EXPECT_EQ(key_of(R"({"eta": 0.5})"), "<accepted>");
}

TEST(Config, PaperPreset) {
  const RunConfig c = lzsme::app::load_config(std::string(LZSME_PRESET_DIR) + "/monitored_sweep.json");
  EXPECT_EQ(c.sweep.omega, 100.0);
  EXPECT_EQ(c.sweep.alpha, 1e3);
  EXPECT_NEAR(adiabaticity(c.sweep).gamma_lz, 10.0, 1e-12);
  EXPECT_EQ(c.sweep.eta, 1.0);
  EXPECT_EQ(c.sweep.phi, 0.0);
  EXPECT_EQ(c.ensemble.n_traj, 6000u);
}

TEST(Config, EveryPresetParsesAndRoundTrips) {
  std::size_t count = 0;
  for (const auto& entry : fs::directory_iterator(LZSME_PRESET_DIR)) {
    if (entry.path().extension() != ".json") continue;
    ++count;
    const RunConfig c = lzsme::app::load_config(entry.path().string());
    const RunConfig back = parse_config(std::string_view(lzsme::app::serialize(c).dump()));
    EXPECT_EQ(back, c) << entry.path();
    EXPECT_TRUE(back.defaults_applied.empty());
  }
  EXPECT_EQ(count, 10u);
}

TEST(Config, RoundTripPreservesEveryBit) {
  RunConfig c = parse_config(std::string_view(
      R"({"omega": 31.622776601683793, "phi": 0.1, "eta": 0.37, "stepper": "euler_maruyama",
          "thresholds": [0.3333333333333333, 0.9], "steppers": ["milstein"]})"));
  const RunConfig back = parse_config(std::string_view(lzsme::app::serialize(c).dump()));
  EXPECT_EQ(back, c);
  EXPECT_EQ(back.sweep.omega, 31.622776601683793);
}

TEST(Output, FormatRealRoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, 2.0e-17, -0.0, 0.99999999999999989}) {
    EXPECT_EQ(std::stod(lzsme::app::format_real(x)), x);
  }
  EXPECT_EQ(lzsme::app::format_real(-0.0), "0");
}

TEST(Output, TrajectoryColumns) {
  TrajectoryRecord rec;
  rec.samples = {{-1.0, 0.0, {0.0, 0.0, -1.0}, 1.0}, {0.0, 0.5, {1.0, 0.0, 0.0}, 1.0}};
  std::ostringstream without;
  lzsme::app::write_trajectory_csv(without, rec);
  EXPECT_EQ(without.str(), "t,pe,x,y,z,purity\n-1,0,0,0,-1,1\n0,0.5,1,0,0,1\n");
  rec.current = {0.25, 0.5};
  rec.sample_current = {0.0, 0.75};
  std::ostringstream with;
  lzsme::app::write_trajectory_csv(with, rec);
  EXPECT_EQ(with.str(),
            "t,pe,x,y,z,purity,dq\n-1,0,0,0,-1,1,0\n0,0.5,1,0,0,1,0.75\n");
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch("exit");
  std::ofstream(dir / "bad.json") << R"({"eta": 2})";
  std::ofstream(dir / "unknown.json") << R"({"sweep": {}})";
  std::ofstream(dir / "ok.json") << R"({"n_traj": 2, "dt": 4e-4, "decimation": 1, "stepper": "euler_maruyama"})";
  EXPECT_EQ(run_cli("ensemble --config " + (dir / "bad.json").string()), 1);
  EXPECT_EQ(run_cli("unitary --config " + (dir / "unknown.json").string()), 1);
  EXPECT_EQ(run_cli("trajectory --config " + (dir / "missing.json").string()), 1);
  EXPECT_EQ(run_cli("trajectory"), 1);
  EXPECT_EQ(run_cli("ensemble --config " + (dir / "ok.json").string() + " --out " +
                    (dir / "em").string()),
            2);
  EXPECT_EQ(run_cli("unitary --config " + (dir / "ok.json").string() + " --out " +
                    (dir / "u").string()),
            0);
  EXPECT_TRUE(fs::exists(dir / "u" / "unitary.csv"));
}

TEST(Cli, TrajectoryIsBitwiseReproducible) {
  const fs::path dir = scratch("traj");
  const std::string preset = std::string(LZSME_PRESET_DIR) + "/monitored_sweep.json";
  ASSERT_EQ(run_cli("trajectory --config " + preset + " --index 7 --out " + (dir / "a").string()), 0);
  ASSERT_EQ(run_cli("trajectory --config " + preset + " --index 7 --out " + (dir / "b").string()), 0);
  const std::string a = slurp(dir / "a" / "trajectory_000007.csv");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(dir / "b" / "trajectory_000007.csv"));
  EXPECT_EQ(a.substr(0, a.find('\n')), "t,pe,x,y,z,purity,dq");

  std::ofstream(dir / "dark.json") << R"({"eta": 0, "alpha": 1000})";
  ASSERT_EQ(run_cli("trajectory --config " + (dir / "dark.json").string() + " --out " +
                    (dir / "c").string()),
            0);
  const std::string c = slurp(dir / "c" / "trajectory_000000.csv");
  EXPECT_EQ(c.substr(0, c.find('\n')), "t,pe,x,y,z,purity");
}

TEST(Cli, EnsembleOutputsIndependentOfThreads) {
  const fs::path dir = scratch("ens");
  std::ofstream(dir / "e.json")
      << R"({"alpha": 1000, "eta": 0.95, "n_traj": 12, "master_seed": 4,
             "thresholds": [0.5, 0.99], "histogram_times": [0.2],
             "store_trajectories": true})";
  const std::string cfg = "ensemble --config " + (dir / "e.json").string();
  ASSERT_EQ(run_cli(cfg + " --threads 1 --out " + (dir / "one").string()), 0);
  ASSERT_EQ(run_cli(cfg + " --threads 4 --out " + (dir / "four").string()), 0);
  for (const char* f : {"stats.json", "summaries.csv", "trajectories/trajectory_000011.csv"}) {
    EXPECT_EQ(slurp(dir / "one" / f), slurp(dir / "four" / f)) << f;
  }
  const auto stats = nlohmann::json::parse(slurp(dir / "one" / "stats.json"));
  for (const char* k : {"manifest", "mean_curve", "histograms", "exit_fractions", "dwell"}) {
    EXPECT_TRUE(stats.contains(k)) << k;
  }
  EXPECT_EQ(stats["histograms"]["0.2"]["counts"].size(), 25u);
  EXPECT_FALSE(stats["manifest"].contains("wall_time_s"));
  const auto manifest = nlohmann::json::parse(slurp(dir / "one" / "manifest.json"));
  EXPECT_TRUE(manifest.contains("wall_time_s"));
  EXPECT_EQ(manifest["config"]["n_traj"], 12);
  EXPECT_EQ(manifest["master_seed"], 4);

  ASSERT_EQ(run_cli(cfg + " --seed 5 --out " + (dir / "seed5").string()), 0);
  EXPECT_NE(slurp(dir / "one" / "summaries.csv"), slurp(dir / "seed5" / "summaries.csv"));
}

TEST(Cli, ConvergeWritesTable) {
  const fs::path dir = scratch("conv");
  std::ofstream(dir / "c.json")
      << R"({"omega": 30, "alpha": 100, "t_initial": -0.1, "t_final": 0.1,
             "histogram_times": [], "dt_fine": 4e-5, "factors": [1, 2, 4],
             "n_paths": 4})";
  ASSERT_EQ(run_cli("converge --config " + (dir / "c.json").string() + " --out " +
                    (dir / "o").string()),
            0);
  const std::string csv = slurp(dir / "o" / "convergence.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "stepper,dt,error");
  const auto j = nlohmann::json::parse(slurp(dir / "o" / "convergence.json"));
  EXPECT_TRUE(j["steppers"]["milstein"].contains("slope"));
  EXPECT_EQ(j["steppers"]["euler_maruyama"]["points"].size(), 3u);
}
