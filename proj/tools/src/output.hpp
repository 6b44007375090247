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

#pragma once

// Output files of the command-line tool. Data files are pure functions of the
// resolved configuration; timestamps and wall time go to manifest.json only.

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "config.hpp"
#include "json.hpp"
#include "lzsme/ensemble.hpp"
#include "lzsme/sde.hpp"
#include "lzsme/trajectory.hpp"

namespace lzsme::app {

inline constexpr std::string_view kVersion = "0.1.0";

/// Reproducible part of a manifest: tool version, subcommand, resolved
/// configuration and the defaults that were applied. The output directory is
/// left out so that data files do not depend on where they were written.
nlohmann::json manifest_core(const RunConfig& c, std::string_view subcommand);

/// Columns t, pe, x, y, z, purity, dq; dq is dropped when the record carries
/// no current. One row per stored sample.
void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& rec);
void write_reference_csv(std::ostream& out, const ReferenceRecord& rec);

/// {manifest, mean_curve, histograms, exit_fractions, dwell}.
nlohmann::json stats_json(const EnsembleStats& s, const nlohmann::json& manifest);

/// One row per trajectory: index, seed, max_excitation, terminal_pe,
/// min_purity, then dwell_<C> for each threshold.
void write_summaries_csv(std::ostream& out, const EnsembleStats& s);

struct ConvergenceSeries {
  Stepper stepper;
  std::vector<ConvergencePoint> points;
  double slope = 0.0;
};

void write_convergence_csv(std::ostream& out,
                           std::span<const ConvergenceSeries> series);
nlohmann::json convergence_json(std::span<const ConvergenceSeries> series,
                                const nlohmann::json& manifest);

/// Formats with 17 significant digits so values round-trip exactly.
std::string format_real(double x);

/// Writes text to dir/name, creating dir. Throws ConfigError("output_dir")
/// when the file cannot be written.
void write_file(const std::filesystem::path& dir, const std::string& name,
                const std::string& text);

}  // namespace lzsme::app
