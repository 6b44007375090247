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

#include "output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lzsme/errors.hpp"

namespace lzsme::app {

using nlohmann::json;

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x + 0.0);  // no "-0"
  return buf;
}

namespace {

// JSON object keys for real-valued labels (times, thresholds).
std::string label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

void write_sample(std::ostream& out, const Sample& s) {
  out << format_real(s.t) << ',' << format_real(s.pe) << ','
      << format_real(s.bloch.x) << ',' << format_real(s.bloch.y) << ','
      << format_real(s.bloch.z) << ',' << format_real(s.purity);
}

}  // namespace

json manifest_core(const RunConfig& c, std::string_view subcommand) {
  json m = json::object();
  m["tool"] = "lzsme";
  m["version"] = std::string(kVersion);
  m["subcommand"] = std::string(subcommand);
  m["master_seed"] = c.ensemble.master_seed;
  m["config"] = serialize(c);
  m["config"].erase("output_dir");
  m["defaults_applied"] = c.defaults_applied;
  return m;
}

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& rec) {
  const bool with_current = rec.has_current();
  out << "t,pe,x,y,z,purity" << (with_current ? ",dq" : "") << '\n';
  for (std::size_t k = 0; k < rec.samples.size(); ++k) {
    write_sample(out, rec.samples[k]);
    if (with_current) out << ',' << format_real(rec.sample_current[k]);
    out << '\n';
  }
}

void write_reference_csv(std::ostream& out, const ReferenceRecord& rec) {
  out << "t,pe,x,y,z,purity\n";
  for (const Sample& s : rec.samples) {
    write_sample(out, s);
    out << '\n';
  }
}

json stats_json(const EnsembleStats& s, const json& manifest) {
  json out = json::object();
  out["manifest"] = manifest;
  out["n_traj"] = s.n_traj;

  json curve = json::array();
  for (std::size_t k = 0; k < s.times.size(); ++k) {
    curve.push_back(json::array({s.times[k], s.mean_pe[k]}));
  }
  out["mean_curve"] = std::move(curve);

  json hist = json::object();
  for (const HistogramStats& h : s.histograms) {
    json entry = json::object();
    entry["counts"] = h.counts;
    entry["skew_moment"] = h.skew ? json(h.skew->moment) : json(nullptr);
    entry["skew_pearson"] = h.skew ? json(h.skew->pearson) : json(nullptr);
    hist[label(h.t)] = std::move(entry);
  }
  out["histograms"] = std::move(hist);

  json exits = json::object();
  json dwell = json::object();
  for (const ThresholdStats& t : s.thresholds) {
    exits[label(t.threshold)] = t.exit_fraction;
    dwell[label(t.threshold)] = {{"mean", t.mean_dwell_fraction},
                                 {"max", t.max_dwell_fraction}};
  }
  out["exit_fractions"] = std::move(exits);
  out["dwell"] = std::move(dwell);
  return out;
}

void write_summaries_csv(std::ostream& out, const EnsembleStats& s) {
  out << "index,seed,max_excitation,terminal_pe,min_purity";
  if (!s.summaries.empty()) {
    for (const DwellEntry& d : s.summaries.front().dwell) {
      out << ",dwell_" << label(d.threshold);
    }
  }
  out << '\n';
  for (const TrajectorySummary& t : s.summaries) {
    out << t.index << ',' << t.seed << ',' << format_real(t.max_excitation)
        << ',' << format_real(t.terminal_pe) << ',' << format_real(t.min_purity);
    for (const DwellEntry& d : t.dwell) out << ',' << format_real(d.time);
    out << '\n';
  }
}

void write_convergence_csv(std::ostream& out,
                           std::span<const ConvergenceSeries> series) {
  out << "stepper,dt,error\n";
  for (const ConvergenceSeries& s : series) {
    for (const ConvergencePoint& p : s.points) {
      out << to_string(s.stepper) << ',' << format_real(p.dt) << ','
          << format_real(p.error) << '\n';
    }
  }
}

json convergence_json(std::span<const ConvergenceSeries> series,
                      const json& manifest) {
  json out = json::object();
  out["manifest"] = manifest;
  json body = json::object();
  for (const ConvergenceSeries& s : series) {
    json points = json::array();
    for (const ConvergencePoint& p : s.points) {
      points.push_back(json::array({p.dt, p.error}));
    }
    body[std::string(to_string(s.stepper))] = {{"points", std::move(points)},
                                               {"slope", s.slope}};
  }
  out["steppers"] = std::move(body);
  return out;
}

void write_file(const std::filesystem::path& dir, const std::string& name,
                const std::string& text) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw ConfigError("output_dir", "cannot create " + dir.string() + ": " +
                                        ec.message());
  }
  std::ofstream out(dir / name, std::ios::binary);
  out << text;
  if (!out) throw ConfigError("output_dir", "cannot write " + (dir / name).string());
}

}  // namespace lzsme::app
