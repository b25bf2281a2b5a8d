// Copyright 2026 The spinsched Authors.
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

// File formats: the run configuration (strict, versioned JSON), instance,
// topology and result exports, and the evaluation reports.
//
// Data files never contain wall-clock timings or host details; those go to a
// separate metadata document so data outputs are byte-reproducible.

#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "spinsched/channel.hpp"
#include "spinsched/evaluation.hpp"
#include "spinsched/optimizer.hpp"
#include "spinsched/topology.hpp"

namespace spinsched::io {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kConfigSchema = "spinsched.config/1";
inline constexpr std::string_view kInstanceSchema = "spinsched.instance/1";
inline constexpr std::string_view kTopologySchema = "spinsched.topology/1";
inline constexpr std::string_view kResultSchema = "spinsched.result/1";
inline constexpr std::string_view kReportSchema = "spinsched.report/1";
inline constexpr std::string_view kSweepSchema = "spinsched.sweep/1";

struct SweepSpec {
  SweepParameter parameter = SweepParameter::NumLinks;
  std::vector<double> values;
};

struct RunConfig {
  ExperimentConfig experiment;  // experiment.scenario is the scenario section
  std::optional<SweepSpec> sweep;
};

/// Parses a configuration document. Every section and key is optional except
/// "schema"; unknown keys and type mismatches raise ConfigError naming the
/// dotted key path.
RunConfig parse_config(const Json& doc);
RunConfig load_config(const std::filesystem::path& path);
Json config_to_json(const RunConfig& config);

Json scenario_to_json(const ScenarioConfig& scenario);
Json experiment_to_json(const ExperimentConfig& experiment);

Json instance_to_json(const LinkInstance& instance);
LinkInstance instance_from_json(const Json& doc);

Json topology_to_json(const TopologyGraph& graph, const RootedTree& tree);
/// One line per edge: "k l weight in_tree", preceded by a comment header.
void write_edge_list(std::ostream& out, const TopologyGraph& graph, const RootedTree& tree);

Json result_to_json(const OptimizationResult& result);

/// Means, percentiles, gains, D statistics and the configuration echo.
Json report_summary(const EvalReport& report);
/// Columns: algorithm,M,drop,frame,link,rate_bps.
void write_samples_csv(std::ostream& out, const EvalReport& report);
void write_samples_json(std::ostream& out, const EvalReport& report);
/// One row per (point, algorithm): x value, mean and percentile rates, gains.
void write_plot_csv(std::ostream& out, std::string_view x_name, std::span<const double> x_values,
                    std::span<const EvalReport> reports);

/// Writes `text` to `path`, creating parent directories.
void write_file(const std::filesystem::path& path, std::string_view text);
Json read_json_file(const std::filesystem::path& path);

/// Fixed-format number rendering used by the CSV writers.
std::string format_double(double v);

}  // namespace spinsched::io
