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

// Monte-Carlo harness: random drops, spins optimized once per drop on the
// long-term gains, then instantaneous two-way sum-rates under per-frame
// fading pooled over links, frames and drops.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "spinsched/channel.hpp"
#include "spinsched/optimizer.hpp"
#include "spinsched/sinr.hpp"

namespace spinsched {

struct ExperimentConfig {
  ScenarioConfig scenario;
  std::vector<Algorithm> algorithms{Algorithm::Exhaustive, Algorithm::MstDp, Algorithm::Random};
  int num_drops = 100;
  int frames_per_drop = 100;
  UtilityKind utility = UtilityKind::ProportionalFairness;
  double bandwidth_hz = 10e6;
  double percentile = 0.05;
  std::uint64_t master_seed = 1;
  FadingModel fading = FadingModel::Rayleigh;
  OptimizerLimits limits;

  void validate() const;
};

struct AlgorithmStats {
  Algorithm algorithm = Algorithm::MstDp;
  // Instantaneous two-way sum-rates in bit/s, ordered drop, frame, link.
  std::vector<double> samples_bps;
  double mean_bps = 0.0;
  double percentile_bps = 0.0;
  // Ratios against the Random baseline, when it was run.
  std::optional<double> gain_percentile;
  std::optional<double> gain_mean;
  std::vector<double> objective_exact;  // per drop
  std::vector<double> objective_approx; // per drop, NaN when not applicable
  int degenerate_drops = 0;
  double optimize_seconds = 0.0;
};

struct EvalReport {
  ExperimentConfig config;
  std::vector<AlgorithmStats> algorithms;
  std::vector<int> links_per_drop;
  std::vector<int> max_children;  // D of each drop's spanning forest
  std::vector<int> num_edges;     // topology graph size per drop
  double d_mean = 0.0;
  int d_max = 0;
  double elapsed_seconds = 0.0;

  const AlgorithmStats* find(Algorithm a) const;
  std::size_t expected_sample_count() const;
};

/// Lower empirical quantile: element ceil(q*n)-1 of the ascending sample.
double percentile(std::span<const double> sample, double q);

/// Runs every drop; `threads` <= 0 uses the hardware concurrency. The result
/// does not depend on the thread count.
EvalReport run_experiment(const ExperimentConfig& config, int threads = 1);

enum class SweepParameter { NumLinks, LinkMix };

std::string_view sweep_parameter_name(SweepParameter p);
std::optional<SweepParameter> parse_sweep_parameter(std::string_view name);

/// Copy of `base` with the swept field set and the master seed of point
/// `index` derived from the base seed.
ExperimentConfig sweep_point(const ExperimentConfig& base, SweepParameter parameter, double value,
                             std::size_t index);

std::vector<EvalReport> sweep(const ExperimentConfig& base, SweepParameter parameter,
                              std::span<const double> values, int threads = 1);

}  // namespace spinsched
