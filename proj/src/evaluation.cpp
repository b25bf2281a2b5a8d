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

#include "spinsched/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "spinsched/random.hpp"

namespace spinsched {

namespace {

struct DropResult {
  std::vector<std::vector<double>> samples;  // per algorithm: frames x links
  std::vector<OptimizationResult> results;
  int max_children = 0;
  int num_edges = 0;
};

OptimizationResult optimize(const ExperimentConfig& config, Algorithm algorithm,
                            const LinkInstance& inst, const TopologyGraph& graph,
                            const RootedTree& tree) {
  switch (algorithm) {
    case Algorithm::Exhaustive:
      return exhaustive_search(inst.gains, graph, config.utility, config.limits);
    case Algorithm::MstDp:
      return mst_dp(inst.gains, graph, tree, config.utility, config.limits);
    case Algorithm::Random:
      return random_spins(inst.gains, graph, config.utility,
                          derive_seed(inst.seed, Stream::RandomSpins));
    case Algorithm::TreeBruteForce:
      return tree_brute_force(inst.gains, graph, tree, config.utility, config.limits);
  }
  throw std::logic_error("unknown algorithm");
}

DropResult run_drop(const ExperimentConfig& config, int drop) {
  const std::uint64_t drop_seed =
      derive_seed(config.master_seed, Stream::Drop, static_cast<std::uint64_t>(drop));
  const LinkInstance inst = generate_instance(config.scenario, drop_seed);
  const TopologyGraph graph = build_graph(inst.gains, config.scenario.inr_edge_threshold);
  const RootedTree tree = maximum_spanning_tree(graph);
  const int m = inst.num_links();

  DropResult out;
  out.max_children = tree.max_children();
  out.num_edges = static_cast<int>(graph.edges().size());
  for (Algorithm a : config.algorithms) out.results.push_back(optimize(config, a, inst, graph, tree));

  // Spin masks are fixed for the drop: mask[a][l][k] = s_k XOR s_l.
  const std::size_t n_alg = config.algorithms.size();
  std::vector<std::vector<std::vector<double>>> masks(n_alg);
  for (std::size_t a = 0; a < n_alg; ++a) {
    masks[a].assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(m)));
    for (int l = 0; l < m; ++l) InterferenceRows::spin_mask(out.results[a].spins, l, masks[a][l]);
  }

  out.samples.assign(n_alg, {});
  for (auto& s : out.samples) s.reserve(static_cast<std::size_t>(config.frames_per_drop) * m);
  for (int f = 0; f < config.frames_per_drop; ++f) {
    const FadingDraw draw =
        draw_fading(inst.gains, derive_seed(drop_seed, Stream::Fading, static_cast<std::uint64_t>(f)),
                    static_cast<std::uint64_t>(f), config.fading);
    // Physical interference: every other link contributes, whether or not it
    // cleared the topology threshold.
    const InterferenceRows rows(draw.gains);
    for (std::size_t a = 0; a < n_alg; ++a) {
      for (int l = 0; l < m; ++l) {
        out.samples[a].push_back(config.bandwidth_hz * two_way_rate(rows.sinr(l, masks[a][l])));
      }
    }
  }
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  scenario.validate();
  if (algorithms.empty()) throw ConfigError("experiment.algorithms: must not be empty");
  if (num_drops < 1) throw ConfigError("experiment.num_drops: must be >= 1");
  if (frames_per_drop < 1) throw ConfigError("experiment.frames_per_drop: must be >= 1");
  if (!(bandwidth_hz > 0) || !std::isfinite(bandwidth_hz)) {
    throw ConfigError("experiment.bandwidth_hz: must be > 0");
  }
  if (!(percentile > 0 && percentile < 1)) {
    throw ConfigError("experiment.percentile: must lie in (0, 1)");
  }
  if (limits.exhaustive_max_links < 1) throw ConfigError("experiment.exhaustive_cap: must be >= 1");
  if (limits.max_children < 1) throw ConfigError("experiment.max_children: must be >= 1");
}

const AlgorithmStats* EvalReport::find(Algorithm a) const {
  for (const auto& s : algorithms) {
    if (s.algorithm == a) return &s;
  }
  return nullptr;
}

std::size_t EvalReport::expected_sample_count() const {
  std::size_t links = 0;
  for (int m : links_per_drop) links += static_cast<std::size_t>(m);
  return links * static_cast<std::size_t>(config.frames_per_drop);
}

double percentile(std::span<const double> sample, double q) {
  if (sample.empty()) throw std::invalid_argument("percentile: empty sample");
  if (!(q > 0 && q <= 1)) throw std::invalid_argument("percentile: q must lie in (0, 1]");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  // q*n may land a few ulps above an integer (0.07 * 100); don't round that up.
  const double rank = std::ceil(q * n * (1.0 - 1e-12));
  const auto idx = static_cast<std::size_t>(std::clamp(rank, 1.0, n)) - 1;
  return sorted[idx];
}

EvalReport run_experiment(const ExperimentConfig& config, int threads) {
  config.validate();
  for (Algorithm a : config.algorithms) {
    if (a == Algorithm::Exhaustive && config.scenario.num_links > config.limits.exhaustive_max_links) {
      throw OptimizerRefusal("exhaustive search refused: M = " +
                             std::to_string(config.scenario.num_links) + " exceeds the cap of " +
                             std::to_string(config.limits.exhaustive_max_links));
    }
  }
  const auto start = std::chrono::steady_clock::now();
  if (threads <= 0) threads = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  threads = std::min(threads, config.num_drops);

  std::vector<DropResult> drops(static_cast<std::size_t>(config.num_drops));
  std::vector<std::exception_ptr> errors(drops.size());
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int d = next.fetch_add(1); d < config.num_drops; d = next.fetch_add(1)) {
      try {
        drops[d] = run_drop(config, d);
      } catch (...) {
        errors[d] = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  EvalReport report;
  report.config = config;
  const std::size_t n_alg = config.algorithms.size();
  report.algorithms.resize(n_alg);
  for (std::size_t a = 0; a < n_alg; ++a) report.algorithms[a].algorithm = config.algorithms[a];
  for (const DropResult& d : drops) {
    report.links_per_drop.push_back(config.scenario.num_links);
    report.max_children.push_back(d.max_children);
    report.num_edges.push_back(d.num_edges);
    for (std::size_t a = 0; a < n_alg; ++a) {
      AlgorithmStats& s = report.algorithms[a];
      s.samples_bps.insert(s.samples_bps.end(), d.samples[a].begin(), d.samples[a].end());
      const OptimizationResult& r = d.results[a];
      s.objective_exact.push_back(r.objective_exact);
      s.objective_approx.push_back(r.objective_approx.value_or(std::numeric_limits<double>::quiet_NaN()));
      s.degenerate_drops += r.degenerate ? 1 : 0;
      s.optimize_seconds += r.elapsed_seconds;
    }
  }
  for (AlgorithmStats& s : report.algorithms) {
    s.mean_bps = std::accumulate(s.samples_bps.begin(), s.samples_bps.end(), 0.0) /
                 static_cast<double>(s.samples_bps.size());
    s.percentile_bps = percentile(s.samples_bps, config.percentile);
  }
  if (const AlgorithmStats* baseline = report.find(Algorithm::Random)) {
    const double base_pct = baseline->percentile_bps;
    const double base_mean = baseline->mean_bps;
    for (AlgorithmStats& s : report.algorithms) {
      s.gain_percentile = s.percentile_bps / base_pct;
      s.gain_mean = s.mean_bps / base_mean;
    }
  }
  report.d_max = *std::max_element(report.max_children.begin(), report.max_children.end());
  report.d_mean = std::accumulate(report.max_children.begin(), report.max_children.end(), 0.0) /
                  static_cast<double>(report.max_children.size());
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string_view sweep_parameter_name(SweepParameter p) {
  return p == SweepParameter::NumLinks ? "num_links" : "link_mix";
}

std::optional<SweepParameter> parse_sweep_parameter(std::string_view name) {
  if (name == "num_links") return SweepParameter::NumLinks;
  if (name == "link_mix") return SweepParameter::LinkMix;
  return std::nullopt;
}

ExperimentConfig sweep_point(const ExperimentConfig& base, SweepParameter parameter, double value,
                             std::size_t index) {
  ExperimentConfig point = base;
  if (parameter == SweepParameter::NumLinks) {
    if (value < 1 || value != std::floor(value)) {
      throw ConfigError("sweep.values: num_links values must be positive integers");
    }
    point.scenario.num_links = static_cast<int>(value);
  } else {
    point.scenario.link_mix = value;
  }
  point.master_seed = derive_seed(base.master_seed, Stream::Sweep, index);
  return point;
}

std::vector<EvalReport> sweep(const ExperimentConfig& base, SweepParameter parameter,
                              std::span<const double> values, int threads) {
  std::vector<ExperimentConfig> points;
  for (std::size_t i = 0; i < values.size(); ++i) {
    points.push_back(sweep_point(base, parameter, values[i], i));
    points.back().validate();
  }
  std::vector<EvalReport> reports;
  for (const auto& p : points) reports.push_back(run_experiment(p, threads));
  return reports;
}

}  // namespace spinsched
