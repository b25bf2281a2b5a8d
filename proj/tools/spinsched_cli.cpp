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

// spinsched: generate drops, optimize interference spins, and run
// Monte-Carlo evaluations and sweeps.
//
//   spinsched generate --config cfg.json --out dir
//   spinsched optimize --instance dir/instance.json --algorithms exhaustive,mst-dp
//   spinsched evaluate --config cfg.json --out dir --threads 8
//   spinsched sweep    --config cfg.json --out dir
//
// Data files are deterministic for a given configuration and seed; timings
// and host details go to metadata.json only.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "spinsched/channel.hpp"
#include "spinsched/evaluation.hpp"
#include "spinsched/io.hpp"
#include "spinsched/kernels.hpp"
#include "spinsched/optimizer.hpp"
#include "spinsched/random.hpp"
#include "spinsched/topology.hpp"

namespace fs = std::filesystem;
using namespace spinsched;
using io::Json;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kBadConfig = 2, kRefused = 3 };

struct Options {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::string algorithms;
  int threads = 0;
  std::string format = "csv";
  std::string instance_path;
  bool verbose = false;
};

io::RunConfig load(const Options& opt) {
  io::RunConfig config;
  if (!opt.config_path.empty()) config = io::load_config(opt.config_path);
  if (opt.seed) {
    config.experiment.scenario.seed = *opt.seed;
    config.experiment.master_seed = *opt.seed;
  }
  if (!opt.algorithms.empty()) {
    config.experiment.algorithms.clear();
    std::stringstream list(opt.algorithms);
    for (std::string name; std::getline(list, name, ',');) {
      auto a = parse_algorithm(name);
      if (!a) throw ConfigError("--algorithms: unknown algorithm \"" + name + "\"");
      config.experiment.algorithms.push_back(*a);
    }
  }
  config.experiment.validate();
  return config;
}

Json metadata(const std::string& command, double seconds) {
  return Json{{"command", command},
              {"elapsed_seconds", seconds},
              {"kernel_isa", std::string(kernels::isa_name(kernels::active_isa()))},
              {"hardware_threads", std::thread::hardware_concurrency()}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void log(const Options& opt, const std::string& line) {
  if (opt.verbose) std::cerr << line << '\n';
}

int cmd_generate(const Options& opt) {
  const auto start = std::chrono::steady_clock::now();
  const auto config = load(opt);
  const ScenarioConfig& scenario = config.experiment.scenario;
  const LinkInstance inst = generate_instance(scenario, scenario.seed);
  const TopologyGraph graph = build_graph(inst.gains, scenario.inr_edge_threshold);
  const RootedTree tree = maximum_spanning_tree(graph);
  const fs::path out(opt.out_dir);
  io::write_file(out / "instance.json", dump(io::instance_to_json(inst)));
  Json topology = io::topology_to_json(graph, tree);
  topology["seed"] = inst.seed;
  io::write_file(out / "topology.json", dump(topology));
  std::ostringstream edges;
  edges << "# seed " << inst.seed << '\n';
  io::write_edge_list(edges, graph, tree);
  io::write_file(out / "topology.txt", edges.str());
  io::write_file(out / "metadata.json",
                 dump(metadata("generate", std::chrono::duration<double>(
                                               std::chrono::steady_clock::now() - start).count())));
  std::cout << "generated M=" << inst.num_links() << " seed=" << inst.seed
            << " edges=" << graph.edges().size() << " D=" << tree.max_children() << " -> "
            << out.string() << '\n';
  return kOk;
}

int cmd_optimize(const Options& opt) {
  const auto start = std::chrono::steady_clock::now();
  const auto config = load(opt);
  const ExperimentConfig& exp = config.experiment;
  const LinkInstance inst = opt.instance_path.empty()
                                ? generate_instance(exp.scenario, exp.scenario.seed)
                                : io::instance_from_json(io::read_json_file(opt.instance_path));
  const TopologyGraph graph = build_graph(inst.gains, exp.scenario.inr_edge_threshold);
  const RootedTree tree = maximum_spanning_tree(graph);

  std::vector<OptimizationResult> results;
  for (Algorithm a : exp.algorithms) {
    log(opt, "running " + std::string(algorithm_name(a)));
    switch (a) {
      case Algorithm::Exhaustive:
        results.push_back(exhaustive_search(inst.gains, graph, exp.utility, exp.limits));
        break;
      case Algorithm::MstDp:
        results.push_back(mst_dp(inst.gains, graph, tree, exp.utility, exp.limits));
        break;
      case Algorithm::Random:
        results.push_back(random_spins(inst.gains, graph, exp.utility,
                                       derive_seed(inst.seed, Stream::RandomSpins)));
        break;
      case Algorithm::TreeBruteForce:
        results.push_back(tree_brute_force(inst.gains, graph, tree, exp.utility, exp.limits));
        break;
    }
  }

  Json list = Json::array();
  for (const auto& r : results) list.push_back(io::result_to_json(r));
  const Json doc{{"schema", "spinsched.optimize/1"},
                 {"instance_seed", inst.seed},
                 {"master_seed", exp.master_seed},
                 {"num_links", inst.num_links()},
                 {"utility", io::experiment_to_json(exp)["utility"]},
                 {"edge_threshold_linear", exp.scenario.inr_edge_threshold},
                 {"graph_edges", graph.edges().size()},
                 {"max_children", tree.max_children()},
                 {"results", std::move(list)}};

  std::ostringstream summary;
  summary << "M = " << inst.num_links() << ", edges = " << graph.edges().size()
          << ", D = " << tree.max_children() << ", utility = "
          << doc["utility"].get<std::string>() << "\n";
  summary << std::left << std::setw(18) << "algorithm" << std::setw(22) << "objective_exact"
          << std::setw(22) << "objective_approx" << "spins\n";
  for (const auto& r : results) {
    std::string spins;
    for (auto b : r.spins.s) spins += static_cast<char>('0' + b);
    summary << std::left << std::setw(18) << algorithm_name(r.algorithm) << std::setw(22)
            << io::format_double(r.objective_exact) << std::setw(22)
            << (r.objective_approx ? io::format_double(*r.objective_approx) : "-") << spins
            << (r.degenerate ? "  (degenerate)" : "") << "\n";
  }

  const fs::path out(opt.out_dir);
  io::write_file(out / "results.json", dump(doc));
  io::write_file(out / "summary.txt", summary.str());
  Json meta = metadata("optimize", std::chrono::duration<double>(
                                       std::chrono::steady_clock::now() - start).count());
  Json timings = Json::object();
  for (const auto& r : results) timings[std::string(algorithm_name(r.algorithm))] = r.elapsed_seconds;
  meta["algorithm_seconds"] = std::move(timings);
  io::write_file(out / "metadata.json", dump(meta));
  std::cout << summary.str();
  return kOk;
}

void write_samples(const Options& opt, const fs::path& path_stem, const EvalReport& report) {
  std::ostringstream samples;
  if (opt.format == "json") {
    io::write_samples_json(samples, report);
    io::write_file(path_stem.string() + ".json", samples.str());
  } else {
    io::write_samples_csv(samples, report);
    io::write_file(path_stem.string() + ".csv", samples.str());
  }
}

std::string report_table(const EvalReport& report) {
  std::ostringstream s;
  s << "M = " << report.config.scenario.num_links << ", drops = " << report.config.num_drops
    << ", frames = " << report.config.frames_per_drop << ", D mean = " << report.d_mean
    << ", D max = " << report.d_max << "\n";
  s << std::left << std::setw(18) << "algorithm" << std::setw(16) << "mean [Mbit/s]"
    << std::setw(16) << "pct [Mbit/s]" << "gain_pct\n";
  for (const auto& a : report.algorithms) {
    s << std::left << std::setw(18) << algorithm_name(a.algorithm) << std::setw(16)
      << std::setprecision(4) << a.mean_bps / 1e6 << std::setw(16) << a.percentile_bps / 1e6
      << (a.gain_percentile ? io::format_double(*a.gain_percentile) : "-") << "\n";
  }
  return s.str();
}

int cmd_evaluate(const Options& opt) {
  const auto config = load(opt);
  log(opt, "evaluating " + std::to_string(config.experiment.num_drops) + " drops");
  const EvalReport report = run_experiment(config.experiment, opt.threads);
  const fs::path out(opt.out_dir);
  write_samples(opt, out / "samples", report);
  io::write_file(out / "summary.json", dump(io::report_summary(report)));
  std::ostringstream plot;
  const double m = report.config.scenario.num_links;
  io::write_plot_csv(plot, "M", std::span<const double>(&m, 1), std::span<const EvalReport>(&report, 1));
  io::write_file(out / "plot.csv", plot.str());
  io::write_file(out / "metadata.json", dump(metadata("evaluate", report.elapsed_seconds)));
  std::cout << report_table(report);
  return kOk;
}

int cmd_sweep(const Options& opt) {
  const auto config = load(opt);
  if (!config.sweep) throw ConfigError("sweep: the configuration has no \"sweep\" section");
  const auto& spec = *config.sweep;
  const std::vector<EvalReport> reports =
      sweep(config.experiment, spec.parameter, spec.values, opt.threads);
  const fs::path out(opt.out_dir);
  Json points = Json::array();
  double seconds = 0.0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    points.push_back(Json{{sweep_parameter_name(spec.parameter), spec.values[i]},
                          {"report", io::report_summary(reports[i])}});
    seconds += reports[i].elapsed_seconds;
    std::cout << report_table(reports[i]);
  }
  const Json doc{{"schema", std::string(io::kSweepSchema)},
                 {"parameter", std::string(sweep_parameter_name(spec.parameter))},
                 {"config", io::config_to_json(config)},
                 {"points", std::move(points)}};
  io::write_file(out / "sweep.json", dump(doc));
  std::ostringstream plot;
  io::write_plot_csv(plot, sweep_parameter_name(spec.parameter), spec.values, reports);
  io::write_file(out / "plot.csv", plot.str());
  io::write_file(out / "metadata.json", dump(metadata("sweep", seconds)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interference-spin scheduling of interfering two-way links"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "JSON configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out_dir, "Output directory")->capture_default_str();
    sub->add_option("--seed", opt.seed, "Override the scenario and master seed");
    sub->add_option("--algorithms", opt.algorithms,
                    "Comma list of exhaustive,mst-dp,random,tree-brute-force");
    sub->add_option("--threads", opt.threads, "Worker threads (0 = hardware)")->capture_default_str();
    sub->add_option("--format", opt.format, "Per-sample output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_flag("-v,--verbose", opt.verbose, "Progress on stderr");
  };

  auto* generate = app.add_subcommand("generate", "Generate one random drop");
  auto* optimize = app.add_subcommand("optimize", "Optimize spins of one instance");
  auto* evaluate = app.add_subcommand("evaluate", "Monte-Carlo evaluation");
  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate a sweep over num_links or link_mix");
  for (auto* sub : {generate, optimize, evaluate, sweep_cmd}) add_common(sub);
  optimize->add_option("--instance", opt.instance_path, "Instance JSON (default: generate one)")
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) return cmd_generate(opt);
    if (*optimize) return cmd_optimize(opt);
    if (*evaluate) return cmd_evaluate(opt);
    if (*sweep_cmd) return cmd_sweep(opt);
  } catch (const ConfigError& e) {
    std::cerr << "spinsched: config error: " << e.what() << '\n';
    return kBadConfig;
  } catch (const OptimizerRefusal& e) {
    std::cerr << "spinsched: " << e.what() << '\n';
    return kRefused;
  } catch (const std::exception& e) {
    std::cerr << "spinsched: error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}
