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

#include "spinsched/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace spinsched::io {

namespace {

// Reads one JSON object, tracking which keys were consumed so that leftovers
// can be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const Json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(where() + ": expected an object");
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  const Json& child(const std::string& key) {
    seen_.insert(key);
    return obj_.at(key);
  }

  std::string child_path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void number(const std::string& key, double& out) {
    if (!has(key)) return;
    const Json& v = child(key);
    if (!v.is_number()) throw ConfigError(child_path(key) + ": expected a number");
    out = v.get<double>();
  }

  void integer(const std::string& key, int& out) {
    if (!has(key)) return;
    const Json& v = child(key);
    if (!v.is_number_integer()) throw ConfigError(child_path(key) + ": expected an integer");
    const auto value = v.get<long long>();
    if (value < std::numeric_limits<int>::min() || value > std::numeric_limits<int>::max()) {
      throw ConfigError(child_path(key) + ": out of range");
    }
    out = static_cast<int>(value);
  }

  void unsigned64(const std::string& key, std::uint64_t& out) {
    if (!has(key)) return;
    const Json& v = child(key);
    if (v.is_number_unsigned()) {
      out = v.get<std::uint64_t>();
    } else if (v.is_number_integer() && v.get<long long>() >= 0) {
      out = static_cast<std::uint64_t>(v.get<long long>());
    } else {
      throw ConfigError(child_path(key) + ": expected a non-negative integer");
    }
  }

  std::optional<std::string> string(const std::string& key) {
    if (!has(key)) return std::nullopt;
    const Json& v = child(key);
    if (!v.is_string()) throw ConfigError(child_path(key) + ": expected a string");
    return v.get<std::string>();
  }

  void finish() const {
    for (const auto& [key, _] : obj_.items()) {
      if (!seen_.count(key)) throw ConfigError(child_path(key) + ": unknown key");
    }
  }

 private:
  std::string where() const { return path_.empty() ? "config" : path_; }

  const Json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

std::string_view kind_name(LinkKind k) { return k == LinkKind::Symmetric ? "symmetric" : "asymmetric"; }

std::string_view utility_name(UtilityKind k) {
  return k == UtilityKind::TwoWaySumRate ? "sum_rate" : "proportional_fairness";
}

std::string_view fading_name(FadingModel f) { return f == FadingModel::Rayleigh ? "rayleigh" : "none"; }

ScenarioConfig parse_scenario(const Json& j) {
  ScenarioConfig s;
  ObjectReader r(j, "scenario");
  r.number("area_side", s.area_side);
  r.integer("num_links", s.num_links);
  r.number("link_mix", s.link_mix);
  r.number("d_sym", s.d_sym);
  r.number("d_asym", s.d_asym);
  r.number("snr_sym_db", s.snr_sym_db);
  r.number("snr_asym_lr_db", s.snr_asym_lr_db);
  r.number("snr_asym_rl_db", s.snr_asym_rl_db);
  r.number("shadow_sigma_db", s.shadow_sigma_db);
  r.number("pathloss_exp", s.pathloss_exp);
  r.number("inr_edge_threshold", s.inr_edge_threshold);
  r.number("min_distance", s.min_distance);
  r.unsigned64("seed", s.seed);
  r.finish();
  s.validate();
  return s;
}

void parse_experiment(const Json& j, ExperimentConfig& e) {
  ObjectReader r(j, "experiment");
  if (r.has("algorithms")) {
    const Json& list = r.child("algorithms");
    if (!list.is_array()) throw ConfigError("experiment.algorithms: expected an array of names");
    e.algorithms.clear();
    for (const Json& item : list) {
      const auto a = item.is_string() ? parse_algorithm(item.get<std::string>()) : std::nullopt;
      if (!a) throw ConfigError("experiment.algorithms: unknown algorithm " + item.dump());
      e.algorithms.push_back(*a);
    }
  }
  r.integer("num_drops", e.num_drops);
  r.integer("frames_per_drop", e.frames_per_drop);
  if (auto u = r.string("utility")) {
    if (*u == "sum_rate") {
      e.utility = UtilityKind::TwoWaySumRate;
    } else if (*u == "proportional_fairness") {
      e.utility = UtilityKind::ProportionalFairness;
    } else {
      throw ConfigError("experiment.utility: expected \"sum_rate\" or \"proportional_fairness\"");
    }
  }
  r.number("bandwidth_hz", e.bandwidth_hz);
  r.number("percentile", e.percentile);
  r.unsigned64("master_seed", e.master_seed);
  if (auto f = r.string("fading")) {
    if (*f == "rayleigh") {
      e.fading = FadingModel::Rayleigh;
    } else if (*f == "none") {
      e.fading = FadingModel::None;
    } else {
      throw ConfigError("experiment.fading: expected \"rayleigh\" or \"none\"");
    }
  }
  r.integer("exhaustive_cap", e.limits.exhaustive_max_links);
  r.integer("max_children", e.limits.max_children);
  r.finish();
}

SweepSpec parse_sweep(const Json& j) {
  SweepSpec s;
  ObjectReader r(j, "sweep");
  if (auto p = r.string("parameter")) {
    auto parsed = parse_sweep_parameter(*p);
    if (!parsed) throw ConfigError("sweep.parameter: expected \"num_links\" or \"link_mix\"");
    s.parameter = *parsed;
  }
  if (!r.has("values")) throw ConfigError("sweep.values: required");
  const Json& values = r.child("values");
  if (!values.is_array() || values.empty()) throw ConfigError("sweep.values: expected a non-empty array");
  for (const Json& v : values) {
    if (!v.is_number()) throw ConfigError("sweep.values: expected numbers");
    s.values.push_back(v.get<double>());
  }
  r.finish();
  return s;
}

Json points_json(Point p) { return Json::array({p.x, p.y}); }

Point point_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ConfigError("instance.positions: expected [x, y]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

Json tensor_json(const GainTable& layout, const std::vector<double>& values) {
  const int m = layout.num_links();
  Json out = Json::array();
  for (int l = 0; l < m; ++l) {
    Json row = Json::array();
    for (int k = 0; k < m; ++k) {
      Json block = Json::array();
      for (End x : {End::L, End::R}) {
        Json pair = Json::array();
        for (End y : {End::L, End::R}) pair.push_back(values[layout.inr_index(l, k, x, y)]);
        block.push_back(std::move(pair));
      }
      row.push_back(std::move(block));
    }
    out.push_back(std::move(row));
  }
  return out;
}

void tensor_from(const Json& j, const GainTable& layout, std::vector<double>& values,
                 const char* name) {
  const int m = layout.num_links();
  auto bad = [&] { return ConfigError(std::string("instance.") + name + ": expected an M x M x 2 x 2 array"); };
  if (!j.is_array() || static_cast<int>(j.size()) != m) throw bad();
  for (int l = 0; l < m; ++l) {
    if (!j[l].is_array() || static_cast<int>(j[l].size()) != m) throw bad();
    for (int k = 0; k < m; ++k) {
      const Json& block = j[l][k];
      if (!block.is_array() || block.size() != 2) throw bad();
      for (End x : {End::L, End::R}) {
        const Json& pair = block[static_cast<int>(x)];
        if (!pair.is_array() || pair.size() != 2) throw bad();
        for (End y : {End::L, End::R}) {
          const Json& v = pair[static_cast<int>(y)];
          if (!v.is_number()) throw bad();
          values[layout.inr_index(l, k, x, y)] = v.get<double>();
        }
      }
    }
  }
}

void check_schema(const Json& doc, std::string_view expected) {
  if (!doc.is_object() || !doc.contains("schema") || !doc["schema"].is_string()) {
    throw ConfigError("schema: missing; expected \"" + std::string(expected) + "\"");
  }
  if (doc["schema"].get<std::string>() != expected) {
    throw ConfigError("schema: unsupported \"" + doc["schema"].get<std::string>() +
                      "\"; expected \"" + std::string(expected) + "\"");
  }
}

Json optional_number(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

Json finite_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

RunConfig parse_config(const Json& doc) {
  check_schema(doc, kConfigSchema);
  RunConfig config;
  ObjectReader r(doc, "");
  r.child("schema");
  if (r.has("scenario")) config.experiment.scenario = parse_scenario(r.child("scenario"));
  if (r.has("experiment")) parse_experiment(r.child("experiment"), config.experiment);
  if (r.has("sweep")) config.sweep = parse_sweep(r.child("sweep"));
  r.finish();
  config.experiment.validate();
  return config;
}

RunConfig load_config(const std::filesystem::path& path) { return parse_config(read_json_file(path)); }

Json scenario_to_json(const ScenarioConfig& s) {
  return Json{{"area_side", s.area_side},
              {"num_links", s.num_links},
              {"link_mix", s.link_mix},
              {"d_sym", s.d_sym},
              {"d_asym", s.d_asym},
              {"snr_sym_db", s.snr_sym_db},
              {"snr_asym_lr_db", s.snr_asym_lr_db},
              {"snr_asym_rl_db", s.snr_asym_rl_db},
              {"shadow_sigma_db", s.shadow_sigma_db},
              {"pathloss_exp", s.pathloss_exp},
              {"inr_edge_threshold", s.inr_edge_threshold},
              {"min_distance", s.min_distance},
              {"seed", s.seed}};
}

Json experiment_to_json(const ExperimentConfig& e) {
  Json algorithms = Json::array();
  for (Algorithm a : e.algorithms) algorithms.push_back(std::string(algorithm_name(a)));
  return Json{{"algorithms", std::move(algorithms)},
              {"num_drops", e.num_drops},
              {"frames_per_drop", e.frames_per_drop},
              {"utility", std::string(utility_name(e.utility))},
              {"bandwidth_hz", e.bandwidth_hz},
              {"percentile", e.percentile},
              {"master_seed", e.master_seed},
              {"fading", std::string(fading_name(e.fading))},
              {"exhaustive_cap", e.limits.exhaustive_max_links},
              {"max_children", e.limits.max_children}};
}

Json config_to_json(const RunConfig& config) {
  Json out{{"schema", std::string(kConfigSchema)},
           {"scenario", scenario_to_json(config.experiment.scenario)},
           {"experiment", experiment_to_json(config.experiment)}};
  if (config.sweep) {
    out["sweep"] = Json{{"parameter", std::string(sweep_parameter_name(config.sweep->parameter))},
                        {"values", config.sweep->values}};
  }
  return out;
}

Json instance_to_json(const LinkInstance& inst) {
  const int m = inst.num_links();
  Json positions = Json::array(), kinds = Json::array(), snr = Json::array();
  for (int l = 0; l < m; ++l) {
    positions.push_back(Json::array({points_json(inst.position(l, End::L)),
                                     points_json(inst.position(l, End::R))}));
    kinds.push_back(std::string(kind_name(inst.kinds[l])));
    snr.push_back(Json::array({inst.gains.snr(l, End::L), inst.gains.snr(l, End::R)}));
  }
  std::vector<double> inr(inst.gains.inr_values().begin(), inst.gains.inr_values().end());
  return Json{{"schema", std::string(kInstanceSchema)},
              {"num_links", m},
              {"seed", inst.seed},
              {"positions", std::move(positions)},
              {"kinds", std::move(kinds)},
              {"snr", std::move(snr)},
              {"inr", tensor_json(inst.gains, inr)},
              {"direct_shadowing", inst.direct_shadowing},
              {"shadowing", tensor_json(inst.gains, inst.shadowing)}};
}

LinkInstance instance_from_json(const Json& doc) {
  check_schema(doc, kInstanceSchema);
  if (!doc.contains("num_links") || !doc["num_links"].is_number_integer()) {
    throw ConfigError("instance.num_links: expected an integer");
  }
  const int m = doc["num_links"].get<int>();
  if (m < 1) throw ConfigError("instance.num_links: must be >= 1");
  LinkInstance inst(m);
  if (doc.contains("seed")) inst.seed = doc["seed"].get<std::uint64_t>();

  auto array_of = [&](const char* key) -> const Json& {
    if (!doc.contains(key) || !doc[key].is_array() || static_cast<int>(doc[key].size()) != m) {
      throw ConfigError(std::string("instance.") + key + ": expected an array of length num_links");
    }
    return doc[key];
  };
  const Json& positions = array_of("positions");
  const Json& kinds = array_of("kinds");
  const Json& snr = array_of("snr");
  for (int l = 0; l < m; ++l) {
    if (!positions[l].is_array() || positions[l].size() != 2) {
      throw ConfigError("instance.positions: expected [[xL, yL], [xR, yR]] per link");
    }
    inst.position(l, End::L) = point_from(positions[l][0]);
    inst.position(l, End::R) = point_from(positions[l][1]);
    const std::string kind = kinds[l].is_string() ? kinds[l].get<std::string>() : "";
    if (kind == "symmetric") {
      inst.kinds[l] = LinkKind::Symmetric;
    } else if (kind == "asymmetric") {
      inst.kinds[l] = LinkKind::Asymmetric;
    } else {
      throw ConfigError("instance.kinds: expected \"symmetric\" or \"asymmetric\"");
    }
    if (!snr[l].is_array() || snr[l].size() != 2) throw ConfigError("instance.snr: expected [lr, rl] per link");
    inst.gains.set_snr(l, End::L, snr[l][0].get<double>());
    inst.gains.set_snr(l, End::R, snr[l][1].get<double>());
  }
  std::vector<double> inr(inst.gains.inr_values().size(), 0.0);
  tensor_from(doc.at("inr"), inst.gains, inr, "inr");
  for (int l = 0; l < m; ++l) {
    for (int k = 0; k < m; ++k) {
      if (l == k) continue;
      for (End x : {End::L, End::R}) {
        for (End y : {End::L, End::R}) {
          const double v = inr[inst.gains.inr_index(l, k, x, y)];
          if (!(v >= 0)) throw ConfigError("instance.inr: values must be >= 0");
          inst.gains.set_inr(l, k, x, y, v);
        }
      }
    }
  }
  for (int l = 0; l < m; ++l) {
    if (!(inst.gains.snr(l, End::L) >= 0 && inst.gains.snr(l, End::R) >= 0)) {
      throw ConfigError("instance.snr: values must be >= 0");
    }
  }
  if (doc.contains("direct_shadowing")) {
    inst.direct_shadowing = doc["direct_shadowing"].get<std::vector<double>>();
    if (static_cast<int>(inst.direct_shadowing.size()) != m) {
      throw ConfigError("instance.direct_shadowing: expected an array of length num_links");
    }
  }
  if (doc.contains("shadowing")) tensor_from(doc["shadowing"], inst.gains, inst.shadowing, "shadowing");
  return inst;
}

Json topology_to_json(const TopologyGraph& graph, const RootedTree& tree) {
  Json edges = Json::array();
  for (int e = 0; e < static_cast<int>(graph.edges().size()); ++e) {
    const Edge& edge = graph.edges()[e];
    edges.push_back(Json{{"k", edge.k}, {"l", edge.l}, {"weight", edge.weight},
                         {"in_tree", tree.contains_edge(e)}});
  }
  Json children = Json::array();
  for (const auto& c : tree.children) children.push_back(c);
  return Json{{"schema", std::string(kTopologySchema)},
              {"num_vertices", graph.num_vertices()},
              {"edges", std::move(edges)},
              {"roots", tree.roots},
              {"parent", tree.parent},
              {"children", std::move(children)},
              {"max_children", tree.max_children()},
              {"tree_weight", tree.total_weight(graph)}};
}

void write_edge_list(std::ostream& out, const TopologyGraph& graph, const RootedTree& tree) {
  out << "# vertices " << graph.num_vertices() << " edges " << graph.edges().size() << "\n";
  out << "# k l weight in_tree\n";
  for (int e = 0; e < static_cast<int>(graph.edges().size()); ++e) {
    const Edge& edge = graph.edges()[e];
    out << edge.k << ' ' << edge.l << ' ' << format_double(edge.weight) << ' '
        << (tree.contains_edge(e) ? 1 : 0) << '\n';
  }
}

Json result_to_json(const OptimizationResult& result) {
  Json relative = Json::array();
  for (const auto& [key, bit] : result.relative.entries()) {
    relative.push_back(Json{{"k", key.first}, {"l", key.second}, {"r", bit}});
  }
  std::vector<int> spins(result.spins.s.begin(), result.spins.s.end());
  return Json{{"schema", std::string(kResultSchema)},
              {"algorithm", std::string(algorithm_name(result.algorithm))},
              {"spins", spins},
              {"relative", std::move(relative)},
              {"objective_exact", finite_or_null(result.objective_exact)},
              {"objective_approx", optional_number(result.objective_approx)},
              {"degenerate", result.degenerate}};
}

Json report_summary(const EvalReport& report) {
  Json algorithms = Json::array();
  for (const AlgorithmStats& s : report.algorithms) {
    double objective_sum = 0.0;
    for (double v : s.objective_exact) objective_sum += v;
    algorithms.push_back(Json{
        {"algorithm", std::string(algorithm_name(s.algorithm))},
        {"samples", s.samples_bps.size()},
        {"mean_bps", s.mean_bps},
        {"percentile_bps", s.percentile_bps},
        {"gain_percentile", optional_number(s.gain_percentile)},
        {"gain_mean", optional_number(s.gain_mean)},
        {"mean_objective_exact",
         finite_or_null(objective_sum / static_cast<double>(s.objective_exact.size()))},
        {"degenerate_drops", s.degenerate_drops}});
  }
  double edge_mean = 0.0;
  for (int e : report.num_edges) edge_mean += e;
  edge_mean /= static_cast<double>(report.num_edges.size());
  RunConfig echo{report.config, std::nullopt};
  return Json{{"schema", std::string(kReportSchema)},
              {"master_seed", report.config.master_seed},
              {"config", config_to_json(echo)},
              {"pooling", "all links x frames x drops"},
              {"quantile", "lower empirical (index ceil(q*n)-1)"},
              {"edge_threshold_linear", report.config.scenario.inr_edge_threshold},
              {"sample_count", report.expected_sample_count()},
              {"algorithms", std::move(algorithms)},
              {"max_children", Json{{"max", report.d_max},
                                    {"mean", report.d_mean},
                                    {"per_drop", report.max_children}}},
              {"graph_edges_mean", edge_mean}};
}

void write_samples_csv(std::ostream& out, const EvalReport& report) {
  out << "algorithm,M,drop,frame,link,rate_bps\n";
  const int frames = report.config.frames_per_drop;
  for (const AlgorithmStats& s : report.algorithms) {
    const std::string name(algorithm_name(s.algorithm));
    std::size_t i = 0;
    for (std::size_t d = 0; d < report.links_per_drop.size(); ++d) {
      const int m = report.links_per_drop[d];
      for (int f = 0; f < frames; ++f) {
        for (int l = 0; l < m; ++l) {
          out << name << ',' << m << ',' << d << ',' << f << ',' << l << ','
              << format_double(s.samples_bps[i++]) << '\n';
        }
      }
    }
  }
}

void write_samples_json(std::ostream& out, const EvalReport& report) {
  Json doc{{"schema", "spinsched.samples/1"},
           {"layout", "per algorithm: rate_bps ordered drop, frame, link"},
           {"links_per_drop", report.links_per_drop},
           {"frames_per_drop", report.config.frames_per_drop}};
  Json algorithms = Json::array();
  for (const AlgorithmStats& s : report.algorithms) {
    algorithms.push_back(Json{{"algorithm", std::string(algorithm_name(s.algorithm))},
                              {"rate_bps", s.samples_bps}});
  }
  doc["algorithms"] = std::move(algorithms);
  out << doc.dump(1) << '\n';
}

void write_plot_csv(std::ostream& out, std::string_view x_name, std::span<const double> x_values,
                    std::span<const EvalReport> reports) {
  out << x_name << ",algorithm,mean_bps,percentile_bps,gain_percentile,gain_mean\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    for (const AlgorithmStats& s : reports[i].algorithms) {
      out << format_double(x_values[i]) << ',' << algorithm_name(s.algorithm) << ','
          << format_double(s.mean_bps) << ',' << format_double(s.percentile_bps) << ','
          << (s.gain_percentile ? format_double(*s.gain_percentile) : "") << ','
          << (s.gain_mean ? format_double(*s.gain_mean) : "") << '\n';
    }
  }
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path.string() + ": invalid JSON: " + e.what());
  }
}

}  // namespace spinsched::io
