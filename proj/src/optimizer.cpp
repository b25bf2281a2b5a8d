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

#include "spinsched/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include "spinsched/random.hpp"

namespace spinsched {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_sizes(const GainTable& gains, const TopologyGraph& graph) {
  if (graph.num_vertices() != gains.num_links()) {
    throw std::invalid_argument("graph and gains disagree on link count");
  }
}

void finish(OptimizationResult& result, const TopologyGraph& graph, UtilityEvaluator& eval) {
  result.relative = relative_from_spins(graph, result.spins);
  result.objective_exact = eval.total(result.spins);
}

// Approximate-utility mask for link v: 0.5 on non-tree neighbors, zero
// elsewhere. Tree neighbors are filled by the caller.
std::vector<double> base_mask(const TopologyGraph& graph, const RootedTree& tree, int v) {
  std::vector<double> mask(static_cast<std::size_t>(graph.num_vertices()), 0.0);
  for (const auto& n : graph.neighbors(v)) {
    if (!tree.contains_edge(n.edge)) mask[n.vertex] = 0.5;
  }
  return mask;
}

}  // namespace

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Exhaustive:
      return "exhaustive";
    case Algorithm::MstDp:
      return "mst-dp";
    case Algorithm::Random:
      return "random";
    case Algorithm::TreeBruteForce:
      return "tree-brute-force";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "exhaustive") return Algorithm::Exhaustive;
  if (name == "mst-dp" || name == "mstdp") return Algorithm::MstDp;
  if (name == "random") return Algorithm::Random;
  if (name == "tree-brute-force") return Algorithm::TreeBruteForce;
  return std::nullopt;
}

OptimizationResult exhaustive_search(const GainTable& gains, const TopologyGraph& graph,
                                     UtilityKind kind, const OptimizerLimits& limits) {
  check_sizes(gains, graph);
  const int m = graph.num_vertices();
  if (m > limits.exhaustive_max_links) {
    throw OptimizerRefusal("exhaustive search refused: M = " + std::to_string(m) +
                           " exceeds the cap of " + std::to_string(limits.exhaustive_max_links));
  }
  const auto start = Clock::now();
  UtilityEvaluator eval(gains, graph, kind);
  OptimizationResult result;
  result.algorithm = Algorithm::Exhaustive;
  result.spins.s.assign(static_cast<std::size_t>(m), 0);

  // Utility of link l depends only on spins inside its component, so each
  // component is searched on its own with its smallest vertex pinned to 0.
  SpinAssignment work = result.spins;
  for (int c = 0; c < static_cast<int>(graph.components().size()); ++c) {
    const auto& members = graph.components()[c];
    const int free = static_cast<int>(members.size()) - 1;
    double best = kNegInf;
    std::uint64_t best_pattern = 0;
    for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << free); ++pattern) {
      for (int j = 0; j < free; ++j) {
        work.s[members[j + 1]] = static_cast<std::uint8_t>((pattern >> (free - 1 - j)) & 1U);
      }
      const double value = eval.component(c, work);
      if (value > best) {
        best = value;
        best_pattern = pattern;
      }
    }
    if (best == kNegInf) result.degenerate = true;
    for (int j = 0; j < free; ++j) {
      const auto bit = static_cast<std::uint8_t>((best_pattern >> (free - 1 - j)) & 1U);
      work.s[members[j + 1]] = bit;
      result.spins.s[members[j + 1]] = bit;
    }
  }
  finish(result, graph, eval);
  result.elapsed_seconds = seconds_since(start);
  return result;
}

OptimizationResult mst_dp(const GainTable& gains, const TopologyGraph& graph,
                          const RootedTree& tree, UtilityKind kind,
                          const OptimizerLimits& limits, std::vector<DpMessage>* messages) {
  check_sizes(gains, graph);
  const int m = graph.num_vertices();
  if (tree.num_vertices() != m) throw std::invalid_argument("tree and graph disagree on size");
  const int d = tree.max_children();
  if (d > limits.max_children || d > 31) {
    throw OptimizerRefusal("MST-DP refused: a vertex has " + std::to_string(d) +
                           " children, above the cap of " + std::to_string(limits.max_children));
  }
  const auto start = Clock::now();
  UtilityEvaluator eval(gains, graph, kind);
  std::vector<DpMessage> msg(static_cast<std::size_t>(m));

  for (int v : tree.bottom_up_order()) {
    const auto& children = tree.children[v];
    const int n = static_cast<int>(children.size());
    const int parent = tree.parent[v];
    std::vector<double> mask = base_mask(graph, tree, v);
    DpMessage& out = msg[v];
    out.num_children = n;
    const int parent_options = parent == RootedTree::kNoParent ? 1 : 2;
    for (int i = 0; i < parent_options; ++i) {
      if (parent != RootedTree::kNoParent) mask[parent] = static_cast<double>(i);
      double best = kNegInf;
      std::uint32_t best_combo = 0;
      for (std::uint32_t combo = 0; combo < (std::uint32_t{1} << n); ++combo) {
        double children_value = 0.0;
        for (int j = 0; j < n; ++j) {
          const unsigned bit = (combo >> (n - 1 - j)) & 1U;
          mask[children[j]] = static_cast<double>(bit);
          children_value += msg[children[j]].mu[bit];
        }
        const double value = eval.link_masked(v, mask) + children_value;
        if (value > best) {
          best = value;
          best_combo = combo;
        }
      }
      out.mu[i] = best;
      out.argmax[i] = best_combo;
    }
    if (parent_options == 1) {
      out.mu[1] = out.mu[0];
      out.argmax[1] = out.argmax[0];
    }
  }

  OptimizationResult result;
  result.algorithm = Algorithm::MstDp;
  double approx = 0.0;
  RelativeSpins tree_r;
  for (int root : tree.roots) {
    approx += msg[root].mu[0];
    if (msg[root].mu[0] == kNegInf) result.degenerate = true;
    // Top-down: each vertex applies the argmax for the spin its parent chose.
    std::vector<std::pair<int, int>> queue{{root, 0}};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const auto [v, i] = queue[head];
      const auto& children = tree.children[v];
      for (int j = 0; j < static_cast<int>(children.size()); ++j) {
        const std::uint8_t bit = msg[v].child_bit(i, j);
        tree_r.set(v, children[j], bit);
        queue.emplace_back(children[j], bit);
      }
    }
  }
  result.objective_approx = approx;
  result.spins = spins_from_relative(tree, tree_r, 0);
  finish(result, graph, eval);
  result.elapsed_seconds = seconds_since(start);
  if (messages != nullptr) *messages = std::move(msg);
  return result;
}

OptimizationResult random_spins(const GainTable& gains, const TopologyGraph& graph,
                                UtilityKind kind, std::uint64_t seed) {
  check_sizes(gains, graph);
  const auto start = Clock::now();
  Rng rng = make_rng(seed);
  std::uniform_int_distribution<int> coin(0, 1);
  OptimizationResult result;
  result.algorithm = Algorithm::Random;
  result.spins.s.resize(static_cast<std::size_t>(graph.num_vertices()));
  for (auto& b : result.spins.s) b = static_cast<std::uint8_t>(coin(rng));
  UtilityEvaluator eval(gains, graph, kind);
  finish(result, graph, eval);
  result.elapsed_seconds = seconds_since(start);
  return result;
}

OptimizationResult tree_brute_force(const GainTable& gains, const TopologyGraph& graph,
                                    const RootedTree& tree, UtilityKind kind,
                                    const OptimizerLimits& limits) {
  check_sizes(gains, graph);
  const int m = graph.num_vertices();
  const int n = static_cast<int>(tree.tree_edges.size());
  if (n > limits.tree_brute_force_max_edges) {
    throw OptimizerRefusal("tree brute force refused: " + std::to_string(n) +
                           " tree edges exceed the cap of " +
                           std::to_string(limits.tree_brute_force_max_edges));
  }
  const auto start = Clock::now();
  UtilityEvaluator eval(gains, graph, kind);
  std::vector<std::vector<double>> masks;
  masks.reserve(static_cast<std::size_t>(m));
  for (int v = 0; v < m; ++v) masks.push_back(base_mask(graph, tree, v));
  std::vector<double> per_link(static_cast<std::size_t>(m));

  double best = kNegInf;
  std::uint64_t best_pattern = 0;
  for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << n); ++pattern) {
    for (int j = 0; j < n; ++j) {
      const Edge& e = graph.edges()[tree.tree_edges[j]];
      const double bit = static_cast<double>((pattern >> (n - 1 - j)) & 1U);
      masks[e.k][e.l] = bit;
      masks[e.l][e.k] = bit;
    }
    for (int v = 0; v < m; ++v) per_link[v] = eval.link_masked(v, masks[v]);
    const double value = component_ordered_sum(graph, per_link);
    if (value > best) {
      best = value;
      best_pattern = pattern;
    }
  }

  OptimizationResult result;
  result.algorithm = Algorithm::TreeBruteForce;
  result.degenerate = best == kNegInf;
  result.objective_approx = best;
  RelativeSpins tree_r;
  for (int j = 0; j < n; ++j) {
    const Edge& e = graph.edges()[tree.tree_edges[j]];
    tree_r.set(e.k, e.l, static_cast<std::uint8_t>((best_pattern >> (n - 1 - j)) & 1U));
  }
  result.spins = spins_from_relative(tree, tree_r, 0);
  finish(result, graph, eval);
  result.elapsed_seconds = seconds_since(start);
  return result;
}

}  // namespace spinsched
