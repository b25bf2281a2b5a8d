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

// Spin optimizers: exhaustive search, MST-DP (dynamic programming over the
// maximum relative-interference spanning tree), uniform random spins, and a
// brute-force solver of the tree-restricted objective used to check the DP.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spinsched/sinr.hpp"
#include "spinsched/topology.hpp"

namespace spinsched {

enum class Algorithm { Exhaustive, MstDp, Random, TreeBruteForce };

std::string_view algorithm_name(Algorithm a);
/// Accepts "exhaustive", "mst-dp" (or "mstdp"), "random", "tree-brute-force".
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// An optimizer declined an instance that exceeds one of its size limits.
class OptimizerRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OptimizerLimits {
  int exhaustive_max_links = 20;
  int max_children = 24;
  int tree_brute_force_max_edges = 20;
};

/// Message from a vertex to its parent: mu[i] is the best subtree value when
/// the relative spin towards the parent is i, and argmax[i] the child-edge
/// spins achieving it (bit j, counted from the most significant of
/// num_children bits, is the spin towards child j). Roots only fill index 0.
struct DpMessage {
  std::array<double, 2> mu{};
  std::array<std::uint32_t, 2> argmax{};
  int num_children = 0;

  std::uint8_t child_bit(int i, int j) const {
    return static_cast<std::uint8_t>((argmax[i] >> (num_children - 1 - j)) & 1U);
  }
};

struct OptimizationResult {
  Algorithm algorithm = Algorithm::MstDp;
  SpinAssignment spins;
  RelativeSpins relative;  // on every graph edge
  double objective_exact = 0.0;
  std::optional<double> objective_approx;  // tree-restricted objective, MST-DP / brute force
  // Every candidate scored -infinity; the all-zero configuration was returned.
  bool degenerate = false;
  double elapsed_seconds = 0.0;
};

/// Maximizes the exact network utility over all spin vectors, fixing the
/// spin of the smallest vertex of each component to 0. Ties resolve to the
/// lexicographically smallest spin vector.
OptimizationResult exhaustive_search(const GainTable& gains, const TopologyGraph& graph,
                                     UtilityKind kind, const OptimizerLimits& limits = {});

/// MST-DP. If `messages` is non-null it receives the per-vertex messages.
OptimizationResult mst_dp(const GainTable& gains, const TopologyGraph& graph,
                          const RootedTree& tree, UtilityKind kind,
                          const OptimizerLimits& limits = {},
                          std::vector<DpMessage>* messages = nullptr);

/// Independent fair spin per link.
OptimizationResult random_spins(const GainTable& gains, const TopologyGraph& graph,
                                UtilityKind kind, std::uint64_t seed);

/// Enumerates every relative-spin assignment on the tree edges against the
/// same approximate objective that mst_dp maximizes.
OptimizationResult tree_brute_force(const GainTable& gains, const TopologyGraph& graph,
                                    const RootedTree& tree, UtilityKind kind,
                                    const OptimizerLimits& limits = {});

}  // namespace spinsched
