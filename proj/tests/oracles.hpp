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

// Test-only reference computations. Everything here is written directly from
// the model definitions with plain loops and must not call into the
// library's SINR, kernel or optimizer code paths.

#include <cstdint>
#include <vector>

#include "spinsched/channel.hpp"
#include "spinsched/sinr.hpp"
#include "spinsched/topology.hpp"

namespace oracle {

using namespace spinsched;

/// SINR of link l given absolute spins; only graph neighbors interfere.
LinkSinr direct_sinr(const GainTable& gains, const TopologyGraph& graph, int l,
                     const std::vector<std::uint8_t>& s);

double direct_utility(UtilityKind kind, LinkSinr sinr);

double direct_network_utility(const GainTable& gains, const TopologyGraph& graph,
                              UtilityKind kind, const std::vector<std::uint8_t>& s);

struct BruteForceBest {
  double best = 0.0;
  double worst = 0.0;
  std::vector<std::uint8_t> argmax;
};

/// All 2^M absolute-spin vectors.
BruteForceBest all_assignments(const GainTable& gains, const TopologyGraph& graph,
                               UtilityKind kind);

/// Maximum total weight over every spanning forest with one tree per
/// component (subset enumeration).
double max_spanning_weight(const TopologyGraph& graph);

/// Every simple cycle, each as a list of graph edge indices.
std::vector<std::vector<int>> simple_cycles(const TopologyGraph& graph);

/// Random instance from the default scenario with the given size and mix.
LinkInstance random_instance(std::uint64_t seed, int num_links, double link_mix);

/// Instance with the given INR/SNR filled by hand; all others zero.
LinkInstance blank_instance(int num_links, double snr = 100.0);

}  // namespace oracle
