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

// Exact and tree-restricted SINRs of two-way links and the utilities built on
// them.
//
// All SINR evaluation funnels through InterferenceRows so that every caller
// (optimizers, reports, tests) computes a given spin configuration with the
// same arithmetic.

#include <span>
#include <vector>

#include "spinsched/channel.hpp"
#include "spinsched/topology.hpp"

namespace spinsched {

enum class UtilityKind { TwoWaySumRate, ProportionalFairness };

/// LR: L transmits and R receives. RL: the reverse.
enum class Direction { LR = 0, RL = 1 };

struct LinkSinr {
  double lr = 0.0;
  double rl = 0.0;
};

/// log2(1 + sinr_lr) + log2(1 + sinr_rl), in bit/s/Hz.
double two_way_rate(LinkSinr sinr);

/// TwoWaySumRate: two_way_rate. ProportionalFairness: ln(two_way_rate), which
/// is -infinity when both SINRs are zero.
double link_utility(UtilityKind kind, LinkSinr sinr);

/// Receiver-major copy of the INR tensor.
///
/// For receiving link l and direction d, same(l, d)[k] is the INR that link k
/// causes when r_kl = 0 and flip(l, d)[k] the INR when r_kl = 1:
///   LR: same = INR_kl^{LR}, flip = INR_kl^{RR}
///   RL: same = INR_kl^{RL}, flip = INR_kl^{LL}
/// Entries for k == l, and for non-neighbors when built from a graph, are 0.
class InterferenceRows {
 public:
  /// Only pairs joined by an edge of `graph` interfere.
  InterferenceRows(const GainTable& gains, const TopologyGraph& graph);
  /// Every pair of distinct links interferes.
  explicit InterferenceRows(const GainTable& gains);

  int num_links() const { return m_; }
  std::span<const double> same(int l, Direction d) const { return row(same_, l, d); }
  std::span<const double> flip(int l, Direction d) const { return row(flip_, l, d); }

  /// SINRs of link l when link k is weighted by mask[k]: 0 and 1 are the two
  /// relative spins and 0.5 averages them.
  LinkSinr sinr(int l, std::span<const double> mask) const;

  /// mask[k] = s_k XOR s_l.
  static void spin_mask(const SpinAssignment& spins, int l, std::span<double> mask);

 private:
  std::span<const double> row(const std::vector<double>& v, int l, Direction d) const {
    return std::span<const double>(v).subspan(
        (static_cast<std::size_t>(l) * 2 + static_cast<std::size_t>(d)) *
            static_cast<std::size_t>(m_),
        static_cast<std::size_t>(m_));
  }
  void fill(const GainTable& gains, int l, int k);

  int m_ = 0;
  std::vector<double> snr_;  // [l][d]
  std::vector<double> same_;
  std::vector<double> flip_;
};

/// Sums per-link values component by component (components in graph order,
/// links ascending inside each), then adds the component totals. All network
/// objectives use this order so per-component maxima compose exactly.
double component_ordered_sum(const TopologyGraph& graph, std::span<const double> per_link);

/// SINR of link l with interference from its graph neighbors only.
/// Throws std::invalid_argument if r lacks the spin of an incident edge.
LinkSinr exact_sinr(const GainTable& gains, const TopologyGraph& graph, int l,
                    const RelativeSpins& r);

/// Like exact_sinr, but incident edges outside the tree contribute the mean of
/// their two possible INRs. `tree_r` must cover the tree edges at l.
LinkSinr approx_sinr(const GainTable& gains, const TopologyGraph& graph, const RootedTree& tree,
                     int l, const RelativeSpins& tree_r);

double network_utility(const GainTable& gains, const TopologyGraph& graph, UtilityKind kind,
                       const RelativeSpins& r);
double network_utility(const GainTable& gains, const TopologyGraph& graph, UtilityKind kind,
                       const SpinAssignment& spins);

/// Sum of approximate link utilities given relative spins on the tree edges.
double approx_network_utility(const GainTable& gains, const TopologyGraph& graph,
                              const RootedTree& tree, UtilityKind kind,
                              const RelativeSpins& tree_r);

/// Repeated evaluation against one graph; owns the rows and a scratch mask.
class UtilityEvaluator {
 public:
  UtilityEvaluator(const GainTable& gains, const TopologyGraph& graph, UtilityKind kind);

  const TopologyGraph& graph() const { return *graph_; }
  const InterferenceRows& rows() const { return rows_; }
  UtilityKind kind() const { return kind_; }

  double link(int l, const SpinAssignment& spins);
  double link_masked(int l, std::span<const double> mask) const;
  /// Σ over the links of one component, ascending.
  double component(int component, const SpinAssignment& spins);
  double total(const SpinAssignment& spins);

 private:
  const TopologyGraph* graph_;
  UtilityKind kind_;
  InterferenceRows rows_;
  std::vector<double> mask_;
};

}  // namespace spinsched
