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

#include "spinsched/sinr.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "spinsched/kernels.hpp"

namespace spinsched {

double two_way_rate(LinkSinr sinr) { return std::log2(1.0 + sinr.lr) + std::log2(1.0 + sinr.rl); }

double link_utility(UtilityKind kind, LinkSinr sinr) {
  const double rate = two_way_rate(sinr);
  if (kind == UtilityKind::TwoWaySumRate) return rate;
  return std::log(rate);
}

InterferenceRows::InterferenceRows(const GainTable& gains)
    : m_(gains.num_links()),
      snr_(static_cast<std::size_t>(m_) * 2),
      same_(static_cast<std::size_t>(m_) * static_cast<std::size_t>(m_) * 2, 0.0),
      flip_(same_.size(), 0.0) {
  for (int l = 0; l < m_; ++l) {
    snr_[2 * l] = gains.snr(l, End::L);
    snr_[2 * l + 1] = gains.snr(l, End::R);
    for (int k = 0; k < m_; ++k) {
      if (k != l) fill(gains, l, k);
    }
  }
}

InterferenceRows::InterferenceRows(const GainTable& gains, const TopologyGraph& graph)
    : m_(gains.num_links()),
      snr_(static_cast<std::size_t>(m_) * 2),
      same_(static_cast<std::size_t>(m_) * static_cast<std::size_t>(m_) * 2, 0.0),
      flip_(same_.size(), 0.0) {
  if (graph.num_vertices() != m_) {
    throw std::invalid_argument("InterferenceRows: graph and gains disagree on link count");
  }
  for (int l = 0; l < m_; ++l) {
    snr_[2 * l] = gains.snr(l, End::L);
    snr_[2 * l + 1] = gains.snr(l, End::R);
    for (const auto& n : graph.neighbors(l)) fill(gains, l, n.vertex);
  }
}

void InterferenceRows::fill(const GainTable& gains, int l, int k) {
  using enum End;
  const std::size_t m = static_cast<std::size_t>(m_);
  const std::size_t lr = (static_cast<std::size_t>(l) * 2) * m + static_cast<std::size_t>(k);
  const std::size_t rl = lr + m;
  same_[lr] = gains.inr(k, l, L, R);
  flip_[lr] = gains.inr(k, l, R, R);
  same_[rl] = gains.inr(k, l, R, L);
  flip_[rl] = gains.inr(k, l, L, L);
}

LinkSinr InterferenceRows::sinr(int l, std::span<const double> mask) const {
  const double i_lr = kernels::spin_weighted_sum(same(l, Direction::LR), flip(l, Direction::LR), mask);
  const double i_rl = kernels::spin_weighted_sum(same(l, Direction::RL), flip(l, Direction::RL), mask);
  return {snr_[2 * l] / (1.0 + i_lr), snr_[2 * l + 1] / (1.0 + i_rl)};
}

void InterferenceRows::spin_mask(const SpinAssignment& spins, int l, std::span<double> mask) {
  const std::uint8_t own = spins.s[l];
  for (std::size_t k = 0; k < mask.size(); ++k) mask[k] = static_cast<double>(spins.s[k] ^ own);
}

double component_ordered_sum(const TopologyGraph& graph, std::span<const double> per_link) {
  double total = 0.0;
  for (const auto& component : graph.components()) {
    double part = 0.0;
    for (int l : component) part += per_link[l];
    total += part;
  }
  return total;
}

namespace {

[[noreturn]] void missing_spin(int a, int b) {
  throw std::invalid_argument("missing relative spin for edge {" + std::to_string(std::min(a, b)) +
                              "," + std::to_string(std::max(a, b)) + "}");
}

// Mask for link l under relative spins r on the edges at l; non-tree edges get
// 0.5 when a tree is given.
std::vector<double> incident_mask(const TopologyGraph& graph, const RootedTree* tree, int l,
                                  const RelativeSpins& r) {
  std::vector<double> mask(static_cast<std::size_t>(graph.num_vertices()), 0.0);
  for (const auto& n : graph.neighbors(l)) {
    if (tree != nullptr && !tree->contains_edge(n.edge)) {
      mask[n.vertex] = 0.5;
      continue;
    }
    const auto bit = r.get(l, n.vertex);
    if (!bit) missing_spin(l, n.vertex);
    mask[n.vertex] = static_cast<double>(*bit);
  }
  return mask;
}

void check_link(const GainTable& gains, const TopologyGraph& graph, int l) {
  if (graph.num_vertices() != gains.num_links()) {
    throw std::invalid_argument("graph and gains disagree on link count");
  }
  if (l < 0 || l >= gains.num_links()) throw std::out_of_range("link index out of range");
}

// Rows for one receiver only; same layout and values as InterferenceRows.
LinkSinr single_link_sinr(const GainTable& gains, const TopologyGraph& graph, int l,
                          std::span<const double> mask) {
  using enum End;
  const std::size_t m = static_cast<std::size_t>(gains.num_links());
  std::vector<double> same_lr(m, 0.0), flip_lr(m, 0.0), same_rl(m, 0.0), flip_rl(m, 0.0);
  for (const auto& n : graph.neighbors(l)) {
    const int k = n.vertex;
    same_lr[k] = gains.inr(k, l, L, R);
    flip_lr[k] = gains.inr(k, l, R, R);
    same_rl[k] = gains.inr(k, l, R, L);
    flip_rl[k] = gains.inr(k, l, L, L);
  }
  return {gains.snr(l, L) / (1.0 + kernels::spin_weighted_sum(same_lr, flip_lr, mask)),
          gains.snr(l, R) / (1.0 + kernels::spin_weighted_sum(same_rl, flip_rl, mask))};
}

}  // namespace

LinkSinr exact_sinr(const GainTable& gains, const TopologyGraph& graph, int l,
                    const RelativeSpins& r) {
  check_link(gains, graph, l);
  return single_link_sinr(gains, graph, l, incident_mask(graph, nullptr, l, r));
}

LinkSinr approx_sinr(const GainTable& gains, const TopologyGraph& graph, const RootedTree& tree,
                     int l, const RelativeSpins& tree_r) {
  check_link(gains, graph, l);
  return single_link_sinr(gains, graph, l, incident_mask(graph, &tree, l, tree_r));
}

double network_utility(const GainTable& gains, const TopologyGraph& graph, UtilityKind kind,
                       const RelativeSpins& r) {
  const int m = gains.num_links();
  if (graph.num_vertices() != m) throw std::invalid_argument("graph and gains disagree on link count");
  const InterferenceRows rows(gains, graph);
  std::vector<double> per_link(static_cast<std::size_t>(m));
  for (int l = 0; l < m; ++l) {
    per_link[l] = link_utility(kind, rows.sinr(l, incident_mask(graph, nullptr, l, r)));
  }
  return component_ordered_sum(graph, per_link);
}

double network_utility(const GainTable& gains, const TopologyGraph& graph, UtilityKind kind,
                       const SpinAssignment& spins) {
  if (spins.size() != gains.num_links()) throw std::invalid_argument("spin vector length mismatch");
  UtilityEvaluator eval(gains, graph, kind);
  return eval.total(spins);
}

double approx_network_utility(const GainTable& gains, const TopologyGraph& graph,
                              const RootedTree& tree, UtilityKind kind,
                              const RelativeSpins& tree_r) {
  const int m = gains.num_links();
  if (graph.num_vertices() != m) throw std::invalid_argument("graph and gains disagree on link count");
  const InterferenceRows rows(gains, graph);
  std::vector<double> per_link(static_cast<std::size_t>(m));
  for (int l = 0; l < m; ++l) {
    per_link[l] = link_utility(kind, rows.sinr(l, incident_mask(graph, &tree, l, tree_r)));
  }
  return component_ordered_sum(graph, per_link);
}

UtilityEvaluator::UtilityEvaluator(const GainTable& gains, const TopologyGraph& graph,
                                   UtilityKind kind)
    : graph_(&graph),
      kind_(kind),
      rows_(gains, graph),
      mask_(static_cast<std::size_t>(gains.num_links())) {}

double UtilityEvaluator::link(int l, const SpinAssignment& spins) {
  InterferenceRows::spin_mask(spins, l, mask_);
  return link_utility(kind_, rows_.sinr(l, mask_));
}

double UtilityEvaluator::link_masked(int l, std::span<const double> mask) const {
  return link_utility(kind_, rows_.sinr(l, mask));
}

double UtilityEvaluator::component(int component, const SpinAssignment& spins) {
  double part = 0.0;
  for (int l : graph_->components()[component]) part += link(l, spins);
  return part;
}

double UtilityEvaluator::total(const SpinAssignment& spins) {
  double total = 0.0;
  for (int c = 0; c < static_cast<int>(graph_->components().size()); ++c) {
    total += component(c, spins);
  }
  return total;
}

}  // namespace spinsched
