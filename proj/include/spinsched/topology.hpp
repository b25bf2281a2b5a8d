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

// Interference topology graph over links, the maximum relative-interference
// spanning forest, and the algebra between absolute spins s and relative
// spins r_kl = s_k XOR s_l.

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "spinsched/channel.hpp"

namespace spinsched {

struct Edge {
  int k = 0;  // k < l
  int l = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

class TopologyGraph {
 public:
  struct Neighbor {
    int vertex;
    int edge;
  };

  TopologyGraph() = default;
  /// Edges are normalized to k < l and sorted lexicographically.
  TopologyGraph(int num_vertices, std::vector<Edge> edges);

  int num_vertices() const { return num_vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Neighbor>& neighbors(int v) const { return adjacency_[v]; }

  /// Index into edges(), if {a, b} is an edge.
  std::optional<int> find_edge(int a, int b) const;

  /// Connected components ordered by smallest vertex; vertices ascending.
  const std::vector<std::vector<int>>& components() const { return components_; }
  int component_of(int v) const { return component_of_[v]; }

 private:
  int num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<std::vector<int>> components_;
  std::vector<int> component_of_;
};

/// Spanning forest with one tree per connected component, each rooted at its
/// smallest vertex.
struct RootedTree {
  static constexpr int kNoParent = -1;

  std::vector<int> roots;
  std::vector<int> parent;                 // kNoParent for roots
  std::vector<int> parent_edge;            // graph edge index to the parent, -1 for roots
  std::vector<std::vector<int>> children;  // ascending vertex order
  std::vector<int> tree_edges;             // graph edge indices, ascending

  int num_vertices() const { return static_cast<int>(parent.size()); }
  /// D: the largest number of children of any vertex.
  int max_children() const;
  bool contains_edge(int graph_edge) const;
  /// Vertices with every child before its parent (leaves first, roots last).
  std::vector<int> bottom_up_order() const;
  double total_weight(const TopologyGraph& graph) const;
};

/// s_l in {0, 1}: 0 means L transmits in the odd slot.
struct SpinAssignment {
  std::vector<std::uint8_t> s;

  int size() const { return static_cast<int>(s.size()); }
  SpinAssignment flipped() const;
  friend bool operator==(const SpinAssignment&, const SpinAssignment&) = default;
};

/// Relative spins keyed by unordered vertex pair, so r_kl == r_lk holds by
/// construction.
class RelativeSpins {
 public:
  void set(int a, int b, std::uint8_t bit);
  std::optional<std::uint8_t> get(int a, int b) const;
  bool contains(int a, int b) const { return get(a, b).has_value(); }
  std::size_t size() const { return bits_.size(); }

  /// (k, l) with k < l, ascending.
  const std::map<std::pair<int, int>, std::uint8_t>& entries() const { return bits_; }

  friend bool operator==(const RelativeSpins&, const RelativeSpins&) = default;

 private:
  static std::pair<int, int> key(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }
  std::map<std::pair<int, int>, std::uint8_t> bits_;
};

/// Largest change in interference power that the relative spin of {k, l}
/// can cause, over both directions of influence.
double edge_weight(const GainTable& gains, int k, int l);

/// Edge {k, l} iff any of the eight INRs between the two links exceeds
/// `threshold`; each edge carries edge_weight().
TopologyGraph build_graph(const GainTable& gains, double threshold);

/// Kruskal on weights in descending order; equal weights prefer the
/// lexicographically smaller (k, l).
RootedTree maximum_spanning_tree(const TopologyGraph& graph);

/// Extends relative spins given on the tree edges to every graph edge so that
/// the XOR around each cycle is zero.
RelativeSpins complete_relative_spins(const TopologyGraph& graph, const RootedTree& tree,
                                      const RelativeSpins& tree_spins);

/// Propagates s_child = s_parent XOR r from each root with spin `root_spin`.
SpinAssignment spins_from_relative(const RootedTree& tree, const RelativeSpins& tree_spins,
                                   std::uint8_t root_spin);

/// r_kl = s_k XOR s_l on every graph edge.
RelativeSpins relative_from_spins(const TopologyGraph& graph, const SpinAssignment& spins);

}  // namespace spinsched
