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

#include "spinsched/topology.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace spinsched {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)), rank_(parent_.size(), 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
};

void check_vertex(int v, int n, const char* what) {
  if (v < 0 || v >= n) throw std::out_of_range(std::string(what) + ": vertex out of range");
}

}  // namespace

TopologyGraph::TopologyGraph(int num_vertices, std::vector<Edge> edges)
    : num_vertices_(num_vertices),
      edges_(std::move(edges)),
      adjacency_(static_cast<std::size_t>(num_vertices)),
      component_of_(static_cast<std::size_t>(num_vertices), -1) {
  for (Edge& e : edges_) {
    check_vertex(e.k, num_vertices, "TopologyGraph");
    check_vertex(e.l, num_vertices, "TopologyGraph");
    if (e.k == e.l) throw std::invalid_argument("TopologyGraph: self-loop");
    if (!(e.weight >= 0)) throw std::invalid_argument("TopologyGraph: negative or NaN weight");
    if (e.k > e.l) std::swap(e.k, e.l);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.k, a.l) < std::tie(b.k, b.l); });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].k == edges_[i - 1].k && edges_[i].l == edges_[i - 1].l) {
      throw std::invalid_argument("TopologyGraph: duplicate edge");
    }
  }
  for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
    adjacency_[edges_[i].k].push_back({edges_[i].l, i});
    adjacency_[edges_[i].l].push_back({edges_[i].k, i});
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }

  for (int start = 0; start < num_vertices; ++start) {
    if (component_of_[start] >= 0) continue;
    const int id = static_cast<int>(components_.size());
    std::vector<int> members{start};
    component_of_[start] = id;
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (const Neighbor& n : adjacency_[members[head]]) {
        if (component_of_[n.vertex] < 0) {
          component_of_[n.vertex] = id;
          members.push_back(n.vertex);
        }
      }
    }
    std::sort(members.begin(), members.end());
    components_.push_back(std::move(members));
  }
}

std::optional<int> TopologyGraph::find_edge(int a, int b) const {
  if (a < 0 || b < 0 || a >= num_vertices_ || b >= num_vertices_) return std::nullopt;
  const auto& adj = adjacency_[a];
  auto it = std::lower_bound(adj.begin(), adj.end(), b,
                             [](const Neighbor& n, int v) { return n.vertex < v; });
  if (it == adj.end() || it->vertex != b) return std::nullopt;
  return it->edge;
}

int RootedTree::max_children() const {
  std::size_t d = 0;
  for (const auto& c : children) d = std::max(d, c.size());
  return static_cast<int>(d);
}

bool RootedTree::contains_edge(int graph_edge) const {
  return std::binary_search(tree_edges.begin(), tree_edges.end(), graph_edge);
}

std::vector<int> RootedTree::bottom_up_order() const {
  std::vector<int> order;
  order.reserve(parent.size());
  for (int r : roots) {
    const std::size_t begin = order.size();
    order.push_back(r);
    for (std::size_t head = begin; head < order.size(); ++head) {
      for (int c : children[order[head]]) order.push_back(c);
    }
  }
  std::reverse(order.begin(), order.end());
  return order;
}

double RootedTree::total_weight(const TopologyGraph& graph) const {
  double w = 0.0;
  for (int e : tree_edges) w += graph.edges()[e].weight;
  return w;
}

SpinAssignment SpinAssignment::flipped() const {
  SpinAssignment out = *this;
  for (auto& b : out.s) b ^= 1U;
  return out;
}

void RelativeSpins::set(int a, int b, std::uint8_t bit) {
  if (a == b) throw std::invalid_argument("RelativeSpins: self pair");
  bits_[key(a, b)] = bit & 1U;
}

std::optional<std::uint8_t> RelativeSpins::get(int a, int b) const {
  auto it = bits_.find(key(a, b));
  if (it == bits_.end()) return std::nullopt;
  return it->second;
}

double edge_weight(const GainTable& gains, int k, int l) {
  if (k == l) throw std::invalid_argument("edge_weight: k == l");
  using enum End;
  return std::max({std::abs(gains.inr(k, l, R, R) - gains.inr(k, l, L, R)),
                   std::abs(gains.inr(k, l, L, L) - gains.inr(k, l, R, L)),
                   std::abs(gains.inr(l, k, R, R) - gains.inr(l, k, L, R)),
                   std::abs(gains.inr(l, k, L, L) - gains.inr(l, k, R, L))});
}

TopologyGraph build_graph(const GainTable& gains, double threshold) {
  const int m = gains.num_links();
  std::vector<Edge> edges;
  for (int k = 0; k < m; ++k) {
    for (int l = k + 1; l < m; ++l) {
      double strongest = 0.0;
      for (End x : {End::L, End::R}) {
        for (End y : {End::L, End::R}) {
          strongest = std::max({strongest, gains.inr(k, l, x, y), gains.inr(l, k, x, y)});
        }
      }
      if (strongest > threshold) edges.push_back({k, l, edge_weight(gains, k, l)});
    }
  }
  return TopologyGraph(m, std::move(edges));
}

RootedTree maximum_spanning_tree(const TopologyGraph& graph) {
  const int m = graph.num_vertices();
  const auto& edges = graph.edges();
  std::vector<int> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  // Edges are already lexicographic, so a stable sort keeps that as tie-break.
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return edges[a].weight > edges[b].weight; });

  DisjointSets sets(m);
  std::vector<std::vector<TopologyGraph::Neighbor>> tree_adj(static_cast<std::size_t>(m));
  RootedTree tree;
  for (int e : order) {
    if (sets.unite(edges[e].k, edges[e].l)) {
      tree.tree_edges.push_back(e);
      tree_adj[edges[e].k].push_back({edges[e].l, e});
      tree_adj[edges[e].l].push_back({edges[e].k, e});
    }
  }
  std::sort(tree.tree_edges.begin(), tree.tree_edges.end());

  tree.parent.assign(static_cast<std::size_t>(m), RootedTree::kNoParent);
  tree.parent_edge.assign(static_cast<std::size_t>(m), -1);
  tree.children.assign(static_cast<std::size_t>(m), {});
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  for (const auto& component : graph.components()) {
    const int root = component.front();
    tree.roots.push_back(root);
    seen[root] = true;
    std::vector<int> queue{root};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int v = queue[head];
      for (const auto& n : tree_adj[v]) {
        if (seen[n.vertex]) continue;
        seen[n.vertex] = true;
        tree.parent[n.vertex] = v;
        tree.parent_edge[n.vertex] = n.edge;
        tree.children[v].push_back(n.vertex);
        queue.push_back(n.vertex);
      }
    }
  }
  for (auto& c : tree.children) std::sort(c.begin(), c.end());
  return tree;
}

SpinAssignment spins_from_relative(const RootedTree& tree, const RelativeSpins& tree_spins,
                                   std::uint8_t root_spin) {
  const int m = tree.num_vertices();
  SpinAssignment out{std::vector<std::uint8_t>(static_cast<std::size_t>(m), 0)};
  for (int r : tree.roots) {
    out.s[r] = root_spin & 1U;
    std::vector<int> queue{r};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int v = queue[head];
      for (int c : tree.children[v]) {
        const auto bit = tree_spins.get(v, c);
        if (!bit) {
          throw std::invalid_argument("missing relative spin on tree edge {" + std::to_string(v) +
                                      "," + std::to_string(c) + "}");
        }
        out.s[c] = out.s[v] ^ *bit;
        queue.push_back(c);
      }
    }
  }
  return out;
}

RelativeSpins relative_from_spins(const TopologyGraph& graph, const SpinAssignment& spins) {
  if (spins.size() != graph.num_vertices()) {
    throw std::invalid_argument("relative_from_spins: spin vector length mismatch");
  }
  RelativeSpins r;
  for (const Edge& e : graph.edges()) r.set(e.k, e.l, spins.s[e.k] ^ spins.s[e.l]);
  return r;
}

RelativeSpins complete_relative_spins(const TopologyGraph& graph, const RootedTree& tree,
                                      const RelativeSpins& tree_spins) {
  // With s_root = 0, s_v is the XOR of tree spins along the root-to-v path, so
  // s_k XOR s_l is the XOR along the tree path between k and l.
  return relative_from_spins(graph, spins_from_relative(tree, tree_spins, 0));
}

}  // namespace spinsched
