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

#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "spinsched/topology.hpp"

using namespace spinsched;

namespace {

void set_pair(GainTable& g, int k, int l, End x, End y, double v) { g.set_inr(k, l, x, y, v); }

TopologyGraph triangle(double w01, double w02, double w12) {
  return TopologyGraph(3, {{0, 1, w01}, {0, 2, w02}, {1, 2, w12}});
}

}  // namespace

TEST_CASE("edge weight") {
  GainTable g(2);
  CHECK(edge_weight(g, 0, 1) == 0.0);

  // INR_01^RR = 5 against INR_01^LR = 1.
  set_pair(g, 0, 1, End::R, End::R, 5.0);
  set_pair(g, 0, 1, End::L, End::R, 1.0);
  CHECK(edge_weight(g, 0, 1) == 4.0);
  CHECK(edge_weight(g, 1, 0) == 4.0);

  // The reverse direction dominates once it differs more.
  set_pair(g, 1, 0, End::L, End::L, 10.0);
  set_pair(g, 1, 0, End::R, End::L, 3.0);
  CHECK(edge_weight(g, 0, 1) == 7.0);

  // A pair whose interference is spin-independent weighs nothing.
  GainTable flat(2);
  for (End x : {End::L, End::R})
    for (End y : {End::L, End::R}) {
      flat.set_inr(0, 1, x, y, 2.0);
      flat.set_inr(1, 0, x, y, 2.0);
    }
  CHECK(edge_weight(flat, 0, 1) == 0.0);
}

TEST_CASE("graph construction") {
  SUBCASE("no interference gives no edges") {
    GainTable g(4);
    const TopologyGraph graph = build_graph(g, 0.01);
    CHECK(graph.edges().empty());
    CHECK(graph.components().size() == 4);
  }
  SUBCASE("one INR above the threshold is enough") {
    GainTable g(3);
    g.set_inr(2, 0, End::L, End::L, 0.02);
    g.set_inr(1, 0, End::L, End::L, 0.005);
    const TopologyGraph graph = build_graph(g, 0.01);
    REQUIRE(graph.edges().size() == 1);
    CHECK(graph.edges()[0].k == 0);
    CHECK(graph.edges()[0].l == 2);
    CHECK(graph.edges()[0].weight == doctest::Approx(0.02));
    CHECK(graph.find_edge(2, 0).has_value());
    CHECK_FALSE(graph.find_edge(0, 1).has_value());
  }
  SUBCASE("threshold is strict") {
    GainTable g(2);
    g.set_inr(0, 1, End::R, End::R, 0.01);
    CHECK(build_graph(g, 0.01).edges().empty());
    CHECK(build_graph(g, 0.0099).edges().size() == 1);
  }
  SUBCASE("raising the threshold only removes edges") {
    const LinkInstance inst = oracle::random_instance(11, 12, 0.5);
    std::size_t prev = build_graph(inst.gains, 0.0).edges().size();
    for (double t : {1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0}) {
      const TopologyGraph lo = build_graph(inst.gains, t / 10);
      const TopologyGraph hi = build_graph(inst.gains, t);
      for (const Edge& e : hi.edges()) CHECK(lo.find_edge(e.k, e.l).has_value());
      CHECK(hi.edges().size() <= prev);
      prev = hi.edges().size();
    }
  }
}

TEST_CASE("graph validation") {
  CHECK_THROWS(TopologyGraph(3, {{1, 1, 1.0}}));
  CHECK_THROWS(TopologyGraph(3, {{0, 1, 1.0}, {1, 0, 2.0}}));
  CHECK_THROWS(TopologyGraph(3, {{0, 3, 1.0}}));
  CHECK_THROWS(TopologyGraph(3, {{0, 1, -1.0}}));
  const TopologyGraph g(4, {{2, 1, 1.0}, {0, 3, 1.0}});
  CHECK(g.edges()[0] == Edge{0, 3, 1.0});
  CHECK(g.edges()[1] == Edge{1, 2, 1.0});
  REQUIRE(g.components().size() == 2);
  CHECK(g.components()[0] == std::vector<int>{0, 3});
  CHECK(g.components()[1] == std::vector<int>{1, 2});
  CHECK(g.component_of(3) == 0);
}

TEST_CASE("maximum spanning tree") {
  SUBCASE("a tree is kept whole") {
    const TopologyGraph g(4, {{0, 1, 1.0}, {1, 2, 5.0}, {1, 3, 2.0}});
    const RootedTree t = maximum_spanning_tree(g);
    CHECK(t.tree_edges == std::vector<int>{0, 1, 2});
    CHECK(t.roots == std::vector<int>{0});
    CHECK(t.parent == std::vector<int>{RootedTree::kNoParent, 0, 1, 1});
    CHECK(t.children[1] == std::vector<int>{2, 3});
    CHECK(t.max_children() == 2);
    CHECK(t.total_weight(g) == 8.0);
  }
  SUBCASE("triangle drops its lightest edge") {
    const TopologyGraph g = triangle(3.0, 2.0, 1.0);
    const RootedTree t = maximum_spanning_tree(g);
    CHECK(t.tree_edges == std::vector<int>{0, 1});
    CHECK_FALSE(t.contains_edge(2));
    CHECK(t.total_weight(g) == 5.0);
  }
  SUBCASE("ties prefer lexicographically smaller edges") {
    const TopologyGraph g = triangle(1.0, 1.0, 1.0);
    const RootedTree t = maximum_spanning_tree(g);
    CHECK(t.tree_edges == std::vector<int>{0, 1});
    CHECK(t.children[0] == std::vector<int>{1, 2});
  }
  SUBCASE("disconnected graphs give one rooted tree per component") {
    const TopologyGraph g(5, {{0, 1, 1.0}, {2, 4, 1.0}, {3, 4, 2.0}});
    const RootedTree t = maximum_spanning_tree(g);
    CHECK(t.roots == std::vector<int>{0, 2});
    CHECK(t.parent[4] == 2);
    CHECK(t.parent[3] == 4);
    const auto order = t.bottom_up_order();
    std::vector<int> pos(5);
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
    for (int v = 0; v < 5; ++v)
      if (t.parent[v] != RootedTree::kNoParent) CHECK(pos[v] < pos[t.parent[v]]);
  }
  SUBCASE("weight matches subset enumeration on random graphs") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      const LinkInstance inst = oracle::random_instance(seed, 6, 0.5);
      const TopologyGraph g = build_graph(inst.gains, 0.01);
      if (g.edges().size() > 15) continue;
      const RootedTree t = maximum_spanning_tree(g);
      CHECK(static_cast<int>(t.tree_edges.size()) ==
            g.num_vertices() - static_cast<int>(g.components().size()));
      CHECK(t.total_weight(g) == doctest::Approx(oracle::max_spanning_weight(g)).epsilon(1e-12));
    }
  }
}

TEST_CASE("relative and absolute spins") {
  const TopologyGraph g = triangle(3.0, 2.0, 1.0);
  const RootedTree t = maximum_spanning_tree(g);

  SUBCASE("all-zero tree spins complete to all-zero") {
    RelativeSpins r;
    r.set(0, 1, 0);
    r.set(0, 2, 0);
    const RelativeSpins full = complete_relative_spins(g, t, r);
    CHECK(full.size() == 3);
    CHECK(*full.get(1, 2) == 0);
  }
  SUBCASE("closing edge gets the XOR of the path") {
    RelativeSpins r;
    r.set(1, 0, 1);
    r.set(0, 2, 1);
    CHECK(*complete_relative_spins(g, t, r).get(2, 1) == 0);
    r.set(0, 2, 0);
    CHECK(*complete_relative_spins(g, t, r).get(1, 2) == 1);
  }
  SUBCASE("missing tree spin throws") {
    RelativeSpins r;
    r.set(0, 1, 0);
    CHECK_THROWS_WITH(spins_from_relative(t, r, 0), doctest::Contains("missing relative spin"));
  }
  SUBCASE("root spin selects one of two complementary vectors") {
    RelativeSpins r;
    r.set(0, 1, 1);
    r.set(0, 2, 0);
    const SpinAssignment a = spins_from_relative(t, r, 0);
    const SpinAssignment b = spins_from_relative(t, r, 1);
    CHECK(a.s == std::vector<std::uint8_t>{0, 1, 0});
    CHECK(b == a.flipped());
    CHECK(relative_from_spins(g, a) == relative_from_spins(g, b));
  }
  SUBCASE("alternating path") {
    const TopologyGraph path(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}});
    const SpinAssignment s{{0, 1, 0, 1}};
    const RelativeSpins r = relative_from_spins(path, s);
    for (const auto& [kl, bit] : r.entries()) CHECK(bit == 1);
    CHECK(spins_from_relative(maximum_spanning_tree(path), r, 0) == s);
  }
}

TEST_CASE("every derived relative-spin set has even parity on every cycle") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const LinkInstance inst = oracle::random_instance(100 + seed, 7, 0.5);
    const TopologyGraph g = build_graph(inst.gains, 0.01);
    const RootedTree t = maximum_spanning_tree(g);
    RelativeSpins tree_r;
    for (int e : t.tree_edges) {
      tree_r.set(g.edges()[e].k, g.edges()[e].l, static_cast<std::uint8_t>((seed + e) % 2));
    }
    const RelativeSpins full = complete_relative_spins(g, t, tree_r);
    CHECK(full.size() == g.edges().size());
    for (int e : t.tree_edges) {
      CHECK(full.get(g.edges()[e].k, g.edges()[e].l) == tree_r.get(g.edges()[e].k, g.edges()[e].l));
    }
    for (const auto& cycle : oracle::simple_cycles(g)) {
      int parity = 0;
      for (int e : cycle) parity ^= *full.get(g.edges()[e].k, g.edges()[e].l);
      CHECK(parity == 0);
    }
    // Round trip through absolute spins.
    const SpinAssignment s = spins_from_relative(t, tree_r, 0);
    CHECK(relative_from_spins(g, s) == full);
  }
}

TEST_CASE("simple cycle oracle sanity") {
  CHECK(oracle::simple_cycles(triangle(1, 1, 1)).size() == 1);
  // K4 has 7 simple cycles: four triangles and three 4-cycles.
  const TopologyGraph k4(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}});
  CHECK(oracle::simple_cycles(k4).size() == 7);
}
