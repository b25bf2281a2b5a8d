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

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "spinsched/kernels.hpp"
#include "spinsched/sinr.hpp"

using namespace spinsched;

namespace {

RelativeSpins one(int a, int b, std::uint8_t bit) {
  RelativeSpins r;
  r.set(a, b, bit);
  return r;
}

}  // namespace

TEST_CASE("exact SINR by hand") {
  LinkInstance inst = oracle::blank_instance(2);
  GainTable& g = inst.gains;
  g.set_inr(0, 1, End::L, End::R, 4.0);  // same, LR at R_1
  g.set_inr(0, 1, End::R, End::R, 9.0);  // flip, LR at R_1
  g.set_inr(0, 1, End::R, End::L, 1.0);  // same, RL at L_1
  g.set_inr(0, 1, End::L, End::L, 3.0);  // flip, RL at L_1
  const TopologyGraph graph(2, {{0, 1, 1.0}});

  const LinkSinr aligned = exact_sinr(g, graph, 1, one(0, 1, 0));
  CHECK(aligned.lr == doctest::Approx(20.0));
  CHECK(aligned.rl == doctest::Approx(50.0));
  const LinkSinr flipped = exact_sinr(g, graph, 1, one(1, 0, 1));
  CHECK(flipped.lr == doctest::Approx(10.0));
  CHECK(flipped.rl == doctest::Approx(25.0));

  // Link 0 hears nothing from link 1 in this instance.
  const LinkSinr quiet = exact_sinr(g, graph, 0, one(0, 1, 1));
  CHECK(quiet.lr == 100.0);
  CHECK(quiet.rl == 100.0);

  CHECK_THROWS_WITH(exact_sinr(g, graph, 1, RelativeSpins{}), doctest::Contains("missing relative spin"));
}

TEST_CASE("non-neighbors do not interfere") {
  LinkInstance inst = oracle::blank_instance(2);
  inst.gains.set_inr(0, 1, End::L, End::R, 4.0);
  const TopologyGraph none(2, {});
  const LinkSinr s = exact_sinr(inst.gains, none, 1, RelativeSpins{});
  CHECK(s.lr == 100.0);
  CHECK(s.rl == 100.0);
}

TEST_CASE("approximate SINR averages over non-tree edges") {
  LinkInstance inst = oracle::blank_instance(3);
  inst.gains.set_inr(1, 2, End::L, End::R, 4.0);
  inst.gains.set_inr(1, 2, End::R, End::R, 9.0);
  inst.gains.set_inr(0, 2, End::L, End::R, 2.0);
  inst.gains.set_inr(0, 2, End::R, End::R, 7.0);
  const TopologyGraph graph(3, {{0, 1, 3.0}, {0, 2, 2.0}, {1, 2, 1.0}});
  const RootedTree tree = maximum_spanning_tree(graph);
  REQUIRE_FALSE(tree.contains_edge(2));

  RelativeSpins tree_r;
  tree_r.set(0, 1, 0);
  tree_r.set(0, 2, 1);
  const LinkSinr s = approx_sinr(inst.gains, graph, tree, 2, tree_r);
  CHECK(s.lr == doctest::Approx(100.0 / (1.0 + 7.0 + 6.5)));
  CHECK(s.rl == 100.0);

  SUBCASE("equals the exact SINR when every incident edge is in the tree") {
    const TopologyGraph path(3, {{0, 1, 3.0}, {0, 2, 2.0}});
    const RootedTree t = maximum_spanning_tree(path);
    for (int l = 0; l < 3; ++l) {
      const LinkSinr a = approx_sinr(inst.gains, path, t, l, tree_r);
      const LinkSinr e = exact_sinr(inst.gains, path, l, tree_r);
      CHECK(a.lr == e.lr);
      CHECK(a.rl == e.rl);
    }
  }
}

TEST_CASE("utilities") {
  CHECK(two_way_rate({1.0, 3.0}) == doctest::Approx(3.0));
  CHECK(link_utility(UtilityKind::TwoWaySumRate, {1.0, 3.0}) == doctest::Approx(3.0));
  CHECK(link_utility(UtilityKind::ProportionalFairness, {1.0, 3.0}) == doctest::Approx(std::log(3.0)));
  const double zero = link_utility(UtilityKind::ProportionalFairness, {0.0, 0.0});
  CHECK(std::isinf(zero));
  CHECK(zero < 0);
  CHECK(link_utility(UtilityKind::TwoWaySumRate, {0.0, 0.0}) == 0.0);
}

TEST_CASE("two-link network utility by hand") {
  LinkInstance inst = oracle::blank_instance(2, 10.0);
  GainTable& g = inst.gains;
  g.set_inr(0, 1, End::L, End::R, 1.0);
  g.set_inr(0, 1, End::R, End::R, 4.0);
  g.set_inr(1, 0, End::L, End::L, 9.0);
  g.set_inr(1, 0, End::R, End::L, 0.0);
  const TopologyGraph graph(2, {{0, 1, 9.0}});
  // r = 0: link 0 SINRs (10, 10), link 1 SINRs (5, 10).
  const double r0 = 2 * std::log2(11.0) + std::log2(6.0) + std::log2(11.0);
  // r = 1: link 0 SINRs (10, 1), link 1 SINRs (2, 10).
  const double r1 = std::log2(11.0) + 1.0 + std::log2(3.0) + std::log2(11.0);
  CHECK(network_utility(g, graph, UtilityKind::TwoWaySumRate, one(0, 1, 0)) == doctest::Approx(r0));
  CHECK(network_utility(g, graph, UtilityKind::TwoWaySumRate, one(0, 1, 1)) == doctest::Approx(r1));
  CHECK(network_utility(g, graph, UtilityKind::TwoWaySumRate, SpinAssignment{{1, 0}}) ==
        doctest::Approx(r1));
}

TEST_CASE("library utility matches the direct oracle") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const int m = 2 + static_cast<int>(seed % 7);
    const LinkInstance inst = oracle::random_instance(seed, m, 0.5);
    const TopologyGraph graph = build_graph(inst.gains, 0.01);
    for (std::uint32_t mask = 0; mask < (1U << m); mask += 1 + mask / 3) {
      SpinAssignment s;
      for (int i = 0; i < m; ++i) s.s.push_back(static_cast<std::uint8_t>((mask >> i) & 1U));
      for (UtilityKind kind : {UtilityKind::TwoWaySumRate, UtilityKind::ProportionalFairness}) {
        const double want = oracle::direct_network_utility(inst.gains, graph, kind, s.s);
        const double got = network_utility(inst.gains, graph, kind, s);
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
        // The relative-spin entry point does the same arithmetic.
        CHECK(network_utility(inst.gains, graph, kind, relative_from_spins(graph, s)) == got);
        CHECK(network_utility(inst.gains, graph, kind, s.flipped()) == got);
      }
      for (int l = 0; l < m; ++l) {
        const LinkSinr a = exact_sinr(inst.gains, graph, l, relative_from_spins(graph, s));
        const LinkSinr b = oracle::direct_sinr(inst.gains, graph, l, s.s);
        CHECK(a.lr == doctest::Approx(b.lr).epsilon(1e-12));
        CHECK(a.rl == doctest::Approx(b.rl).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("more interference never raises a SINR") {
  LinkInstance inst = oracle::random_instance(5, 6, 0.5);
  const TopologyGraph graph = build_graph(inst.gains, 0.0);
  const SpinAssignment s{{0, 1, 1, 0, 1, 0}};
  const RelativeSpins r = relative_from_spins(graph, s);
  const LinkSinr before = exact_sinr(inst.gains, graph, 3, r);
  for (End x : {End::L, End::R})
    for (End y : {End::L, End::R}) inst.gains.set_inr(1, 3, x, y, inst.gains.inr(1, 3, x, y) * 2 + 1);
  const LinkSinr after = exact_sinr(inst.gains, graph, 3, r);
  CHECK(after.lr < before.lr);
  CHECK(after.rl < before.rl);
}

TEST_CASE("evaluator agrees with the free functions") {
  const LinkInstance inst = oracle::random_instance(77, 8, 0.5);
  const TopologyGraph graph = build_graph(inst.gains, 0.01);
  UtilityEvaluator eval(inst.gains, graph, UtilityKind::ProportionalFairness);
  const SpinAssignment s{{1, 0, 0, 1, 1, 0, 1, 0}};
  CHECK(eval.total(s) == network_utility(inst.gains, graph, UtilityKind::ProportionalFairness, s));
  double by_component = 0.0;
  for (std::size_t c = 0; c < graph.components().size(); ++c) {
    by_component += eval.component(static_cast<int>(c), s);
  }
  CHECK(by_component == eval.total(s));
}

TEST_CASE("all-pairs rows include every other link") {
  const LinkInstance inst = oracle::random_instance(9, 5, 0.5);
  const InterferenceRows rows(inst.gains);
  for (int l = 0; l < 5; ++l) {
    for (int k = 0; k < 5; ++k) {
      const double same = k == l ? 0.0 : inst.gains.inr(k, l, End::L, End::R);
      const double flip = k == l ? 0.0 : inst.gains.inr(k, l, End::R, End::R);
      CHECK(rows.same(l, Direction::LR)[k] == same);
      CHECK(rows.flip(l, Direction::LR)[k] == flip);
      CHECK(rows.same(l, Direction::RL)[k] == (k == l ? 0.0 : inst.gains.inr(k, l, End::R, End::L)));
      CHECK(rows.flip(l, Direction::RL)[k] == (k == l ? 0.0 : inst.gains.inr(k, l, End::L, End::L)));
    }
  }
}

TEST_CASE("scalar and AVX2 kernels give the same utilities") {
  if (!kernels::isa_available(kernels::Isa::Avx2)) return;
  const LinkInstance inst = oracle::random_instance(31, 40, 0.5);
  const TopologyGraph graph = build_graph(inst.gains, 0.0);
  SpinAssignment s;
  for (int i = 0; i < 40; ++i) s.s.push_back(static_cast<std::uint8_t>((i * 7) % 3 == 0));
  double a = 0, b = 0;
  {
    kernels::IsaOverride g(kernels::Isa::Scalar);
    a = network_utility(inst.gains, graph, UtilityKind::TwoWaySumRate, s);
  }
  {
    kernels::IsaOverride g(kernels::Isa::Avx2);
    b = network_utility(inst.gains, graph, UtilityKind::TwoWaySumRate, s);
  }
  CHECK(a == doctest::Approx(b).epsilon(1e-13));
}
