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
#include <numeric>
#include <vector>

#include "oracles.hpp"
#include "spinsched/evaluation.hpp"
#include "spinsched/random.hpp"

using namespace spinsched;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.scenario.num_links = 6;
  c.scenario.link_mix = 0.5;
  c.num_drops = 8;
  c.frames_per_drop = 5;
  c.master_seed = 123;
  return c;
}

}  // namespace

TEST_CASE("lower empirical percentile") {
  std::vector<double> v(100);
  std::iota(v.begin(), v.end(), 1.0);
  CHECK(percentile(v, 0.05) == 5.0);
  CHECK(percentile(v, 0.07) == 7.0);
  CHECK(percentile(v, 0.051) == 6.0);
  CHECK(percentile(v, 1.0) == 100.0);
  CHECK(percentile(std::vector<double>{3.0, 1.0, 2.0}, 0.05) == 1.0);
  CHECK(percentile(std::vector<double>{4.0}, 0.5) == 4.0);
  CHECK_THROWS(percentile(std::vector<double>{}, 0.5));
  CHECK_THROWS(percentile(v, 0.0));
}

TEST_CASE("experiment validation") {
  ExperimentConfig c = small_config();
  c.num_drops = 0;
  CHECK_THROWS_WITH_AS(run_experiment(c), doctest::Contains("num_drops"), ConfigError);
  c = small_config();
  c.percentile = 1.0;
  CHECK_THROWS_WITH_AS(run_experiment(c), doctest::Contains("percentile"), ConfigError);
  c = small_config();
  c.algorithms.clear();
  CHECK_THROWS_AS(run_experiment(c), ConfigError);
  c = small_config();
  c.scenario.num_links = 21;
  CHECK_THROWS_AS(run_experiment(c), OptimizerRefusal);
}

TEST_CASE("single link without fading is one known sample") {
  ExperimentConfig c;
  c.scenario.num_links = 1;
  c.scenario.shadow_sigma_db = 0.0;
  c.num_drops = 1;
  c.frames_per_drop = 1;
  c.fading = FadingModel::None;
  c.bandwidth_hz = 1.0;
  const EvalReport r = run_experiment(c);
  for (const auto& s : r.algorithms) {
    REQUIRE(s.samples_bps.size() == 1);
    CHECK(s.samples_bps[0] == doctest::Approx(2 * std::log2(101.0)));
    CHECK(*s.gain_percentile == 1.0);
  }
}

TEST_CASE("without interference every algorithm yields the same rates") {
  ExperimentConfig c = small_config();
  c.scenario.area_side = 1e9;
  const EvalReport r = run_experiment(c);
  const auto& base = r.find(Algorithm::Random)->samples_bps;
  for (const auto& s : r.algorithms) {
    CHECK(s.samples_bps == base);
    CHECK(*s.gain_percentile == 1.0);
    CHECK(*s.gain_mean == 1.0);
  }
  for (int e : r.num_edges) CHECK(e == 0);
  CHECK(r.d_max == 0);
}

TEST_CASE("sample bookkeeping") {
  const ExperimentConfig c = small_config();
  const EvalReport r = run_experiment(c);
  CHECK(r.expected_sample_count() == 8u * 5u * 6u);
  REQUIRE(r.algorithms.size() == 3);
  for (const auto& s : r.algorithms) {
    CHECK(s.samples_bps.size() == r.expected_sample_count());
    CHECK(s.objective_exact.size() == 8);
    CHECK(s.mean_bps ==
          doctest::Approx(std::accumulate(s.samples_bps.begin(), s.samples_bps.end(), 0.0) /
                          static_cast<double>(s.samples_bps.size())));
    CHECK(s.percentile_bps == percentile(s.samples_bps, 0.05));
    for (double v : s.samples_bps) CHECK(v >= 0.0);
  }
  CHECK(std::isnan(r.find(Algorithm::Exhaustive)->objective_approx[0]));
  CHECK_FALSE(std::isnan(r.find(Algorithm::MstDp)->objective_approx[0]));
  CHECK(r.find(Algorithm::Random)->gain_percentile == 1.0);
  CHECK(r.d_mean <= r.d_max);
}

TEST_CASE("results do not depend on the thread count and are reproducible") {
  ExperimentConfig c = small_config();
  c.num_drops = 13;
  const EvalReport one = run_experiment(c, 1);
  const EvalReport four = run_experiment(c, 4);
  const EvalReport again = run_experiment(c, 3);
  for (std::size_t a = 0; a < one.algorithms.size(); ++a) {
    CHECK(one.algorithms[a].samples_bps == four.algorithms[a].samples_bps);
    CHECK(one.algorithms[a].samples_bps == again.algorithms[a].samples_bps);
    CHECK(one.algorithms[a].objective_exact == four.algorithms[a].objective_exact);
  }
  CHECK(one.max_children == four.max_children);
  c.master_seed = 124;
  CHECK_FALSE(run_experiment(c).algorithms[0].samples_bps == one.algorithms[0].samples_bps);
}

TEST_CASE("without fading and with a zero threshold, rates add up to the objective") {
  ExperimentConfig c = small_config();
  c.scenario.inr_edge_threshold = 0.0;
  c.fading = FadingModel::None;
  c.utility = UtilityKind::TwoWaySumRate;
  c.frames_per_drop = 1;
  c.bandwidth_hz = 1.0;
  const EvalReport r = run_experiment(c);
  const int m = c.scenario.num_links;
  for (const auto& s : r.algorithms) {
    for (int d = 0; d < c.num_drops; ++d) {
      double sum = 0.0;
      for (int l = 0; l < m; ++l) sum += s.samples_bps[static_cast<std::size_t>(d * m + l)];
      CHECK(sum == doctest::Approx(s.objective_exact[d]).epsilon(1e-12));
    }
  }
}

TEST_CASE("sweep points") {
  ExperimentConfig base = small_config();
  base.num_drops = 2;
  base.frames_per_drop = 2;
  const ExperimentConfig p = sweep_point(base, SweepParameter::NumLinks, 4, 1);
  CHECK(p.scenario.num_links == 4);
  CHECK(p.master_seed == derive_seed(base.master_seed, Stream::Sweep, 1));
  CHECK(sweep_point(base, SweepParameter::LinkMix, 0.25, 0).scenario.link_mix == 0.25);
  CHECK_THROWS_AS(sweep_point(base, SweepParameter::NumLinks, 2.5, 0), ConfigError);
  CHECK(parse_sweep_parameter(sweep_parameter_name(SweepParameter::LinkMix)) == SweepParameter::LinkMix);

  const std::vector<double> values{3, 5};
  const auto reports = sweep(base, SweepParameter::NumLinks, values);
  REQUIRE(reports.size() == 2);
  CHECK(reports[1].links_per_drop[0] == 5);
  CHECK(reports[0].algorithms[0].samples_bps.size() == 2u * 2u * 3u);
}
