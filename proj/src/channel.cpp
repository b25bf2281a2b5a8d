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

#include "spinsched/channel.hpp"

#include <algorithm>
#include <numbers>
#include <random>

#include "spinsched/kernels.hpp"
#include "spinsched/random.hpp"

namespace spinsched {

namespace {

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError("scenario." + field + ": " + what);
}

}  // namespace

void ScenarioConfig::validate() const {
  require(std::isfinite(area_side) && area_side > 0, "area_side", "must be > 0");
  require(num_links >= 1, "num_links", "must be >= 1");
  require(link_mix >= 0 && link_mix <= 1, "link_mix", "must lie in [0, 1]");
  require(std::isfinite(d_sym) && d_sym > 0, "d_sym", "must be > 0");
  require(std::isfinite(d_asym) && d_asym > 0, "d_asym", "must be > 0");
  require(std::isfinite(snr_sym_db), "snr_sym_db", "must be finite");
  require(std::isfinite(snr_asym_lr_db), "snr_asym_lr_db", "must be finite");
  require(std::isfinite(snr_asym_rl_db), "snr_asym_rl_db", "must be finite");
  require(std::isfinite(shadow_sigma_db) && shadow_sigma_db >= 0, "shadow_sigma_db",
          "must be >= 0");
  require(std::isfinite(pathloss_exp) && pathloss_exp > 0, "pathloss_exp", "must be > 0");
  require(inr_edge_threshold >= 0, "inr_edge_threshold", "must be >= 0");
  require(std::isfinite(min_distance) && min_distance > 0, "min_distance", "must be > 0");
}

double ScenarioConfig::nominal_snr(LinkKind kind, End transmitter) const {
  if (kind == LinkKind::Symmetric) return db_to_linear(snr_sym_db);
  return db_to_linear(transmitter == End::L ? snr_asym_lr_db : snr_asym_rl_db);
}

GainTable::GainTable(int num_links)
    : num_links_(num_links),
      snr_(static_cast<std::size_t>(num_links) * 2, 0.0),
      inr_(static_cast<std::size_t>(num_links) * static_cast<std::size_t>(num_links) * 4, 0.0) {
  if (num_links < 0) throw std::invalid_argument("GainTable: negative link count");
}

void GainTable::set_inr(int src, int dst, End src_end, End dst_end, double value) {
  if (src == dst) throw std::invalid_argument("GainTable: INR diagonal is not settable");
  inr_[inr_index(src, dst, src_end, dst_end)] = value;
}

LinkInstance::LinkInstance(int num_links)
    : positions(static_cast<std::size_t>(num_links) * 2),
      kinds(static_cast<std::size_t>(num_links), LinkKind::Symmetric),
      direct_shadowing(static_cast<std::size_t>(num_links), 1.0),
      shadowing(static_cast<std::size_t>(num_links) * static_cast<std::size_t>(num_links) * 4,
                1.0),
      gains(num_links) {}

double interference_power(const ScenarioConfig& config, LinkKind source_kind, End source_end,
                          double distance_m, double shadowing) {
  const double d = std::max(distance_m, config.min_distance);
  return config.nominal_snr(source_kind, source_end) *
         std::pow(config.link_length(source_kind) / d, config.pathloss_exp) * shadowing;
}

LinkInstance generate_instance(const ScenarioConfig& config, std::uint64_t drop_seed) {
  config.validate();
  const int m = config.num_links;
  LinkInstance inst(m);
  inst.seed = drop_seed;

  {
    Rng rng = make_rng(derive_seed(drop_seed, Stream::Placement));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> coord(0.0, config.area_side);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (int l = 0; l < m; ++l) {
      const LinkKind kind = unit(rng) < config.link_mix ? LinkKind::Symmetric : LinkKind::Asymmetric;
      const Point first{coord(rng), coord(rng)};
      const End first_end = unit(rng) < 0.5 ? End::L : End::R;
      const double theta = angle(rng);
      const double len = config.link_length(kind);
      inst.kinds[l] = kind;
      inst.position(l, first_end) = first;
      inst.position(l, opposite(first_end)) =
          Point{first.x + len * std::cos(theta), first.y + len * std::sin(theta)};
    }
  }

  {
    Rng rng = make_rng(derive_seed(drop_seed, Stream::Shadowing));
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto draw = [&] { return db_to_linear(config.shadow_sigma_db * gauss(rng)); };
    // Node n = 2*link + end; one factor per unordered node pair.
    const int nodes = 2 * m;
    for (int a = 0; a < nodes; ++a) {
      for (int b = a + 1; b < nodes; ++b) {
        const double beta = draw();
        const int la = a / 2, lb = b / 2;
        const End ea = static_cast<End>(a % 2), eb = static_cast<End>(b % 2);
        if (la == lb) {
          inst.direct_shadowing[la] = beta;
        } else {
          inst.shadowing[inst.gains.inr_index(la, lb, ea, eb)] = beta;
          inst.shadowing[inst.gains.inr_index(lb, la, eb, ea)] = beta;
        }
      }
    }
    for (int l = 0; l < m; ++l) {
      for (End x : {End::L, End::R}) {
        for (End y : {End::L, End::R}) {
          inst.shadowing[inst.gains.inr_index(l, l, x, y)] = 0.0;
        }
      }
    }
  }

  for (int l = 0; l < m; ++l) {
    for (End x : {End::L, End::R}) {
      inst.gains.set_snr(l, x, config.nominal_snr(inst.kinds[l], x) * inst.direct_shadowing[l]);
    }
  }
  for (int l = 0; l < m; ++l) {
    for (int k = 0; k < m; ++k) {
      if (k == l) continue;
      for (End x : {End::L, End::R}) {
        for (End y : {End::L, End::R}) {
          const double d = distance(inst.position(l, x), inst.position(k, y));
          inst.gains.set_inr(l, k, x, y,
                             interference_power(config, inst.kinds[l], x, d,
                                                inst.cross_shadowing(l, k, x, y)));
        }
      }
    }
  }
  return inst;
}

FadingDraw apply_fading(const GainTable& long_term, const std::function<double()>& coefficient,
                        std::uint64_t frame_index) {
  FadingDraw out{frame_index, long_term};
  std::vector<double> coeff(long_term.snr_values().size() + long_term.inr_values().size());
  std::generate(coeff.begin(), coeff.end(), coefficient);
  const auto snr_n = long_term.snr_values().size();
  kernels::multiply(long_term.snr_values(), std::span<const double>(coeff).first(snr_n),
                    out.gains.snr_values());
  kernels::multiply(long_term.inr_values(), std::span<const double>(coeff).subspan(snr_n),
                    out.gains.inr_values());
  return out;
}

FadingDraw draw_fading(const GainTable& long_term, std::uint64_t frame_seed,
                       std::uint64_t frame_index, FadingModel model) {
  if (model == FadingModel::None) return FadingDraw{frame_index, long_term};
  Rng rng = make_rng(derive_seed(frame_seed, Stream::Fading));
  std::exponential_distribution<double> power(1.0);
  return apply_fading(long_term, [&] { return power(rng); }, frame_index);
}

}  // namespace spinsched
