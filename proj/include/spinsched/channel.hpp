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

// Random network drops for M two-way links and their long-term and
// instantaneous channel gains. All gains are signal- or interference-to-noise
// ratios in linear units with the noise power normalized to one.

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinsched {

/// Raised for invalid user-supplied configuration. The message names the
/// offending field.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Node of a two-way link. The labelling of the two ends is arbitrary.
enum class End : std::uint8_t { L = 0, R = 1 };

constexpr End opposite(End e) { return e == End::L ? End::R : End::L; }

enum class LinkKind : std::uint8_t { Symmetric, Asymmetric };

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct ScenarioConfig {
  double area_side = 100.0;  // m
  int num_links = 10;
  double link_mix = 1.0;  // probability that a link is symmetric (D2D)
  double d_sym = 10.0;    // m
  double d_asym = 50.0;   // m
  double snr_sym_db = 20.0;
  double snr_asym_lr_db = 20.0;
  double snr_asym_rl_db = 10.0;
  double shadow_sigma_db = 8.0;
  double pathloss_exp = 4.0;
  // An interference path whose linear INR does not exceed this value is
  // treated as absent when building the topology graph (-20 dB).
  double inr_edge_threshold = 0.01;
  // Cross-link distances are floored here before applying path loss.
  double min_distance = 1.0;  // m
  std::uint64_t seed = 1;

  void validate() const;

  /// Link length for the given kind.
  double link_length(LinkKind kind) const { return kind == LinkKind::Symmetric ? d_sym : d_asym; }

  /// Nominal (pre-shadowing) SNR of a link of `kind` when `transmitter` sends.
  double nominal_snr(LinkKind kind, End transmitter) const;
};

/// Direct SNRs and the cross-link INR tensor of M links.
///
/// snr(l, X) is the SNR from X_l to the opposite end of link l, i.e.
/// snr(l, L) = SNR_l^{LR} and snr(l, R) = SNR_l^{RL}.
/// inr(l, k, X, Y) is the INR caused by node X of link l at node Y of link k.
/// Diagonal entries (l == k) are kept at zero.
class GainTable {
 public:
  GainTable() = default;
  explicit GainTable(int num_links);

  int num_links() const { return num_links_; }

  double snr(int link, End transmitter) const { return snr_[snr_index(link, transmitter)]; }
  void set_snr(int link, End transmitter, double value) {
    snr_[snr_index(link, transmitter)] = value;
  }

  double inr(int src, int dst, End src_end, End dst_end) const {
    return inr_[inr_index(src, dst, src_end, dst_end)];
  }
  void set_inr(int src, int dst, End src_end, End dst_end, double value);

  std::span<const double> snr_values() const { return snr_; }
  std::span<double> snr_values() { return snr_; }
  std::span<const double> inr_values() const { return inr_; }
  std::span<double> inr_values() { return inr_; }

  std::size_t snr_index(int link, End transmitter) const {
    return static_cast<std::size_t>(link) * 2 + static_cast<std::size_t>(transmitter);
  }
  std::size_t inr_index(int src, int dst, End src_end, End dst_end) const {
    return ((static_cast<std::size_t>(src) * static_cast<std::size_t>(num_links_) +
             static_cast<std::size_t>(dst)) *
                2 +
            static_cast<std::size_t>(src_end)) *
               2 +
           static_cast<std::size_t>(dst_end);
  }

  friend bool operator==(const GainTable&, const GainTable&) = default;

 private:
  int num_links_ = 0;
  std::vector<double> snr_;
  std::vector<double> inr_;
};

/// One network drop: geometry, link kinds, long-term gains and the
/// shadowing factors they were built from.
struct LinkInstance {
  LinkInstance() = default;
  /// Zero gains, all links symmetric, all nodes at the origin.
  explicit LinkInstance(int num_links);

  int num_links() const { return gains.num_links(); }
  Point& position(int link, End end) { return positions[link * 2 + static_cast<int>(end)]; }
  Point position(int link, End end) const { return positions[link * 2 + static_cast<int>(end)]; }

  /// Shadowing factor shared by the unordered node pair {X_l, Y_k}; the
  /// tensor satisfies cross_shadowing(l,k,X,Y) == cross_shadowing(k,l,Y,X).
  double cross_shadowing(int src, int dst, End src_end, End dst_end) const {
    return shadowing[gains.inr_index(src, dst, src_end, dst_end)];
  }

  std::uint64_t seed = 0;
  std::vector<Point> positions;       // 2 per link: [L, R]
  std::vector<LinkKind> kinds;
  std::vector<double> direct_shadowing;  // beta_l, shared by both directions
  std::vector<double> shadowing;         // same layout as the INR tensor
  GainTable gains;

  friend bool operator==(const LinkInstance&, const LinkInstance&) = default;
};

/// Instantaneous gains of one frame; both slots of the frame share them.
struct FadingDraw {
  std::uint64_t frame_index = 0;
  GainTable gains;
};

enum class FadingModel { Rayleigh, None };

/// Path-loss law for one interference path:
/// nominal_snr * (link_length / max(d, min_distance))^eta * shadowing.
double interference_power(const ScenarioConfig& config, LinkKind source_kind, End source_end,
                          double distance_m, double shadowing);

/// Places M links and derives their long-term SNRs and INRs.
///
/// The first end of every link is uniform in the square and labelled L or R
/// with equal probability; the other end sits at the link length in a uniform
/// direction and may fall outside the square. Shadowing is log-normal and
/// drawn once per unordered node pair.
LinkInstance generate_instance(const ScenarioConfig& config, std::uint64_t drop_seed);

/// Multiplies every long-term SNR and INR by an independent unit-mean
/// exponential coefficient (power of a unit-power Rayleigh amplitude).
FadingDraw draw_fading(const GainTable& long_term, std::uint64_t frame_seed,
                       std::uint64_t frame_index = 0,
                       FadingModel model = FadingModel::Rayleigh);

/// Same as draw_fading but with caller-supplied coefficients, drawn in the
/// order: all SNRs (link-major, L then R), then the INR tensor in storage
/// order including the unused diagonal.
FadingDraw apply_fading(const GainTable& long_term, const std::function<double()>& coefficient,
                        std::uint64_t frame_index = 0);

}  // namespace spinsched
