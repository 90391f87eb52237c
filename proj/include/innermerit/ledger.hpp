// Copyright 2026 The InnerMerit Authors
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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "innermerit/events.hpp"
#include "innermerit/time.hpp"
#include "innermerit/util.hpp"

namespace innermerit {

class Registry;

// Points per unit of magnitude, one entry per contribution kind.
struct WeightConfig {
  std::array<std::int64_t, kContributionKindCount> points_per_unit{};

  // Code 10, Mentoring 5, Documentation 4, Review 3, IssueReport 2,
  // Evangelism 2, Discussion 1.
  static WeightConfig defaults();

  std::int64_t weight(ContributionKind kind) const {
    return points_per_unit[static_cast<std::size_t>(kind)];
  }
  // Every weight positive and Code weighted at least as high as any other kind.
  void validate() const;
};

// Tier ladder with geometric thresholds: tier 0 starts at zero, tier i >= 1
// starts at base * growth^(i-1).
struct TierConfig {
  std::vector<std::string> names;
  std::int64_t base_threshold = 100;
  std::int64_t growth_factor = 4;

  // Bronze/Silver/Gold/Platinum/Diamond, base 100, factor 4.
  static TierConfig defaults();

  void validate() const;
  std::int64_t threshold(std::size_t tier) const;
  std::size_t tier_index_for(std::int64_t points) const;
  const std::string& tier_for(std::int64_t points) const { return names[tier_index_for(points)]; }
};

// Approval rule for role changes: approvals * denominator > members * numerator.
// The default 1/2 is a strict majority.
struct RoleQuorum {
  std::int64_t numerator = 1;
  std::int64_t denominator = 2;

  bool approves(std::int64_t approvals, std::int64_t members) const {
    return approvals * denominator > members * numerator;
  }
  void validate() const;
};

struct LedgerConfig {
  WeightConfig weights = WeightConfig::defaults();
  TierConfig tiers = TierConfig::defaults();
  RoleQuorum quorum;

  // Keys: weight.<kind> (e.g. weight.code), tier.names, tier.base,
  // tier.growth, role.quorum (as "num/den"). Unlisted keys keep defaults;
  // unknown keys are rejected.
  static LedgerConfig from_key_values(const KeyValues& kv);
  void validate() const;
};

struct ContributorState {
  std::string contributor_id;
  std::int64_t total_points = 0;
  std::array<std::int64_t, kContributionKindCount> points_by_kind{};
  std::array<std::int64_t, kContributionKindCount> events_by_kind{};
  std::size_t tier = 0;
  std::optional<Timestamp> first_event_at;

  friend bool operator==(const ContributorState&, const ContributorState&) = default;
};

// Throws UnknownKind when the kind has no positive weight and InvalidArgument
// when the magnitude is not in [1, kMaxMagnitude].
std::int64_t value_event(const ContributionEvent& event, const WeightConfig& weights);

ContributorState apply_event(ContributorState state, const ContributionEvent& event,
                             const WeightConfig& weights, const TierConfig& tiers);

// Cumulative, never-decreasing contribution points for every contributor that
// has at least one event.
class LedgerSnapshot {
 public:
  explicit LedgerSnapshot(LedgerConfig config = {}) : config_(std::move(config)) {}

  void apply(const ContributionEvent& event);
  void apply_all(std::span<const ContributionEvent> events);

  const std::map<std::string, ContributorState>& contributors() const { return contributors_; }
  const ContributorState* find(const std::string& contributor_id) const;
  std::int64_t event_count() const { return event_count_; }
  std::int64_t total_points() const { return total_points_; }
  const LedgerConfig& config() const { return config_; }

  // Canonical, sorted, line-oriented text. Equal ledgers serialize to equal
  // bytes.
  std::string serialize() const;

 private:
  LedgerConfig config_;
  std::map<std::string, ContributorState> contributors_;
  std::int64_t event_count_ = 0;
  std::int64_t total_points_ = 0;
};

// One contributor's standing as seen by the leaderboard. Contributors without
// events have no first_event_at and sort after every contributor with one at
// equal points.
struct Standing {
  std::string contributor_id;
  std::int64_t total_points = 0;
  std::optional<Timestamp> first_event_at;
};

// Strict total order: points desc, first event asc (none last), id asc.
bool ranks_before(const Standing& a, const Standing& b);

struct LeaderboardEntry {
  std::int64_t rank = 0;
  std::string contributor_id;
  std::int64_t total_points = 0;
  // percentile = numerator / denominator = 1 - (rank - 1) / N
  std::int64_t percentile_numerator = 0;
  std::int64_t percentile_denominator = 1;

  double percentile() const {
    return static_cast<double>(percentile_numerator) / static_cast<double>(percentile_denominator);
  }
};

std::vector<LeaderboardEntry> rebuild_leaderboard(std::vector<Standing> population);

// Everyone in the snapshot, plus (when given) every registered contributor
// without events at zero points.
std::vector<Standing> standings(const LedgerSnapshot& snapshot, const Registry* registry = nullptr);

}  // namespace innermerit
