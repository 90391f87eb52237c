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
#include <string>
#include <string_view>
#include <vector>

#include "innermerit/util.hpp"

namespace innermerit {

enum class AwardKind { Star = 0, Knight, TimelyIncentive, GoldBadge, BlackLand };
enum class Cadence { Monthly, Annual };
enum class AwardScope { Individual, Project, Department };

inline constexpr std::array<AwardKind, 5> kAllAwardKinds = {
    AwardKind::Star, AwardKind::Knight, AwardKind::TimelyIncentive, AwardKind::GoldBadge,
    AwardKind::BlackLand};

// Wire names: Star, Knight, TimelyIncentive, GoldBadge, BlackLand.
std::string_view to_string(AwardKind kind);
// snake_case: star, knight, timely_incentive, gold_badge, black_land.
std::string_view key_of(AwardKind kind);
std::string_view to_string(Cadence cadence);
std::string_view to_string(AwardScope scope);
// Accepts either the wire name or the snake_case key.
AwardKind parse_award_kind(std::string_view text);

inline constexpr std::int64_t kBasisPointsPerWhole = 10'000;

// One slot group. Flat awards have a single group with rank 0; Gold Badge has
// ranks 1, 2 and 3.
struct SlotGroup {
  int rank = 0;
  std::int64_t slots = 0;
  std::int64_t bp_each = 0;
};

struct AwardCatalogEntry {
  AwardKind kind = AwardKind::Star;
  Cadence cadence = Cadence::Monthly;
  AwardScope scope = AwardScope::Individual;
  std::vector<SlotGroup> groups;
  std::vector<std::string> nonmonetary;

  bool ranked() const { return groups.size() > 1 || (!groups.empty() && groups[0].rank != 0); }
  const SlotGroup* group(int rank) const;
  std::int64_t total_slots() const;
  // Basis points of the annual budget this award spends per year at full
  // slots: sum(slots * bp) times 12 for monthly awards.
  std::int64_t annualized_bp() const;
};

class AwardCatalog {
 public:
  // Star 10/month at 25 bp, Knight 10/year at 240 bp, Timely Incentive
  // 5/month at 25 bp, Gold Badge 1 at 500 + 3 at 400 + 5 at 100 bp,
  // Black Land 3/year at 300 bp: 10000 bp per year in total.
  static AwardCatalog defaults();

  // Overrides on top of the defaults:
  //   star.slots = 10          star.bp = 25
  //   gold_badge.rank2.slots = 3   gold_badge.rank2.bp = 400
  // Throws InvalidConfig for unknown keys or negative values and
  // CatalogNotConserving unless the annualized total is exactly 10000 bp.
  static AwardCatalog from_key_values(const KeyValues& kv);

  const AwardCatalogEntry& entry(AwardKind kind) const {
    return entries_[static_cast<std::size_t>(kind)];
  }
  const std::array<AwardCatalogEntry, 5>& entries() const { return entries_; }
  std::int64_t annualized_bp() const;
  void validate() const;

 private:
  std::array<AwardCatalogEntry, 5> entries_;
};

// floor(pool * bp / 10000) without intermediate overflow.
std::int64_t amount_for(std::int64_t pool, std::int64_t bp);

}  // namespace innermerit
