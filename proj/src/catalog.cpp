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

#include "innermerit/catalog.hpp"

#include <limits>
#include <set>

#include "innermerit/error.hpp"

namespace innermerit {

std::string_view to_string(AwardKind kind) {
  switch (kind) {
    case AwardKind::Star: return "Star";
    case AwardKind::Knight: return "Knight";
    case AwardKind::TimelyIncentive: return "TimelyIncentive";
    case AwardKind::GoldBadge: return "GoldBadge";
    case AwardKind::BlackLand: return "BlackLand";
  }
  return "?";
}

std::string_view key_of(AwardKind kind) {
  switch (kind) {
    case AwardKind::Star: return "star";
    case AwardKind::Knight: return "knight";
    case AwardKind::TimelyIncentive: return "timely_incentive";
    case AwardKind::GoldBadge: return "gold_badge";
    case AwardKind::BlackLand: return "black_land";
  }
  return "?";
}

std::string_view to_string(Cadence cadence) {
  return cadence == Cadence::Monthly ? "Monthly" : "Annual";
}

std::string_view to_string(AwardScope scope) {
  switch (scope) {
    case AwardScope::Individual: return "Individual";
    case AwardScope::Project: return "Project";
    case AwardScope::Department: return "Department";
  }
  return "?";
}

AwardKind parse_award_kind(std::string_view text) {
  for (auto kind : kAllAwardKinds) {
    if (to_string(kind) == text || key_of(kind) == text) return kind;
  }
  fail(ErrorCode::InvalidArgument, "unknown award kind '" + std::string(text) + "'");
}

const SlotGroup* AwardCatalogEntry::group(int rank) const {
  for (const auto& g : groups) {
    if (g.rank == rank) return &g;
  }
  return nullptr;
}

std::int64_t AwardCatalogEntry::total_slots() const {
  std::int64_t n = 0;
  for (const auto& g : groups) n += g.slots;
  return n;
}

std::int64_t AwardCatalogEntry::annualized_bp() const {
  std::int64_t per_cycle = 0;
  for (const auto& g : groups) per_cycle += g.slots * g.bp_each;
  return cadence == Cadence::Monthly ? per_cycle * 12 : per_cycle;
}

AwardCatalog AwardCatalog::defaults() {
  AwardCatalog c;
  c.entries_[static_cast<std::size_t>(AwardKind::Star)] = {
      AwardKind::Star, Cadence::Monthly, AwardScope::Individual, {{0, 10, 25}},
      {"Announced in the InnerSource column", "Promoted in internal newsletters",
       "Star displayed on personal profile", "Invitation to live broadcasts and discussions"}};
  c.entries_[static_cast<std::size_t>(AwardKind::Knight)] = {
      AwardKind::Knight, Cadence::Annual, AwardScope::Individual, {{0, 10, 240}},
      {"Best Person Memorial Medal", "Named in the InnerSource annual report",
       "Invitation to closed InnerSource workshops"}};
  c.entries_[static_cast<std::size_t>(AwardKind::TimelyIncentive)] = {
      AwardKind::TimelyIncentive, Cadence::Monthly, AwardScope::Project, {{0, 5, 25}},
      {"Monthly Active Project signpost and logo",
       "Advertised in corporate-level live broadcasts and workshops"}};
  c.entries_[static_cast<std::size_t>(AwardKind::GoldBadge)] = {
      AwardKind::GoldBadge, Cadence::Annual, AwardScope::Project,
      {{1, 1, 500}, {2, 3, 400}, {3, 5, 100}},
      {"Customized Best Project badge",
       "Product line management introduced company-wide",
       "Invitation to corporate-level live broadcasts and workshops"}};
  c.entries_[static_cast<std::size_t>(AwardKind::BlackLand)] = {
      AwardKind::BlackLand, Cadence::Annual, AwardScope::Department, {{0, 3, 300}},
      {"InnerSource Black Land Memorial Cup", "Advertised to related management levels",
       "Invitation to closed workshops"}};
  return c;
}

AwardCatalog AwardCatalog::from_key_values(const KeyValues& kv) {
  AwardCatalog c = defaults();
  std::set<std::string> used;
  for (auto& entry : c.entries_) {
    for (auto& g : entry.groups) {
      std::string prefix = std::string(key_of(entry.kind)) + ".";
      if (g.rank != 0) prefix += "rank" + std::to_string(g.rank) + ".";
      for (auto [field, target] : {std::pair{"slots", &g.slots}, std::pair{"bp", &g.bp_each}}) {
        std::string key = prefix + field;
        auto it = kv.find(key);
        if (it == kv.end()) continue;
        std::int64_t value = parse_int64(it->second, key);
        if (value < 0 || value > 1'000'000) {
          fail(ErrorCode::InvalidConfig, key + " must be in [0, 1000000]");
        }
        *target = value;
        used.insert(key);
      }
    }
  }
  for (const auto& [key, value] : kv) {
    if (used.count(key) == 0) fail(ErrorCode::InvalidConfig, "unknown catalog key '" + key + "'");
  }
  c.validate();
  return c;
}

std::int64_t AwardCatalog::annualized_bp() const {
  std::int64_t total = 0;
  for (const auto& e : entries_) total += e.annualized_bp();
  return total;
}

void AwardCatalog::validate() const {
  std::int64_t total = annualized_bp();
  if (total != kBasisPointsPerWhole) {
    fail(ErrorCode::CatalogNotConserving,
         "annualized awards sum to " + std::to_string(total) + " bp, expected 10000");
  }
}

std::int64_t amount_for(std::int64_t pool, std::int64_t bp) {
  if (pool < 0 || bp < 0) fail(ErrorCode::InvalidArgument, "negative pool or basis points");
  __extension__ using Wide = __int128;
  Wide product = static_cast<Wide>(pool) * bp;
  return static_cast<std::int64_t>(product / kBasisPointsPerWhole);
}

}  // namespace innermerit
