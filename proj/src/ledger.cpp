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

#include "innermerit/ledger.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include "innermerit/error.hpp"
#include "innermerit/registry.hpp"

namespace innermerit {

namespace {

constexpr std::int64_t kMaxWeight = 1'000'000;

std::string weight_key(ContributionKind kind) {
  switch (kind) {
    case ContributionKind::Code: return "weight.code";
    case ContributionKind::Review: return "weight.review";
    case ContributionKind::IssueReport: return "weight.issue_report";
    case ContributionKind::Documentation: return "weight.documentation";
    case ContributionKind::Discussion: return "weight.discussion";
    case ContributionKind::Mentoring: return "weight.mentoring";
    case ContributionKind::Evangelism: return "weight.evangelism";
  }
  return "";
}

}  // namespace

WeightConfig WeightConfig::defaults() {
  WeightConfig w;
  auto set = [&w](ContributionKind k, std::int64_t v) {
    w.points_per_unit[static_cast<std::size_t>(k)] = v;
  };
  set(ContributionKind::Code, 10);
  set(ContributionKind::Mentoring, 5);
  set(ContributionKind::Documentation, 4);
  set(ContributionKind::Review, 3);
  set(ContributionKind::IssueReport, 2);
  set(ContributionKind::Evangelism, 2);
  set(ContributionKind::Discussion, 1);
  return w;
}

void WeightConfig::validate() const {
  for (auto kind : kAllContributionKinds) {
    std::int64_t w = weight(kind);
    if (w <= 0 || w > kMaxWeight) {
      fail(ErrorCode::InvalidConfig, "weight for " + std::string(to_string(kind)) +
                                         " must be in [1, " + std::to_string(kMaxWeight) + "]");
    }
    if (w > weight(ContributionKind::Code)) {
      fail(ErrorCode::InvalidConfig,
           "Code must weigh at least as much as " + std::string(to_string(kind)));
    }
  }
}

TierConfig TierConfig::defaults() {
  return TierConfig{{"Bronze", "Silver", "Gold", "Platinum", "Diamond"}, 100, 4};
}

void TierConfig::validate() const {
  if (names.empty()) fail(ErrorCode::InvalidConfig, "tier ladder is empty");
  std::set<std::string> unique(names.begin(), names.end());
  if (unique.size() != names.size() || unique.count("") != 0) {
    fail(ErrorCode::InvalidConfig, "tier names must be non-empty and distinct");
  }
  if (base_threshold <= 0) fail(ErrorCode::InvalidConfig, "tier.base must be positive");
  if (growth_factor < 2) fail(ErrorCode::InvalidConfig, "tier.growth must be at least 2");
  // The top threshold must fit comfortably in 63 bits.
  std::int64_t t = base_threshold;
  for (std::size_t i = 2; i < names.size(); ++i) {
    if (t > std::numeric_limits<std::int64_t>::max() / 4 / growth_factor) {
      fail(ErrorCode::InvalidConfig, "tier thresholds overflow");
    }
    t *= growth_factor;
  }
}

std::int64_t TierConfig::threshold(std::size_t tier) const {
  if (tier == 0) return 0;
  std::int64_t t = base_threshold;
  for (std::size_t i = 1; i < tier; ++i) t *= growth_factor;
  return t;
}

std::size_t TierConfig::tier_index_for(std::int64_t points) const {
  std::size_t tier = 0;
  std::int64_t next = base_threshold;
  while (tier + 1 < names.size() && points >= next) {
    ++tier;
    if (tier + 1 < names.size()) next *= growth_factor;
  }
  return tier;
}

void RoleQuorum::validate() const {
  if (numerator < 0 || denominator <= 0 || numerator >= denominator) {
    fail(ErrorCode::InvalidConfig, "role.quorum must be a fraction in [0, 1)");
  }
}

LedgerConfig LedgerConfig::from_key_values(const KeyValues& kv) {
  LedgerConfig config;
  std::set<std::string> known;
  for (auto kind : kAllContributionKinds) {
    std::string key = weight_key(kind);
    known.insert(key);
    if (auto it = kv.find(key); it != kv.end()) {
      config.weights.points_per_unit[static_cast<std::size_t>(kind)] = parse_int64(it->second, key);
    }
  }
  known.insert({"tier.names", "tier.base", "tier.growth", "role.quorum"});
  if (auto it = kv.find("tier.names"); it != kv.end()) config.tiers.names = split(it->second, ',');
  if (auto it = kv.find("tier.base"); it != kv.end()) {
    config.tiers.base_threshold = parse_int64(it->second, "tier.base");
  }
  if (auto it = kv.find("tier.growth"); it != kv.end()) {
    config.tiers.growth_factor = parse_int64(it->second, "tier.growth");
  }
  if (auto it = kv.find("role.quorum"); it != kv.end()) {
    auto parts = split(it->second, '/');
    if (parts.size() != 2) fail(ErrorCode::InvalidConfig, "role.quorum must look like 1/2");
    config.quorum.numerator = parse_int64(parts[0], "role.quorum");
    config.quorum.denominator = parse_int64(parts[1], "role.quorum");
  }
  for (const auto& [key, value] : kv) {
    if (known.count(key) == 0) {
      fail(ErrorCode::InvalidConfig, "unknown config key '" + key + "'");
    }
  }
  config.validate();
  return config;
}

void LedgerConfig::validate() const {
  weights.validate();
  tiers.validate();
  quorum.validate();
}

std::int64_t value_event(const ContributionEvent& event, const WeightConfig& weights) {
  std::int64_t w = weights.weight(event.kind);
  if (w <= 0) fail(ErrorCode::UnknownKind, std::string(to_string(event.kind)) + " has no weight");
  if (event.magnitude < 1 || event.magnitude > kMaxMagnitude) {
    fail(ErrorCode::InvalidArgument, "magnitude out of range for event '" + event.event_id + "'");
  }
  return w * event.magnitude;
}

ContributorState apply_event(ContributorState state, const ContributionEvent& event,
                             const WeightConfig& weights, const TierConfig& tiers) {
  std::int64_t points = value_event(event, weights);
  auto k = static_cast<std::size_t>(event.kind);
  if (state.contributor_id.empty()) state.contributor_id = event.contributor_id;
  state.total_points += points;
  state.points_by_kind[k] += points;
  state.events_by_kind[k] += 1;
  state.tier = std::max(state.tier, tiers.tier_index_for(state.total_points));
  if (!state.first_event_at || event.occurred_at < *state.first_event_at) {
    state.first_event_at = event.occurred_at;
  }
  return state;
}

void LedgerSnapshot::apply(const ContributionEvent& event) {
  auto it = contributors_.find(event.contributor_id);
  ContributorState before = it == contributors_.end() ? ContributorState{} : it->second;
  ContributorState after = apply_event(std::move(before), event, config_.weights, config_.tiers);
  total_points_ += after.total_points - (it == contributors_.end() ? 0 : it->second.total_points);
  ++event_count_;
  contributors_[event.contributor_id] = std::move(after);
}

void LedgerSnapshot::apply_all(std::span<const ContributionEvent> events) {
  for (const auto& e : events) apply(e);
}

const ContributorState* LedgerSnapshot::find(const std::string& contributor_id) const {
  auto it = contributors_.find(contributor_id);
  return it == contributors_.end() ? nullptr : &it->second;
}

std::string LedgerSnapshot::serialize() const {
  std::ostringstream out;
  out << "innermerit-ledger-snapshot 1\n";
  out << "events " << event_count_ << "\n";
  out << "points " << total_points_ << "\n";
  out << "tiers";
  for (std::size_t i = 0; i < config_.tiers.names.size(); ++i) {
    out << ' ' << config_.tiers.names[i] << ':' << config_.tiers.threshold(i);
  }
  out << "\n";
  for (const auto& [id, s] : contributors_) {
    out << "contributor " << id << " total=" << s.total_points
        << " tier=" << config_.tiers.names[s.tier]
        << " first=" << (s.first_event_at ? s.first_event_at->to_string() : "-");
    for (auto kind : kAllContributionKinds) {
      auto k = static_cast<std::size_t>(kind);
      out << ' ' << to_string(kind) << '=' << s.events_by_kind[k] << '/' << s.points_by_kind[k];
    }
    out << "\n";
  }
  return out.str();
}

bool ranks_before(const Standing& a, const Standing& b) {
  if (a.total_points != b.total_points) return a.total_points > b.total_points;
  if (a.first_event_at != b.first_event_at) {
    if (!a.first_event_at) return false;
    if (!b.first_event_at) return true;
    return *a.first_event_at < *b.first_event_at;
  }
  return a.contributor_id < b.contributor_id;
}

std::vector<LeaderboardEntry> rebuild_leaderboard(std::vector<Standing> population) {
  std::sort(population.begin(), population.end(), ranks_before);
  const auto n = static_cast<std::int64_t>(population.size());
  std::vector<LeaderboardEntry> board;
  board.reserve(population.size());
  for (std::int64_t i = 0; i < n; ++i) {
    auto& s = population[static_cast<std::size_t>(i)];
    board.push_back({i + 1, std::move(s.contributor_id), s.total_points, n - i, n});
  }
  return board;
}

std::vector<Standing> standings(const LedgerSnapshot& snapshot, const Registry* registry) {
  std::vector<Standing> out;
  for (const auto& [id, s] : snapshot.contributors()) {
    out.push_back({id, s.total_points, s.first_event_at});
  }
  if (registry != nullptr) {
    for (const auto& [id, c] : registry->contributors()) {
      if (snapshot.find(id) == nullptr) out.push_back({id, 0, std::nullopt});
    }
  }
  return out;
}

}  // namespace innermerit
