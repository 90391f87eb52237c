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
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>

#include "innermerit/time.hpp"

namespace innermerit {

enum class ContributionKind {
  Code = 0,
  Review,
  IssueReport,
  Documentation,
  Discussion,
  Mentoring,
  Evangelism,
};

inline constexpr std::size_t kContributionKindCount = 7;
inline constexpr std::array<ContributionKind, kContributionKindCount> kAllContributionKinds = {
    ContributionKind::Code,          ContributionKind::Review,     ContributionKind::IssueReport,
    ContributionKind::Documentation, ContributionKind::Discussion, ContributionKind::Mentoring,
    ContributionKind::Evangelism,
};

std::string_view to_string(ContributionKind kind);
// Exact, case-sensitive match on the wire names above.
std::optional<ContributionKind> parse_contribution_kind(std::string_view text);

inline constexpr std::int64_t kMaxMagnitude = 1'000'000'000;

struct ContributionEvent {
  std::string event_id;
  std::string contributor_id;
  std::string project_id;
  ContributionKind kind = ContributionKind::Code;
  Timestamp occurred_at;
  std::int64_t magnitude = 1;
  std::string source;

  friend bool operator==(const ContributionEvent&, const ContributionEvent&) = default;
};

// Canonical log order: occurred_at, then event_id.
inline bool log_order_less(const ContributionEvent& a, const ContributionEvent& b) {
  if (a.occurred_at != b.occurred_at) return a.occurred_at < b.occurred_at;
  return a.event_id < b.event_id;
}

nlohmann::json to_json(const ContributionEvent& event);

}  // namespace innermerit
