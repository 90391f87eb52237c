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

#include "innermerit/events.hpp"

namespace innermerit {

std::string_view to_string(ContributionKind kind) {
  switch (kind) {
    case ContributionKind::Code: return "Code";
    case ContributionKind::Review: return "Review";
    case ContributionKind::IssueReport: return "IssueReport";
    case ContributionKind::Documentation: return "Documentation";
    case ContributionKind::Discussion: return "Discussion";
    case ContributionKind::Mentoring: return "Mentoring";
    case ContributionKind::Evangelism: return "Evangelism";
  }
  return "?";
}

std::optional<ContributionKind> parse_contribution_kind(std::string_view text) {
  for (auto kind : kAllContributionKinds) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

nlohmann::json to_json(const ContributionEvent& event) {
  return {
      {"event_id", event.event_id},
      {"contributor_id", event.contributor_id},
      {"project_id", event.project_id},
      {"kind", to_string(event.kind)},
      {"occurred_at", event.occurred_at.to_string()},
      {"magnitude", event.magnitude},
      {"source", event.source},
  };
}

}  // namespace innermerit
