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

#include "innermerit/maturity.hpp"

#include <algorithm>

#include "innermerit/error.hpp"
#include "innermerit/registry.hpp"

namespace innermerit {

std::string_view to_string(MaturityDimension dimension) {
  switch (dimension) {
    case MaturityDimension::Transparency: return "Transparency";
    case MaturityDimension::Collaboration: return "Collaboration";
    case MaturityDimension::Community: return "Community";
    case MaturityDimension::Governance: return "Governance";
  }
  return "?";
}

std::string_view key_of(MaturityDimension dimension) {
  switch (dimension) {
    case MaturityDimension::Transparency: return "transparency";
    case MaturityDimension::Collaboration: return "collaboration";
    case MaturityDimension::Community: return "community";
    case MaturityDimension::Governance: return "governance";
  }
  return "?";
}

int MaturityAssessment::min_level() const {
  return *std::min_element(levels.begin(), levels.end());
}

nlohmann::json to_json(const MaturityAssessment& a) {
  nlohmann::json levels = nlohmann::json::object();
  nlohmann::json evidence = nlohmann::json::object();
  for (auto d : kAllDimensions) {
    levels[std::string(key_of(d))] = a.levels[static_cast<std::size_t>(d)];
    evidence[std::string(key_of(d))] = a.evidence[static_cast<std::size_t>(d)];
  }
  return {{"project_id", a.project_id}, {"period", a.period.to_string()},
          {"levels", levels},           {"evidence", evidence},
          {"composite", a.composite()}, {"assessed_at", a.assessed_at.to_string()}};
}

bool matures_before(const MaturityAssessment& a, const MaturityAssessment& b) {
  if (a.composite() != b.composite()) return a.composite() > b.composite();
  if (a.min_level() != b.min_level()) return a.min_level() > b.min_level();
  return a.project_id < b.project_id;
}

const MaturityAssessment& MaturityBook::assess(const Registry& registry,
                                               const std::string& project_id, Period period,
                                               const std::array<int, 4>& levels,
                                               const std::array<std::string, 4>& evidence,
                                               Timestamp at) {
  registry.project(project_id);
  if (!period.is_month()) fail(ErrorCode::InvalidArgument, "assessments are per calendar month");
  for (auto d : kAllDimensions) {
    int level = levels[static_cast<std::size_t>(d)];
    if (level < 0 || level > kMaxMaturityLevel) {
      fail(ErrorCode::OutOfRangeLevel, std::string(to_string(d)) + " level " +
                                           std::to_string(level) + " outside 0.." +
                                           std::to_string(kMaxMaturityLevel));
    }
  }
  auto phase = registry.phase_at(project_id, at);
  if (!phase || *phase == ProjectPhase::Preparation) {
    fail(ErrorCode::ProjectNotEligible,
         "project '" + project_id + "' is in Preparation at " + at.to_string());
  }
  if (is_frozen(period)) {
    fail(ErrorCode::FrozenPeriod, period.to_string() + " was finalized by its Timely Incentive cycle");
  }
  MaturityAssessment a{project_id, period, levels, evidence, at};
  auto [it, inserted] = assessments_.insert_or_assign({period, project_id}, std::move(a));
  return it->second;
}

std::vector<MaturityAssessment> MaturityBook::rank_projects(Period period) const {
  std::vector<MaturityAssessment> out;
  for (auto it = assessments_.lower_bound({period, std::string()});
       it != assessments_.end() && it->first.first == period; ++it) {
    out.push_back(it->second);
  }
  std::sort(out.begin(), out.end(), matures_before);
  return out;
}

std::optional<MaturityAssessment> MaturityBook::latest_in_year(const std::string& project_id,
                                                               int year) const {
  for (int month = 12; month >= 1; --month) {
    auto it = assessments_.find({Period::of_month(year, month), project_id});
    if (it != assessments_.end()) return it->second;
  }
  return std::nullopt;
}

}  // namespace innermerit
