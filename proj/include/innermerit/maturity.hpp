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
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "innermerit/time.hpp"

namespace innermerit {

class Registry;

enum class MaturityDimension { Transparency = 0, Collaboration, Community, Governance };
inline constexpr std::array<MaturityDimension, 4> kAllDimensions = {
    MaturityDimension::Transparency, MaturityDimension::Collaboration,
    MaturityDimension::Community, MaturityDimension::Governance};
inline constexpr int kMaxMaturityLevel = 3;

std::string_view to_string(MaturityDimension dimension);
// Lower-case key used in JSON payloads: transparency, collaboration, ...
std::string_view key_of(MaturityDimension dimension);

struct MaturityAssessment {
  std::string project_id;
  Period period = Period::of_month(1970, 1);
  std::array<int, 4> levels{};
  std::array<std::string, 4> evidence;
  Timestamp assessed_at;

  int composite() const { return levels[0] + levels[1] + levels[2] + levels[3]; }
  int min_level() const;
};

nlohmann::json to_json(const MaturityAssessment& assessment);

// composite desc, weakest dimension desc, project id asc.
bool matures_before(const MaturityAssessment& a, const MaturityAssessment& b);

class MaturityBook {
 public:
  // Stores (or replaces) the assessment of one project for one month. Throws
  // OutOfRangeLevel, ProjectNotEligible, FrozenPeriod, NotFound.
  const MaturityAssessment& assess(const Registry& registry, const std::string& project_id,
                                   Period period, const std::array<int, 4>& levels,
                                   const std::array<std::string, 4>& evidence, Timestamp at);

  // Called when the period's Timely Incentive cycle finalizes.
  void freeze(Period period) { frozen_.insert(period); }
  bool is_frozen(Period period) const { return frozen_.count(period) != 0; }

  std::vector<MaturityAssessment> rank_projects(Period period) const;
  // Latest assessed month of `year` for the project.
  std::optional<MaturityAssessment> latest_in_year(const std::string& project_id, int year) const;

  const std::map<std::pair<Period, std::string>, MaturityAssessment>& assessments() const {
    return assessments_;
  }

 private:
  std::map<std::pair<Period, std::string>, MaturityAssessment> assessments_;
  std::set<Period> frozen_;
};

}  // namespace innermerit
