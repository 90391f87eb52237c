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

#include <cstddef>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "innermerit/engine.hpp"

namespace innermerit {

// Turns an `as_of` argument (`YYYY-MM-DD` or an RFC-3339 instant) into the
// exclusive upper bound of the snapshot. A date means the end of that UTC day.
// Absent means `now`. Throws InvalidArgument, or NoSnapshot for a moment that
// has not happened yet.
Timestamp resolve_as_of(const std::optional<std::string>& text, Timestamp now);

// Read models. Each is a pure function of the state and `as_of`; awards count
// only when their cycle was finalized before `as_of`.
nlohmann::json wall_of_honor(const EngineState& state, Timestamp as_of);
// Throws NotFound.
nlohmann::json contributor_profile(const EngineState& state, const std::string& contributor_id,
                                   Timestamp as_of);
nlohmann::json leaderboard(const EngineState& state, Timestamp as_of,
                           std::optional<std::size_t> top = std::nullopt);
nlohmann::json maturity_ranking(const EngineState& state, Period month);
nlohmann::json cycle_index(const EngineState& state);
nlohmann::json cycle_detail(const EngineState& state, const CycleKey& key);
nlohmann::json budget_report(const EngineState& state, int year);

// Canonical export bytes: two-space indented, sorted keys, trailing newline.
std::string export_text(const nlohmann::json& payload);

}  // namespace innermerit
