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

#include "innermerit/honor.hpp"

#include <algorithm>
#include <map>

#include "innermerit/error.hpp"

namespace innermerit {

namespace {

std::string profile_link(const std::string& id) { return "/profile/" + id; }

std::string display_name_of(const Registry& registry, AwardScope scope, const std::string& id) {
  switch (scope) {
    case AwardScope::Individual:
      return registry.has_contributor(id) ? registry.contributor(id).display_name : id;
    case AwardScope::Project:
      return registry.has_project(id) ? registry.project(id).name : id;
    case AwardScope::Department: {
      auto regions = registry.regions();
      auto it = regions.find(id);
      return it == regions.end() ? id : it->second;
    }
  }
  return id;
}

nlohmann::json member_card(const Registry& registry, const std::string& id) {
  const Contributor* c = registry.has_contributor(id) ? &registry.contributor(id) : nullptr;
  return {{"id", id},
          {"name", c ? c->display_name : id},
          {"intro", c ? c->intro : ""},
          {"profile", profile_link(id)}};
}

int committee_order(CommitteeKind kind) {
  switch (kind) {
    case CommitteeKind::TC: return 0;
    case CommitteeKind::TCC: return 1;
    case CommitteeKind::PMC: return 2;
    default: return 3;
  }
}

std::vector<const AwardCycle*> finalized_before(const AwardBook& awards, Timestamp as_of) {
  std::vector<const AwardCycle*> out;
  for (const auto& [key, cycle] : awards.cycles()) {
    if (cycle.status == CycleStatus::Finalized && cycle.finalized_at < as_of) out.push_back(&cycle);
  }
  return out;
}

nlohmann::json award_card(const Registry& registry, const AwardCatalog& catalog,
                          const AwardDecision& d) {
  AwardScope scope = catalog.entry(d.kind).scope;
  nlohmann::json j = {{"recipient", d.recipient},
                      {"name", display_name_of(registry, scope, d.recipient)},
                      {"monetary_amount", d.monetary_amount},
                      {"nonmonetary", d.nonmonetary}};
  if (scope == AwardScope::Individual) j["profile"] = profile_link(d.recipient);
  if (d.rank != 0) j["rank"] = d.rank;
  return j;
}

}  // namespace

Timestamp resolve_as_of(const std::optional<std::string>& text, Timestamp now) {
  if (!text || text->empty()) return now;
  if (auto end = end_of_day(*text)) {
    if (end->epoch_seconds() - 86400 > now.epoch_seconds()) fail(ErrorCode::NoSnapshot, "no snapshot for " + *text);
    return std::min(*end, now);
  }
  Timestamp t = Timestamp::parse_or_throw(*text);
  if (t > now) fail(ErrorCode::NoSnapshot, "no snapshot for " + *text);
  return t;
}

nlohmann::json wall_of_honor(const EngineState& state, Timestamp as_of) {
  const Registry& registry = state.registry;

  std::vector<const Committee*> committees;
  for (const auto& [id, c] : registry.committees()) {
    if (committee_order(c.kind) < 3 && c.formed_at < as_of) committees.push_back(&c);
  }
  std::stable_sort(committees.begin(), committees.end(), [](const Committee* a, const Committee* b) {
    return committee_order(a->kind) < committee_order(b->kind);
  });
  nlohmann::json committee_list = nlohmann::json::array();
  for (const Committee* c : committees) {
    nlohmann::json members = nlohmann::json::array();
    for (const auto& id : c->members_at(as_of)) members.push_back(member_card(registry, id));
    committee_list.push_back(
        {{"id", c->id}, {"kind", to_string(c->kind)}, {"scope", c->scope}, {"members", members}});
  }

  LedgerSnapshot snap = state.snapshot(as_of);
  const TierConfig& tiers = snap.config().tiers;
  auto board = rebuild_leaderboard(standings(snap));
  nlohmann::json top_tiers = nlohmann::json::array();
  std::size_t n_tiers = tiers.names.size();
  for (std::size_t t = n_tiers; t-- > 0 && t + 2 >= n_tiers;) {
    nlohmann::json holders = nlohmann::json::array();
    for (const auto& e : board) {
      if (tiers.tier_index_for(e.total_points) != t) continue;
      nlohmann::json card = member_card(registry, e.contributor_id);
      card["points"] = e.total_points;
      card["rank"] = e.rank;
      holders.push_back(std::move(card));
    }
    top_tiers.push_back({{"tier", tiers.names[t]}, {"contributors", holders}});
  }

  nlohmann::json annual = nlohmann::json::object();
  nlohmann::json monthly = nlohmann::json::object();
  const AwardCatalog& catalog = state.awards.catalog();
  for (const AwardCycle* c : finalized_before(state.awards, as_of)) {
    bool yearly = catalog.entry(c->kind).cadence == Cadence::Annual;
    nlohmann::json& group = yearly ? annual : monthly;
    std::string period = c->period.to_string();
    if (!group.contains(period)) {
      group[period] = yearly ? nlohmann::json{{"knight", nlohmann::json::array()},
                                              {"gold_badge", nlohmann::json::array()},
                                              {"black_land", nlohmann::json::array()}}
                             : nlohmann::json{{"timely_incentive", nlohmann::json::array()},
                                              {"star", nlohmann::json::array()}};
    }
    auto& list = group[period][std::string(key_of(c->kind))];
    for (const auto& d : c->decisions) list.push_back(award_card(registry, catalog, d));
  }

  return {{"as_of", as_of.to_string()},
          {"committees", committee_list},
          {"top_tiers", top_tiers},
          {"annual_awards", annual},
          {"monthly_awards", monthly}};
}

nlohmann::json contributor_profile(const EngineState& state, const std::string& contributor_id,
                                   Timestamp as_of) {
  const Registry& registry = state.registry;
  const Contributor& c = registry.contributor(contributor_id);
  LedgerSnapshot snap = state.snapshot(as_of);
  const TierConfig& tiers = snap.config().tiers;
  auto board = rebuild_leaderboard(standings(snap, &registry));

  const ContributorState* cs = snap.find(contributor_id);
  ContributorState empty;
  if (!cs) cs = &empty;
  nlohmann::json by_kind = nlohmann::json::object();
  std::int64_t events = 0;
  for (auto kind : kAllContributionKinds) {
    auto i = static_cast<std::size_t>(kind);
    by_kind[std::string(to_string(kind))] = {{"events", cs->events_by_kind[i]},
                                             {"points", cs->points_by_kind[i]}};
    events += cs->events_by_kind[i];
  }

  nlohmann::json rank = nullptr;
  for (const auto& e : board) {
    if (e.contributor_id != contributor_id) continue;
    rank = {{"rank", e.rank},
            {"population", static_cast<std::int64_t>(board.size())},
            {"percentile", e.percentile()}};
  }

  nlohmann::json roles = nlohmann::json::object();
  for (const auto& [project, role] : state.roles.roles_of(registry, contributor_id, as_of)) {
    roles[project] = to_string(role);
  }

  nlohmann::json awards = nlohmann::json::array();
  for (const AwardCycle* cycle : finalized_before(state.awards, as_of)) {
    if (state.awards.catalog().entry(cycle->kind).scope != AwardScope::Individual) continue;
    for (const auto& d : cycle->decisions) {
      if (d.recipient != contributor_id) continue;
      nlohmann::json j = to_json(d);
      j["finalized_at"] = cycle->finalized_at.to_string();
      awards.push_back(std::move(j));
    }
  }

  nlohmann::json department = nullptr;
  if (registry.has_department(c.department_id)) {
    const Department& d = registry.department(c.department_id);
    department = {{"id", d.id}, {"name", d.name}, {"region", d.region}};
  }

  std::size_t tier = tiers.tier_index_for(cs->total_points);
  return {{"as_of", as_of.to_string()},
          {"id", c.id},
          {"display_name", c.display_name},
          {"intro", c.intro},
          {"interests", c.interests},
          {"joined_at", c.joined_at.to_string()},
          {"department", department},
          {"profile", profile_link(c.id)},
          {"contributions",
           {{"total_points", cs->total_points},
            {"events", events},
            {"first_event_at",
             cs->first_event_at ? nlohmann::json(cs->first_event_at->to_string()) : nlohmann::json()},
            {"by_kind", by_kind}}},
          {"tier", tiers.names[tier]},
          {"tier_index", tier},
          {"standing", rank},
          {"roles", roles},
          {"awards", awards}};
}

nlohmann::json leaderboard(const EngineState& state, Timestamp as_of,
                           std::optional<std::size_t> top) {
  LedgerSnapshot snap = state.snapshot(as_of);
  const TierConfig& tiers = snap.config().tiers;
  auto board = rebuild_leaderboard(standings(snap, &state.registry));
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : board) {
    if (top && entries.size() >= *top) break;
    const std::string& id = e.contributor_id;
    entries.push_back(
        {{"rank", e.rank},
         {"contributor_id", id},
         {"name", state.registry.has_contributor(id) ? state.registry.contributor(id).display_name
                                                     : id},
         {"points", e.total_points},
         {"tier", tiers.tier_for(e.total_points)},
         {"percentile", e.percentile()}});
  }
  return {{"as_of", as_of.to_string()},
          {"population", static_cast<std::int64_t>(board.size())},
          {"total_points", snap.total_points()},
          {"entries", entries}};
}

nlohmann::json maturity_ranking(const EngineState& state, Period month) {
  if (!month.is_month()) fail(ErrorCode::InvalidArgument, "maturity periods are months");
  nlohmann::json ranking = nlohmann::json::array();
  std::int64_t rank = 0;
  for (const auto& a : state.maturity.rank_projects(month)) {
    nlohmann::json j = to_json(a);
    j["rank"] = ++rank;
    ranking.push_back(std::move(j));
  }
  return {{"period", month.to_string()},
          {"frozen", state.maturity.is_frozen(month)},
          {"ranking", ranking}};
}

nlohmann::json cycle_index(const EngineState& state) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& [key, c] : state.awards.cycles()) {
    list.push_back({{"kind", to_string(c.kind)},
                    {"period", c.period.to_string()},
                    {"status", to_string(c.status)},
                    {"candidates", static_cast<std::int64_t>(c.slate.size())},
                    {"recipients", static_cast<std::int64_t>(c.decisions.size())},
                    {"link", "/cycles/" + std::string(to_string(c.kind)) + "/" +
                                 c.period.to_string()}});
  }
  return {{"cycles", list}};
}

nlohmann::json cycle_detail(const EngineState& state, const CycleKey& key) {
  const AwardCycle& c = state.awards.cycle(key);
  nlohmann::json j = to_json(c);
  const AwardCatalogEntry& entry = state.awards.catalog().entry(key.kind);
  nlohmann::json groups = nlohmann::json::array();
  for (const auto& g : entry.groups) {
    groups.push_back({{"rank", g.rank}, {"slots", g.slots}, {"bp_each", g.bp_each}});
  }
  j["slots"] = groups;
  return j;
}

nlohmann::json budget_report(const EngineState& state, int year) {
  return to_json(state.awards.year_report(year));
}

std::string export_text(const nlohmann::json& payload) { return payload.dump(2) + "\n"; }

}  // namespace innermerit
