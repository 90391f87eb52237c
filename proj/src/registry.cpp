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

#include "innermerit/registry.hpp"

#include <algorithm>

#include "innermerit/error.hpp"
#include "innermerit/json_fields.hpp"
#include "innermerit/util.hpp"

namespace innermerit {

std::string_view to_string(EntityKind kind) {
  switch (kind) {
    case EntityKind::Contributor: return "Contributor";
    case EntityKind::Department: return "Department";
    case EntityKind::Project: return "Project";
    case EntityKind::Committee: return "Committee";
  }
  return "?";
}

std::string_view to_string(ProjectPhase phase) {
  switch (phase) {
    case ProjectPhase::Preparation: return "Preparation";
    case ProjectPhase::Incubation: return "Incubation";
    case ProjectPhase::Graduation: return "Graduation";
  }
  return "?";
}

std::string_view to_string(CommitteeKind kind) {
  switch (kind) {
    case CommitteeKind::Foundation: return "Foundation";
    case CommitteeKind::TC: return "TC";
    case CommitteeKind::TCC: return "TCC";
    case CommitteeKind::PMC: return "PMC";
  }
  return "?";
}

EntityKind parse_entity_kind(std::string_view text) {
  for (auto k : {EntityKind::Contributor, EntityKind::Department, EntityKind::Project,
                 EntityKind::Committee}) {
    if (fold_case(to_string(k)) == fold_case(text)) return k;
  }
  fail(ErrorCode::InvalidArgument, "unknown entity kind '" + std::string(text) + "'");
}

ProjectPhase parse_phase(std::string_view text) {
  for (auto p : {ProjectPhase::Preparation, ProjectPhase::Incubation, ProjectPhase::Graduation}) {
    if (fold_case(to_string(p)) == fold_case(text)) return p;
  }
  fail(ErrorCode::InvalidArgument, "unknown project phase '" + std::string(text) + "'");
}

CommitteeKind parse_committee_kind(std::string_view text) {
  for (auto k : {CommitteeKind::Foundation, CommitteeKind::TC, CommitteeKind::TCC,
                 CommitteeKind::PMC}) {
    if (fold_case(to_string(k)) == fold_case(text)) return k;
  }
  fail(ErrorCode::InvalidArgument, "unknown committee kind '" + std::string(text) + "'");
}

std::set<std::string> Committee::members_at(Timestamp t) const {
  std::set<std::string> members;
  for (const auto& change : changes) {
    if (change.at > t) break;
    if (change.added) {
      members.insert(change.member_id);
    } else {
      members.erase(change.member_id);
    }
  }
  return members;
}

void Registry::check_contributors_exist(const std::vector<std::string>& ids) const {
  for (const auto& id : ids) {
    if (!has_contributor(id)) {
      fail(ErrorCode::DanglingReference, "unknown contributor '" + id + "'");
    }
  }
}

bool Registry::product_line_exists(const std::string& product_line) const {
  return std::any_of(departments_.begin(), departments_.end(),
                     [&](const auto& kv) { return kv.second.product_line == product_line; });
}

std::string Registry::register_entity(const Entity& entity, Timestamp at) {
  struct Visitor {
    Registry& self;
    Timestamp at;

    std::string operator()(const Department& d) const {
      if (d.id.empty()) fail(ErrorCode::InvalidArgument, "department id is empty");
      if (self.has_department(d.id)) fail(ErrorCode::DuplicateId, "department '" + d.id + "'");
      if (trim(d.region).empty()) {
        fail(ErrorCode::InvalidArgument, "department '" + d.id + "' has an empty region");
      }
      self.departments_.emplace(d.id, d);
      return d.id;
    }

    std::string operator()(const Contributor& c) const {
      if (c.id.empty()) fail(ErrorCode::InvalidArgument, "contributor id is empty");
      if (self.has_contributor(c.id)) fail(ErrorCode::DuplicateId, "contributor '" + c.id + "'");
      if (!self.has_department(c.department_id)) {
        fail(ErrorCode::DanglingReference, "unknown department '" + c.department_id + "'");
      }
      self.contributors_.emplace(c.id, c);
      return c.id;
    }

    std::string operator()(const Project& p) const {
      if (p.id.empty()) fail(ErrorCode::InvalidArgument, "project id is empty");
      if (self.has_project(p.id)) fail(ErrorCode::DuplicateId, "project '" + p.id + "'");
      if (!self.has_department(p.owning_department_id)) {
        fail(ErrorCode::DanglingReference, "unknown department '" + p.owning_department_id + "'");
      }
      self.check_contributors_exist(p.pmc_member_ids);
      if (p.phase != ProjectPhase::Preparation && p.pmc_member_ids.empty()) {
        fail(ErrorCode::InvalidArgument,
             "project '" + p.id + "' in phase " + std::string(to_string(p.phase)) +
                 " needs at least one PMC member");
      }
      std::string pmc_id = "pmc/" + p.id;
      if (!p.pmc_member_ids.empty() && self.has_committee(pmc_id)) {
        fail(ErrorCode::DuplicateId, "committee '" + pmc_id + "'");
      }
      Project stored = p;
      stored.history = {{p.phase, p.created_at}};
      self.projects_.emplace(p.id, stored);
      if (!p.pmc_member_ids.empty()) {
        Committee pmc;
        pmc.id = pmc_id;
        pmc.kind = CommitteeKind::PMC;
        pmc.scope = p.id;
        pmc.member_ids = p.pmc_member_ids;
        pmc.formed_at = p.created_at;
        (*this)(pmc);
      }
      return p.id;
    }

    std::string operator()(const Committee& c) const {
      if (c.id.empty()) fail(ErrorCode::InvalidArgument, "committee id is empty");
      if (self.has_committee(c.id)) fail(ErrorCode::DuplicateId, "committee '" + c.id + "'");
      self.check_contributors_exist(c.member_ids);
      switch (c.kind) {
        case CommitteeKind::Foundation:
        case CommitteeKind::TC:
          if (!c.scope.empty()) {
            fail(ErrorCode::InvalidArgument, "Foundation and TC committees are org-wide");
          }
          for (const auto& [id, other] : self.committees_) {
            if (other.kind == c.kind) {
              fail(ErrorCode::DuplicateId, "a " + std::string(to_string(c.kind)) +
                                               " committee already exists ('" + id + "')");
            }
          }
          break;
        case CommitteeKind::TCC:
          if (!self.product_line_exists(c.scope)) {
            fail(ErrorCode::DanglingReference, "unknown product line '" + c.scope + "'");
          }
          for (const auto& [id, other] : self.committees_) {
            if (other.kind == CommitteeKind::TCC && other.scope == c.scope) {
              fail(ErrorCode::DuplicateId, "product line '" + c.scope + "' already has TCC '" + id + "'");
            }
          }
          break;
        case CommitteeKind::PMC:
          if (!self.has_project(c.scope)) {
            fail(ErrorCode::DanglingReference, "unknown project '" + c.scope + "'");
          }
          if (self.pmc_by_project_.count(c.scope) != 0) {
            fail(ErrorCode::DuplicateId, "project '" + c.scope + "' already has a PMC");
          }
          break;
      }
      Committee stored = c;
      stored.changes.clear();
      std::set<std::string> seen;
      for (const auto& m : c.member_ids) {
        if (seen.insert(m).second) stored.changes.push_back({m, true, c.formed_at});
      }
      stored.member_ids.assign(seen.begin(), seen.end());
      if (c.kind == CommitteeKind::PMC) self.pmc_by_project_[c.scope] = c.id;
      self.committees_.emplace(c.id, std::move(stored));
      return c.id;
    }
  };

  std::string id = std::visit(Visitor{*this, at}, entity);
  const char* kind = std::visit(
      [](const auto& e) -> const char* {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, Contributor>) return "Contributor";
        else if constexpr (std::is_same_v<T, Department>) return "Department";
        else if constexpr (std::is_same_v<T, Project>) return "Project";
        else return "Committee";
      },
      entity);
  history_.push_back(at.to_string() + " register " + kind + " " + id);
  return id;
}

const Project& Registry::advance_project_phase(const std::string& project_id,
                                               ProjectPhase new_phase, Timestamp at) {
  auto it = projects_.find(project_id);
  if (it == projects_.end()) fail(ErrorCode::NotFound, "project '" + project_id + "'");
  Project& p = it->second;
  if (static_cast<int>(new_phase) != static_cast<int>(p.phase) + 1) {
    fail(ErrorCode::IllegalPhaseTransition,
         std::string(to_string(p.phase)) + " -> " + std::string(to_string(new_phase)));
  }
  if (at < p.history.back().at) {
    fail(ErrorCode::InvalidArgument, "phase transition predates the previous one");
  }
  if (pmc_members(project_id, at).empty()) {
    fail(ErrorCode::IllegalPhaseTransition,
         "project '" + project_id + "' needs a PMC with at least one member before " +
             std::string(to_string(new_phase)));
  }
  p.phase = new_phase;
  p.history.push_back({new_phase, at});
  history_.push_back(at.to_string() + " phase " + project_id + " " + std::string(to_string(new_phase)));
  return p;
}

void Registry::change_membership(const std::string& committee_id, const std::string& member_id,
                                 bool add, Timestamp at) {
  auto it = committees_.find(committee_id);
  if (it == committees_.end()) fail(ErrorCode::NotFound, "committee '" + committee_id + "'");
  Committee& c = it->second;
  if (!has_contributor(member_id)) {
    fail(ErrorCode::DanglingReference, "unknown contributor '" + member_id + "'");
  }
  if (!c.changes.empty() && at < c.changes.back().at) {
    fail(ErrorCode::InvalidArgument, "membership change predates the committee's last change");
  }
  if (at < c.formed_at) fail(ErrorCode::InvalidArgument, "membership change predates the committee");
  auto current = c.members_at(Timestamp::max());
  if (add == (current.count(member_id) != 0)) {
    fail(ErrorCode::InvalidArgument, "'" + member_id + (add ? "' is already" : "' is not") +
                                         " a member of '" + committee_id + "'");
  }
  if (!add && c.kind == CommitteeKind::PMC && current.size() == 1 &&
      project(c.scope).phase != ProjectPhase::Preparation) {
    fail(ErrorCode::InvalidArgument, "cannot remove the last PMC member of an incubating project");
  }
  c.changes.push_back({member_id, add, at});
  auto now = c.members_at(Timestamp::max());
  c.member_ids.assign(now.begin(), now.end());
  history_.push_back(at.to_string() + (add ? " join " : " leave ") + committee_id + " " + member_id);
}

Entity Registry::lookup(EntityKind kind, const std::string& id) const {
  switch (kind) {
    case EntityKind::Contributor: return contributor(id);
    case EntityKind::Department: return department(id);
    case EntityKind::Project: return project(id);
    case EntityKind::Committee: return committee(id);
  }
  fail(ErrorCode::NotFound, id);
}

const Contributor& Registry::contributor(const std::string& id) const {
  auto it = contributors_.find(id);
  if (it == contributors_.end()) fail(ErrorCode::NotFound, "contributor '" + id + "'");
  return it->second;
}

const Department& Registry::department(const std::string& id) const {
  auto it = departments_.find(id);
  if (it == departments_.end()) fail(ErrorCode::NotFound, "department '" + id + "'");
  return it->second;
}

const Project& Registry::project(const std::string& id) const {
  auto it = projects_.find(id);
  if (it == projects_.end()) fail(ErrorCode::NotFound, "project '" + id + "'");
  return it->second;
}

const Committee& Registry::committee(const std::string& id) const {
  auto it = committees_.find(id);
  if (it == committees_.end()) fail(ErrorCode::NotFound, "committee '" + id + "'");
  return it->second;
}

std::optional<ProjectPhase> Registry::phase_at(const std::string& project_id, Timestamp t) const {
  const Project& p = project(project_id);
  std::optional<ProjectPhase> phase;
  for (const auto& step : p.history) {
    if (step.at > t) break;
    phase = step.phase;
  }
  return phase;
}

const Committee* Registry::pmc_of(const std::string& project_id) const {
  auto it = pmc_by_project_.find(project_id);
  if (it == pmc_by_project_.end()) return nullptr;
  return &committees_.at(it->second);
}

std::set<std::string> Registry::pmc_members(const std::string& project_id, Timestamp t) const {
  const Committee* pmc = pmc_of(project_id);
  if (pmc == nullptr) return {};
  return pmc->members_at(t);
}

bool Registry::is_pmc_member(const std::string& project_id, const std::string& contributor_id,
                             Timestamp t) const {
  return pmc_members(project_id, t).count(contributor_id) != 0;
}

std::set<std::string> Registry::committee_members(CommitteeKind kind, Timestamp t) const {
  std::set<std::string> out;
  for (const auto& [id, c] : committees_) {
    if (c.kind != kind) continue;
    auto members = c.members_at(t);
    out.insert(members.begin(), members.end());
  }
  return out;
}

std::string Registry::region_of_contributor(const std::string& contributor_id) const {
  return fold_case(trim(department(contributor(contributor_id).department_id).region));
}

std::string Registry::region_of_project(const std::string& project_id) const {
  return fold_case(trim(department(project(project_id).owning_department_id).region));
}

std::map<std::string, std::string> Registry::regions() const {
  std::map<std::string, std::string> out;
  for (const auto& [id, d] : departments_) {
    out.emplace(fold_case(trim(d.region)), trim(d.region));
  }
  return out;
}

std::vector<std::string> Registry::integrity_violations() const {
  std::vector<std::string> out;
  for (const auto& [id, c] : contributors_) {
    if (!has_department(c.department_id)) out.push_back("contributor " + id + ": dangling department");
  }
  for (const auto& [id, p] : projects_) {
    if (!has_department(p.owning_department_id)) out.push_back("project " + id + ": dangling department");
    for (std::size_t i = 0; i < p.history.size(); ++i) {
      if (static_cast<int>(p.history[i].phase) != static_cast<int>(p.history.front().phase) + static_cast<int>(i)) {
        out.push_back("project " + id + ": phase history not monotone");
      }
    }
    if (p.phase != ProjectPhase::Preparation && pmc_members(id, Timestamp::max()).empty()) {
      out.push_back("project " + id + ": no PMC members past Preparation");
    }
  }
  int foundations = 0, tcs = 0;
  std::map<std::string, int> pmcs;
  for (const auto& [id, c] : committees_) {
    for (const auto& change : c.changes) {
      if (!has_contributor(change.member_id)) out.push_back("committee " + id + ": dangling member");
    }
    switch (c.kind) {
      case CommitteeKind::Foundation: ++foundations; break;
      case CommitteeKind::TC: ++tcs; break;
      case CommitteeKind::TCC:
        if (!product_line_exists(c.scope)) out.push_back("committee " + id + ": unknown product line");
        break;
      case CommitteeKind::PMC:
        if (!has_project(c.scope)) out.push_back("committee " + id + ": dangling project");
        ++pmcs[c.scope];
        break;
    }
  }
  if (foundations != 1) out.push_back("expected exactly one Foundation, found " + std::to_string(foundations));
  if (tcs != 1) out.push_back("expected exactly one TC, found " + std::to_string(tcs));
  for (const auto& [project_id, n] : pmcs) {
    if (n > 1) out.push_back("project " + project_id + ": more than one PMC");
  }
  return out;
}

nlohmann::json to_json(const Entity& entity) {
  return std::visit(
      [](const auto& e) -> nlohmann::json {
        using T = std::decay_t<decltype(e)>;
        nlohmann::json j;
        if constexpr (std::is_same_v<T, Department>) {
          j = {{"kind", "Department"}, {"id", e.id}, {"name", e.name},
               {"region", e.region}, {"product_line", e.product_line}};
        } else if constexpr (std::is_same_v<T, Contributor>) {
          j = {{"kind", "Contributor"}, {"id", e.id}, {"display_name", e.display_name},
               {"department_id", e.department_id}, {"joined_at", e.joined_at.to_string()},
               {"intro", e.intro}, {"interests", e.interests}};
        } else if constexpr (std::is_same_v<T, Project>) {
          nlohmann::json history = nlohmann::json::array();
          for (const auto& step : e.history) {
            history.push_back({{"phase", to_string(step.phase)}, {"at", step.at.to_string()}});
          }
          j = {{"kind", "Project"}, {"id", e.id}, {"name", e.name},
               {"owning_department_id", e.owning_department_id},
               {"phase", to_string(e.phase)}, {"pmc_member_ids", e.pmc_member_ids},
               {"created_at", e.created_at.to_string()}, {"history", history}};
        } else {
          j = {{"kind", "Committee"}, {"id", e.id}, {"committee_kind", to_string(e.kind)},
               {"scope", e.scope}, {"member_ids", e.member_ids},
               {"formed_at", e.formed_at.to_string()}};
        }
        return j;
      },
      entity);
}

Entity entity_from_json(const nlohmann::json& record) {
  using namespace fields;
  EntityKind kind = parse_entity_kind(str(record, "kind"));
  switch (kind) {
    case EntityKind::Department:
      return Department{str(record, "id"), str_or(record, "name", ""), str(record, "region"),
                        str_or(record, "product_line", "")};
    case EntityKind::Contributor:
      return Contributor{str(record, "id"), str_or(record, "display_name", ""),
                         str(record, "department_id"),
                         timestamp_or(record, "joined_at", Timestamp()),
                         str_or(record, "intro", ""), strings_or_empty(record, "interests")};
    case EntityKind::Project: {
      Project p;
      p.id = str(record, "id");
      p.name = str_or(record, "name", "");
      p.owning_department_id = str(record, "owning_department_id");
      p.phase = parse_phase(str_or(record, "phase", "Preparation"));
      p.pmc_member_ids = strings_or_empty(record, "pmc_member_ids");
      p.created_at = timestamp_or(record, "created_at", Timestamp());
      return p;
    }
    case EntityKind::Committee: {
      Committee c;
      c.id = str(record, "id");
      c.kind = parse_committee_kind(str(record, "committee_kind"));
      c.scope = str_or(record, "scope", "");
      c.member_ids = strings_or_empty(record, "member_ids");
      c.formed_at = timestamp_or(record, "formed_at", Timestamp());
      return c;
    }
  }
  fail(ErrorCode::InvalidArgument, "unreachable entity kind");
}

void apply_registry_record(Registry& registry, const nlohmann::json& record) {
  using namespace fields;
  std::string kind = str(record, "kind");
  if (kind == "PhaseAdvance") {
    registry.advance_project_phase(str(record, "project_id"), parse_phase(str(record, "phase")),
                                   timestamp(record, "at"));
  } else if (kind == "Membership") {
    std::string action = str(record, "action");
    if (action != "add" && action != "remove") {
      fail(ErrorCode::InvalidArgument, "membership action must be add or remove");
    }
    registry.change_membership(str(record, "committee_id"), str(record, "member_id"),
                               action == "add", timestamp(record, "at"));
  } else {
    Entity entity = entity_from_json(record);
    Timestamp at = std::visit(
        [](const auto& e) -> Timestamp {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, Contributor>) return e.joined_at;
          else if constexpr (std::is_same_v<T, Project>) return e.created_at;
          else if constexpr (std::is_same_v<T, Committee>) return e.formed_at;
          else return Timestamp();
        },
        entity);
    registry.register_entity(entity, at);
  }
}

}  // namespace innermerit
