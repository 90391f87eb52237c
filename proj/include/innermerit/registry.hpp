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

#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "innermerit/time.hpp"

namespace innermerit {

enum class EntityKind { Contributor, Department, Project, Committee };
enum class ProjectPhase { Preparation = 0, Incubation = 1, Graduation = 2 };
enum class CommitteeKind { Foundation, TC, TCC, PMC };

std::string_view to_string(EntityKind kind);
std::string_view to_string(ProjectPhase phase);
std::string_view to_string(CommitteeKind kind);
EntityKind parse_entity_kind(std::string_view text);
ProjectPhase parse_phase(std::string_view text);
CommitteeKind parse_committee_kind(std::string_view text);

struct Contributor {
  std::string id;
  std::string display_name;
  std::string department_id;
  Timestamp joined_at;
  std::string intro;
  std::vector<std::string> interests;
};

struct Department {
  std::string id;
  std::string name;
  std::string region;
  std::string product_line;
};

struct PhaseTransition {
  ProjectPhase phase;
  Timestamp at;
};

struct Project {
  std::string id;
  std::string name;
  std::string owning_department_id;
  ProjectPhase phase = ProjectPhase::Preparation;
  // Initial PMC. When non-empty at registration the registry creates the
  // project's PMC committee (`pmc/<project id>`) with these members.
  std::vector<std::string> pmc_member_ids;
  Timestamp created_at;
  // Filled in by the registry; the first entry is the registration phase.
  std::vector<PhaseTransition> history;
};

struct MembershipChange {
  std::string member_id;
  bool added = true;
  Timestamp at;
};

struct Committee {
  std::string id;
  CommitteeKind kind = CommitteeKind::PMC;
  // Empty for Foundation/TC, a product line for TCC, a project id for PMC.
  std::string scope;
  std::vector<std::string> member_ids;
  Timestamp formed_at;
  // Filled in by the registry.
  std::vector<MembershipChange> changes;

  std::set<std::string> members_at(Timestamp t) const;
};

using Entity = std::variant<Contributor, Department, Project, Committee>;

// Authoritative store of who and what exists. Single writer; all mutators
// either succeed completely or throw without changing anything.
class Registry {
 public:
  std::string register_entity(const Entity& entity, Timestamp at);
  const Project& advance_project_phase(const std::string& project_id,
                                       ProjectPhase new_phase, Timestamp at);
  void change_membership(const std::string& committee_id,
                         const std::string& member_id, bool add, Timestamp at);

  Entity lookup(EntityKind kind, const std::string& id) const;

  const Contributor& contributor(const std::string& id) const;
  const Department& department(const std::string& id) const;
  const Project& project(const std::string& id) const;
  const Committee& committee(const std::string& id) const;

  bool has_contributor(const std::string& id) const { return contributors_.count(id) != 0; }
  bool has_department(const std::string& id) const { return departments_.count(id) != 0; }
  bool has_project(const std::string& id) const { return projects_.count(id) != 0; }
  bool has_committee(const std::string& id) const { return committees_.count(id) != 0; }

  const std::map<std::string, Contributor>& contributors() const { return contributors_; }
  const std::map<std::string, Department>& departments() const { return departments_; }
  const std::map<std::string, Project>& projects() const { return projects_; }
  const std::map<std::string, Committee>& committees() const { return committees_; }

  // Phase of a project at an instant, or nullopt before it existed.
  std::optional<ProjectPhase> phase_at(const std::string& project_id, Timestamp t) const;

  const Committee* pmc_of(const std::string& project_id) const;
  std::set<std::string> pmc_members(const std::string& project_id, Timestamp t) const;
  bool is_pmc_member(const std::string& project_id, const std::string& contributor_id,
                     Timestamp t) const;
  std::set<std::string> committee_members(CommitteeKind kind, Timestamp t) const;

  // Case-folded region key of a contributor's department.
  std::string region_of_contributor(const std::string& contributor_id) const;
  std::string region_of_project(const std::string& project_id) const;
  // Case-folded region keys, each mapped to the first spelling registered.
  std::map<std::string, std::string> regions() const;

  // Full scan for referential-integrity, phase-monotonicity and committee
  // cardinality violations. Empty when the registry is consistent.
  std::vector<std::string> integrity_violations() const;

  // One entry per successful registration or change, in order.
  const std::vector<std::string>& history() const { return history_; }

 private:
  void check_contributors_exist(const std::vector<std::string>& ids) const;
  bool product_line_exists(const std::string& product_line) const;

  std::map<std::string, Contributor> contributors_;
  std::map<std::string, Department> departments_;
  std::map<std::string, Project> projects_;
  std::map<std::string, Committee> committees_;
  std::map<std::string, std::string> pmc_by_project_;
  std::vector<std::string> history_;
};

// Registry bootstrap records: one JSON object per line with a `kind` field of
// Department, Contributor, Project, Committee, PhaseAdvance or Membership.
nlohmann::json to_json(const Entity& entity);
Entity entity_from_json(const nlohmann::json& record);

// Applies one bootstrap record to the registry.
void apply_registry_record(Registry& registry, const nlohmann::json& record);

}  // namespace innermerit
