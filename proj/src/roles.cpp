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

#include "innermerit/roles.hpp"

#include <algorithm>

#include "innermerit/error.hpp"
#include "innermerit/registry.hpp"
#include "innermerit/util.hpp"

namespace innermerit {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::Contributor: return "Contributor";
    case Role::Committer: return "Committer";
    case Role::Maintainer: return "Maintainer";
    case Role::PMCMember: return "PMCMember";
  }
  return "?";
}

std::string_view to_string(RoleChangeOutcome outcome) {
  switch (outcome) {
    case RoleChangeOutcome::Pending: return "Pending";
    case RoleChangeOutcome::Approved: return "Approved";
    case RoleChangeOutcome::Rejected: return "Rejected";
  }
  return "?";
}

Role parse_role(std::string_view text) {
  for (auto r : {Role::Contributor, Role::Committer, Role::Maintainer, Role::PMCMember}) {
    if (fold_case(to_string(r)) == fold_case(text)) return r;
  }
  fail(ErrorCode::InvalidArgument, "unknown role '" + std::string(text) + "'");
}

nlohmann::json to_json(const RoleProposal& p) {
  nlohmann::json votes = nlohmann::json::object();
  for (const auto& [voter, approve] : p.votes) votes[voter] = approve;
  nlohmann::json j = {
      {"id", p.id},
      {"contributor_id", p.contributor_id},
      {"project_id", p.project_id},
      {"from", to_string(p.from)},
      {"to", to_string(p.to)},
      {"proposer_id", p.proposer_id},
      {"proposed_at", p.proposed_at.to_string()},
      {"votes", votes},
      {"outcome", to_string(p.outcome)},
  };
  if (p.outcome != RoleChangeOutcome::Pending) j["decided_at"] = p.decided_at.to_string();
  return j;
}

Role RoleBook::granted_at(const Key& key, Timestamp t) const {
  auto it = grants_.find(key);
  Role role = Role::Contributor;
  if (it == grants_.end()) return role;
  for (const auto& g : it->second) {
    if (g.at > t) break;
    role = g.role;
  }
  return role;
}

Role RoleBook::role_at(const Registry& registry, const std::string& contributor_id,
                       const std::string& project_id, Timestamp t) const {
  if (registry.is_pmc_member(project_id, contributor_id, t)) return Role::PMCMember;
  return std::min(granted_at({contributor_id, project_id}, t), Role::Maintainer);
}

std::map<std::string, Role> RoleBook::roles_of(const Registry& registry,
                                               const std::string& contributor_id,
                                               Timestamp t) const {
  std::map<std::string, Role> out;
  for (const auto& [project_id, project] : registry.projects()) {
    Role r = role_at(registry, contributor_id, project_id, t);
    if (r != Role::Contributor) out[project_id] = r;
  }
  return out;
}

std::string RoleBook::propose(const Registry& registry, const std::string& contributor_id,
                              const std::string& project_id, Role new_role,
                              const std::string& proposer_id, Timestamp at) {
  registry.contributor(contributor_id);
  registry.project(project_id);
  if (!registry.is_pmc_member(project_id, proposer_id, at)) {
    fail(ErrorCode::NotAuthorized, "'" + proposer_id + "' is not a PMC member of '" + project_id + "'");
  }
  Role current = role_at(registry, contributor_id, project_id, at);
  if (static_cast<int>(new_role) != static_cast<int>(current) + 1) {
    fail(ErrorCode::IllegalLadderStep,
         std::string(to_string(current)) + " -> " + std::string(to_string(new_role)));
  }
  Key key{contributor_id, project_id};
  if (open_proposal_.count(key) != 0) {
    fail(ErrorCode::ProposalPending, "proposal " + open_proposal_.at(key) + " is still open");
  }
  RoleProposal p;
  p.id = "rc-" + std::to_string(next_id_);
  p.contributor_id = contributor_id;
  p.project_id = project_id;
  p.from = current;
  p.to = new_role;
  p.proposer_id = proposer_id;
  p.proposed_at = at;
  ++next_id_;
  open_proposal_[key] = p.id;
  std::string id = p.id;
  proposals_.emplace(id, std::move(p));
  return id;
}

const RoleProposal& RoleBook::proposal(const std::string& id) const {
  auto it = proposals_.find(id);
  if (it == proposals_.end()) fail(ErrorCode::NotFound, "role proposal '" + id + "'");
  return it->second;
}

RoleChangeOutcome RoleBook::vote(Registry& registry, const std::string& proposal_id,
                                 const std::string& voter_id, bool approve, Timestamp at) {
  auto it = proposals_.find(proposal_id);
  if (it == proposals_.end()) fail(ErrorCode::NotFound, "role proposal '" + proposal_id + "'");
  RoleProposal& p = it->second;
  if (p.outcome != RoleChangeOutcome::Pending) {
    fail(ErrorCode::ProposalClosed, proposal_id + " is already " + std::string(to_string(p.outcome)));
  }
  if (at < p.proposed_at) fail(ErrorCode::InvalidArgument, "vote predates the proposal");
  auto members = registry.pmc_members(p.project_id, at);
  if (members.count(voter_id) == 0) {
    fail(ErrorCode::NotAuthorized, "'" + voter_id + "' is not a PMC member of '" + p.project_id + "'");
  }
  if (p.votes.count(voter_id) != 0) fail(ErrorCode::DuplicateVote, voter_id + " on " + proposal_id);
  if (auto g = grants_.find({p.contributor_id, p.project_id});
      g != grants_.end() && at < g->second.back().at) {
    fail(ErrorCode::InvalidArgument, "vote predates the contributor's last role change");
  }

  std::int64_t approvals = approve ? 1 : 0;
  std::int64_t rejections = approve ? 0 : 1;
  for (const auto& [voter, yes] : p.votes) {
    if (members.count(voter) == 0) continue;  // left the PMC since voting
    (yes ? approvals : rejections) += 1;
  }
  const auto n = static_cast<std::int64_t>(members.size());
  RoleChangeOutcome outcome = RoleChangeOutcome::Pending;
  if (quorum_.approves(approvals, n)) {
    outcome = RoleChangeOutcome::Approved;
  } else if (!quorum_.approves(n - rejections, n)) {
    outcome = RoleChangeOutcome::Rejected;
  }

  if (outcome == RoleChangeOutcome::Approved && p.to == Role::PMCMember) {
    const Committee* pmc = registry.pmc_of(p.project_id);
    if (pmc != nullptr && !registry.is_pmc_member(p.project_id, p.contributor_id, Timestamp::max())) {
      registry.change_membership(pmc->id, p.contributor_id, true, at);
    }
  }
  p.votes[voter_id] = approve;
  if (outcome != RoleChangeOutcome::Pending) {
    p.outcome = outcome;
    p.decided_at = at;
    open_proposal_.erase({p.contributor_id, p.project_id});
    if (outcome == RoleChangeOutcome::Approved) {
      grants_[{p.contributor_id, p.project_id}].push_back({p.to, at});
    }
  }
  return outcome;
}

}  // namespace innermerit
