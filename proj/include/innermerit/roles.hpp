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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "innermerit/ledger.hpp"
#include "innermerit/time.hpp"

namespace innermerit {

class Registry;

// Per-project role ladder. Promotion moves exactly one step and needs PMC
// approval.
enum class Role { Contributor = 0, Committer = 1, Maintainer = 2, PMCMember = 3 };
enum class RoleChangeOutcome { Pending, Approved, Rejected };

std::string_view to_string(Role role);
std::string_view to_string(RoleChangeOutcome outcome);
Role parse_role(std::string_view text);

struct RoleProposal {
  std::string id;
  std::string contributor_id;
  std::string project_id;
  Role from = Role::Contributor;
  Role to = Role::Committer;
  std::string proposer_id;
  Timestamp proposed_at;
  // voter -> approve, in voter-id order
  std::map<std::string, bool> votes;
  RoleChangeOutcome outcome = RoleChangeOutcome::Pending;
  Timestamp decided_at;
};

nlohmann::json to_json(const RoleProposal& proposal);

class RoleBook {
 public:
  explicit RoleBook(RoleQuorum quorum = {}) : quorum_(quorum) {}

  // Effective role at `t`. PMC committee membership always reads as
  // PMCMember; anyone outside the PMC is capped at Maintainer.
  Role role_at(const Registry& registry, const std::string& contributor_id,
               const std::string& project_id, Timestamp t) const;

  // Effective roles on every project where the contributor is above
  // Contributor.
  std::map<std::string, Role> roles_of(const Registry& registry,
                                       const std::string& contributor_id, Timestamp t) const;

  // Throws IllegalLadderStep, NotAuthorized, ProposalPending, NotFound.
  std::string propose(const Registry& registry, const std::string& contributor_id,
                      const std::string& project_id, Role new_role,
                      const std::string& proposer_id, Timestamp at);

  // One vote per current PMC member. Approval needs a strict majority (per the
  // configured quorum) of the PMC as it stands at `at`; the role change (and,
  // for PMCMember, the PMC membership) takes effect with the deciding vote.
  // Throws NotFound, ProposalClosed, NotAuthorized, DuplicateVote.
  RoleChangeOutcome vote(Registry& registry, const std::string& proposal_id,
                         const std::string& voter_id, bool approve, Timestamp at);

  const std::map<std::string, RoleProposal>& proposals() const { return proposals_; }
  const RoleProposal& proposal(const std::string& id) const;

 private:
  using Key = std::pair<std::string, std::string>;  // contributor, project
  struct Grant {
    Role role;
    Timestamp at;
  };

  Role granted_at(const Key& key, Timestamp t) const;

  RoleQuorum quorum_;
  std::map<std::string, RoleProposal> proposals_;
  std::map<Key, std::vector<Grant>> grants_;
  std::map<Key, std::string> open_proposal_;
  std::int64_t next_id_ = 1;
};

}  // namespace innermerit
